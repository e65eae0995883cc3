#pragma once

#include "tvz/admissible.hpp"

namespace tvz {

enum class WallOrigin { Alignment, MaxResolution, Bending };

inline const char* wall_origin_name(WallOrigin o) {
  switch (o) {
    case WallOrigin::Alignment: return "alignment";
    case WallOrigin::MaxResolution: return "max-resolution";
    case WallOrigin::Bending: return "bending";
  }
  return "?";
}

// Thrown when a sign decision is not constant on the current cone; the fan
// builder catches it, splits along the wall and retries on both halves.
struct SplitRequest {
  LinForm wall;
  WallOrigin origin;
};

// A paper-claim violation detected during computation (e.g. a break position
// that leaves the half-integral lattice). Reported, never patched over.
struct DiscrepancyError : std::runtime_error {
  explicit DiscrepancyError(const std::string& what) : std::runtime_error(what) {}
};

class SignOracle {
 public:
  explicit SignOracle(const Cone* cone) : cone_(cone) {}
  Sign sign(const LinForm& h, WallOrigin origin) const {
    Sign s = sign_on(*cone_, h);
    if (s == Sign::Mixed) throw SplitRequest{h, origin};
    return s;
  }
  Sign try_sign(const LinForm& h) const { return sign_on(*cone_, h); }
  const Cone& cone() const { return *cone_; }

 private:
  const Cone* cone_;
};

struct LiftedFunction {
  int index = -1;                  // into the admissible-function list
  std::string support;             // target vertex carrying the divisor D
  bool no_valid_lift = false;      // exception clause had no admissible threshold
  bool nonpositive = false;        // ≤ 0 everywhere on the region
  bool dominated = false;          // pointwise ≤ another lift on the region
  bool exception_applied = false;  // normalization used the special-vertex clause
  bool genus_one_clause = false;   // the (genus one, weight ≤ 1) case fired
  LinForm zero_shift;              // lambda_i = pullback - zero_shift
  std::map<std::string, LinForm> values;  // on the original source vertices

  bool is_trivial() const { return no_valid_lift || nonpositive || dominated; }
};

std::vector<LiftedFunction> lift_all(const TropCover& cover,
                                     const std::vector<AdmissibleFunction>& fns,
                                     const SignOracle& oracle);

// Exact per-region description of lambda = max{0, lambda_1, ..., lambda_s} on
// the subdivided source curve: every piece is linear and spans (at most) one
// level interval.
struct LambdaRegionData {
  Cone region;
  std::vector<LiftedFunction> lifts;

  TropCurve curve;  // subdivided source (break, level and sprout vertices added)
  std::map<std::string, LinForm> value;  // per vertex of `curve`
  std::map<std::string, int> active;     // per vertex; -1 = the zero function
  std::vector<LinForm> levels;           // ascending; levels[0] == 0
  std::map<std::string, int> vertex_level;

  // Pieces of each original edge (and of each sprouted leg edge "<leg>.e"),
  // listed tail -> head. piece ids are edge ids of `curve`.
  std::map<std::string, std::vector<std::string>> pieces_of;
  std::map<std::string, Rat> piece_slope;    // along the original tail -> head direction
  std::map<std::string, int> piece_active;   // -1 = zero
  std::map<std::string, std::pair<LinForm, LinForm>> piece_span;  // positions from original tail

  // Inserted vertices: subdivision points (original edge, position) and
  // sprout tips (marking leg id).
  std::map<std::string, std::pair<std::string, LinForm>> cut_vertex;
  std::map<std::string, std::string> sprout_tip;  // leg id -> vertex id

  std::vector<std::string> notes;

  int level_count() const { return static_cast<int>(levels.size()) - 1; }
  std::string combinatorial_type() const;
};

// Computes lambda on the given region; throws SplitRequest if the region is
// not sign-resolved, DiscrepancyError on half-integrality violations.
LambdaRegionData lambda_max(const TropCover& cover, const std::vector<AdmissibleFunction>& fns,
                            const Cone& region);

// Restriction of the region data to a face of its region (stored lift shifts
// are kept; flags and the envelope are re-derived on the face, which can
// never require further splitting).
LambdaRegionData specialize(const TropCover& cover, const std::vector<AdmissibleFunction>& fns,
                            const LambdaRegionData& data, const Cone& face);

// lambda as a PL function with breaks on the *original* source curve
// (level-subdivision points with no slope change are not reported as breaks).
PLFunction region_function_on_original(const TropCover& cover, const LambdaRegionData& data);

// Idempotence helper: treats the stored lambda as a single linear-per-edge
// candidate on its own subdivided curve and recomputes the envelope; the spec
// requires the result to reproduce `data` (no new breaks, same levels).
LambdaRegionData refeed_lambda(const LambdaRegionData& data);

}  // namespace tvz
