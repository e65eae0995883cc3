#pragma once

#include "tvz/lambda.hpp"

namespace tvz {

struct Wall {
  std::vector<Int> normal;  // primitive, first nonzero entry positive
  WallOrigin origin;        // first origin that produced it
};

struct FanCone {
  Cone cone;
  LambdaRegionData lambda;
  std::string type;  // combinatorial type of lambda on this cone
};

struct Fan {
  int dim = 0;
  Cone support;
  std::vector<FanCone> maximal;
  std::vector<Wall> walls;
};

std::vector<Int> canonical_wall(const LinForm& h);

// The subdivision of the base cone: pre-alignment by all value differences of
// the admissible functions, then recursive refinement by the walls demanded
// by lifting, maximum resolution and the bending locus.
Fan build_alignment_fan(const TropCover& cover, const std::vector<AdmissibleFunction>& fns);

// The coarsening: adjacent maximal cones carrying one combinatorial type are
// merged (union-find), each union is verified to be a convex cone by exact
// volume additivity, and the result must be simplicial. Violations of these
// paper claims throw DiscrepancyError. fiber_tags, when given, must agree
// across each merge class; disagreements are recorded in `reports`.
Fan coarsen(const TropCover& cover, const Fan& sigma,
            const std::vector<std::string>* fiber_tags, std::vector<std::string>* reports);

struct FanChecks {
  bool volume_additive = false;
  bool interiors_disjoint = false;
  bool intersections_are_faces = false;
  Rat total_volume, support_volume;
  std::vector<std::string> problems;
  bool pass() const { return volume_additive && interiors_disjoint && intersections_are_faces; }
};

FanChecks check_fan(const Fan& fan);

struct ConeDiagnostics {
  bool simplicial = false;
  Int index = 0;   // lattice index when simplicial
  bool smooth = false;
  std::vector<LinForm> kummer_lengths;  // derived lengths with half-integral coefficients
  std::vector<int> kummer_coords;       // ray coordinates acquiring 1/2 (index-2 cones)
  bool unexpected_index = false;        // index > 2, or a length outside the ray lattice
};

ConeDiagnostics cone_diagnostics(const FanCone& fc);

struct EquidimReport {
  bool equidimensional = false;     // every piece spans a single level interval
  bool reduced = false;             // all derived lengths integral on the used lattice
  bool needs_kummer = false;        // half-integral lengths occur
  std::vector<std::string> detail;
};

// With use_kummer = false the lattice is the standard one (half lengths fail
// reducedness); with true, lengths integral on the ray lattice are accepted.
EquidimReport equidim_reducedness_check(const FanCone& fc, bool use_kummer);

inline int level_count(const FanCone& fc) { return fc.lambda.level_count(); }

}  // namespace tvz
