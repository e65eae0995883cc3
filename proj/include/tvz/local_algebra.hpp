#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tvz/rational.hpp"

namespace tvz {

// Curve germs as parametrized subalgebras of a product of truncated rings:
// reduced branches k[[t]] and ribbon branches k[[s,e]]/(e^2). All linear
// algebra is exact over the rationals, truncated at a chosen order N, with
// every reported invariant checked for stability at N and N+1.

enum class BranchKind { Reduced, Ribbon };

struct GermTerm {
  int branch = 0;
  int power = 0;   // exponent of t (reduced) or s (ribbon)
  int eps = 0;     // 0 or 1; ribbon branches only
  Rat coeff = 1;
};

struct GermSpec {
  std::string name;
  std::vector<BranchKind> branches;
  std::vector<std::vector<GermTerm>> generators;
  int reduced_branch_count() const;
  bool has_ribbon() const;
};

struct Monomial {
  int branch;
  int power;
  int eps;
  int degree() const { return power + eps; }
};

class TruncatedRing {
 public:
  TruncatedRing(std::vector<BranchKind> branches, int order);
  int order() const { return order_; }
  int dim() const { return static_cast<int>(monos_.size()); }
  const std::vector<Monomial>& monomials() const { return monos_; }
  int mono_index(int branch, int power, int eps) const;  // -1 when truncated away

  using Vec = std::vector<Rat>;
  Vec zero() const { return Vec(dim(), Rat(0)); }
  Vec one() const;  // the diagonal constant (1 on every branch)
  Vec mul(const Vec& a, const Vec& b) const;
  Vec element(const std::vector<GermTerm>& terms) const;
  int order_of(const Vec& v) const;  // minimal degree of the support; order() for zero

 private:
  std::vector<BranchKind> branches_;
  int order_;
  std::vector<Monomial> monos_;
  std::map<std::tuple<int, int, int>, int> index_;
};

// Row-echelon span with pivot-indexed rows (pivots normalized to 1).
class Echelon {
 public:
  using Vec = TruncatedRing::Vec;
  bool insert(Vec v);           // true if the span grew
  Vec reduce(Vec v) const;      // residual after reduction
  bool contains(const Vec& v) const;
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::map<int, Vec>& rows() const { return rows_; }
  // Coordinates of v in the (pivot-ordered) row basis; nullopt if v is
  // outside the span.
  std::optional<std::vector<Rat>> coordinates(const Vec& v) const;

 private:
  std::map<int, Vec> rows_;
};

struct LocalAlgebra {
  TruncatedRing ring;
  std::vector<TruncatedRing::Vec> generators;
  Echelon basis;  // includes the constants
};

LocalAlgebra build_algebra(const GermSpec& spec, int order);

// All invariants below are computed at the given order and re-checked at
// order + 1; disagreement throws std::runtime_error("increase N ...").
int delta_invariant(const GermSpec& spec, int order);

// g = delta - m + 1; rejects germs with ribbon branches.
int genus(const GermSpec& spec, int order);

struct ConductorResult {
  std::vector<TruncatedRing::Vec> generators;  // echelon rows of the conductor
  int colength = 0;                            // length(ambient / conductor)
};
ConductorResult conductor(const GermSpec& spec, int order);

bool check_two_delta(const GermSpec& spec, int order);

// One-dimensional socle of the Artinian reduction by a regular element,
// chosen deterministically among generic integer combinations of the
// generators. Throws if no regular element is found.
bool gorenstein_check(const GermSpec& spec, int order);

bool decomposability_check(const GermSpec& spec, int order);

// True iff the span of the conductor equals the ideal generated by the given
// elements (all at the stated order).
bool conductor_equals_ideal(const GermSpec& spec, int order,
                            const std::vector<std::vector<GermTerm>>& ideal_gens);

// The catalogued germs. Kinds: "node", "cusp", "tacnode", "ramphoid",
// "typeI" (m >= 1), "typeII" (m >= 2), "lines" (m >= 3), "ribbon-tail"
// (k >= 1), "ribbon-line", "two-cusps".
GermSpec table_germ(const std::string& kind, int m);

inline constexpr int kDefaultOrder = 12;

}  // namespace tvz
