#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tvz/linform.hpp"

namespace tvz {

enum class Sign { Neg = -1, Zero = 0, Pos = 1, Mixed = 2 };

// A pointed rational polyhedral cone inside the nonnegative orthant, kept in
// double description: facet inequalities and extreme rays (primitive integer
// vectors, sorted lexicographically). Consistency of the two descriptions is
// an invariant maintained by the constructors below.
struct Cone {
  int ambient_dim = 0;
  std::vector<std::vector<Int>> rays;
  std::vector<LinForm> ineqs;

  int rank() const;
  bool full_dim() const { return rank() == ambient_dim; }
  bool is_simplicial() const { return static_cast<int>(rays.size()) == rank(); }
  // Sum of the primitive ray generators; interior point for pointed cones.
  std::vector<Rat> interior_sample() const;
  bool contains(const std::vector<Rat>& x) const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_dim == b.ambient_dim && a.rays == b.rays;
  }
  friend bool operator<(const Cone& a, const Cone& b) { return a.rays < b.rays; }
};

Cone orthant(int dim);

// Cone from inequalities (the orthant bounds are NOT implicit; pass them).
Cone cone_from_inequalities(int dim, const std::vector<LinForm>& ineqs);

// Convex cone spanned by the given rays; facets recovered by duality.
Cone cone_from_rays(int dim, const std::vector<std::vector<Int>>& rays);

// Sign of h on the cone: Zero if identically zero, Pos/Neg if one-signed
// (strict on the relative interior), Mixed if h changes sign.
Sign sign_on(const Cone& c, const LinForm& h);

// Both closed halves of a split; the wall must be Mixed on c for the halves
// to be full-dimensional.
std::pair<Cone, Cone> split(const Cone& c, const LinForm& wall);

// c ∩ {h = 0}.
Cone face_of(const Cone& c, const LinForm& wall);

Cone intersect(const Cone& a, const Cone& b);

// Facets (codimension-one faces) of a cone.
std::vector<Cone> facets(const Cone& c);

// true iff `inner` ⊆ `outer`.
bool cone_contains_cone(const Cone& outer, const Cone& inner);

// Normalized volume of the full-dimensional cone truncated by Σx_i ≤ 1,
// times dim! (so the orthant has volume 1). Zero for lower-dimensional cones.
Rat cone_volume(const Cone& c);

// Index of the subgroup generated by the rays inside the saturation of their
// span (product of elementary divisors of the ray matrix). Meaningful for
// simplicial cones; 1 means smooth.
Int lattice_index(const Cone& c);

// true iff h takes integer values on every lattice point of span(rays) that
// is a Z-combination of the rays. Half-integral forms integral on the ray
// lattice are exactly the Kummer phenomenon.
bool integral_on_ray_lattice(const Cone& c, const LinForm& h);

// If h ≥ 0 on c, a Farkas certificate: multipliers mu ≥ 0 with
// h = Σ mu_i * ineqs_i. nullopt if h is negative somewhere on c.
std::optional<std::vector<Rat>> farkas_certificate(const Cone& c, const LinForm& h);

// Shared facet test: the intersection has dimension rank-1 and is a face of
// both cones.
bool share_facet(const Cone& a, const Cone& b);

}  // namespace tvz
