#pragma once

#include <map>
#include <string>
#include <vector>

#include "tvz/trop_graph.hpp"

namespace tvz {

struct ValidationIssue {
  std::string code;      // stable machine-readable tag
  std::string message;
  std::string location;  // id of the offending object, when applicable
  bool warning = false;  // warnings (e.g. unstable-conjugate) do not fail validation
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool pass() const {
    for (const auto& i : issues)
      if (!i.warning) return false;
    return true;
  }
};

// A degree-two tropical admissible cover. Base-cone coordinates are indexed
// by target edges; the coordinate is the source-side smoothing parameter, so
// a source edge has length = its coordinate and a target edge has length =
// expansion * coordinate.
class TropCover {
 public:
  TropCover() = default;
  TropCover(TropCurve source, TropCurve target, std::map<std::string, std::string> vertex_map,
            std::map<std::string, std::string> edge_map, std::map<std::string, std::string> leg_map,
            std::map<std::string, int> edge_expansion, std::map<std::string, int> leg_expansion);

  const TropCurve& source() const { return source_; }
  const TropCurve& target() const { return target_; }
  int base_dim() const { return base_dim_; }
  const std::vector<std::string>& coordinate_names() const { return coord_names_; }
  int coordinate_of(const std::string& target_edge) const;

  const std::string& vertex_image(const std::string& source_vertex) const;
  const std::string& edge_image(const std::string& source_edge) const;
  const std::string& leg_image(const std::string& source_leg) const;
  int expansion(const std::string& source_edge) const;
  int leg_expansion(const std::string& source_leg) const;
  int target_edge_expansion(const std::string& target_edge) const;  // 2 iff single exp-2 preimage

  std::vector<std::string> vertex_preimages(const std::string& target_vertex) const;
  std::vector<std::string> edge_preimages(const std::string& target_edge) const;
  int local_degree(const std::string& source_vertex) const;  // 1 or 2

  int branch_legs_at(const std::string& target_vertex) const;
  int induced_target_weight(const std::string& target_vertex) const;

  Cone base_cone() const { return orthant(base_dim_); }

 private:
  TropCurve source_, target_;
  std::map<std::string, std::string> vertex_map_, edge_map_, leg_map_;
  std::map<std::string, int> edge_expansion_, leg_expansion_;
  std::map<std::string, int> coord_;
  std::vector<std::string> coord_names_;
  int base_dim_ = 0;
};

// Checks all cover invariants: tree target with six branch legs, degree two
// everywhere, length compatibility, local Riemann-Hurwitz, weighted stability
// of the target, source genus two and connectivity.
ValidationReport validate(const TropCover& cover);

// Orbifold canonical divisor on the target:
//   v -> val(v) - 2 + (1/2) #(branch legs at v),
// valence counting edge-ends and marking legs.
Divisor orbifold_canonical(const TropCover& cover);

// The deck involution: swaps the two objects over any target object with two
// preimages, fixes expansion-2 objects.
struct Involution {
  std::map<std::string, std::string> on_vertices, on_edges, on_legs;
};
Involution conjugate_involution(const TropCover& cover);

// Cover obtained by contracting every source/target edge whose coordinate is
// identically zero on `face` (genus of merged vertex classes is preserved via
// first Betti numbers of the contracted subgraphs). The base dimension is
// unchanged; dead coordinates simply no longer occur in any length.
TropCover contract_on_face(const TropCover& cover, const Cone& face,
                           std::map<std::string, std::string>* vertex_collapse = nullptr);

}  // namespace tvz
