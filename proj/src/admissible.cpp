#include "tvz/admissible.hpp"

#include <functional>
#include <set>

namespace tvz {

namespace {

// Component of the target tree on the `anchor` side after removing `cut`.
std::set<std::string> tree_side(const TropCurve& T, const std::string& cut_edge,
                                const std::string& anchor) {
  std::set<std::string> side{anchor};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : T.edges()) {
      if (e.id == cut_edge) continue;
      bool t = side.count(e.tail), h = side.count(e.head);
      if (t != h) {
        side.insert(t ? e.head : e.tail);
        grew = true;
      }
    }
  }
  return side;
}

}  // namespace

std::vector<AdmissibleFunction> enumerate_admissible(const TropCover& cover) {
  const TropCurve& T = cover.target();
  const TropCurve& S = cover.source();
  int dim = cover.base_dim();

  std::vector<AdmissibleFunction> out;
  for (const auto& v0 : T.vertices()) {
    AdmissibleFunction f;
    f.support = v0.id;
    for (const auto& v : T.vertices()) f.D.values[v.id] = v.id == v0.id ? 1 : 0;

    // Shadow slopes: on the edge cut, the outgoing slope at the endpoint x is
    //   D(side of x) + 1 - (1/2) #(branch legs on the side of x).
    PLFunction& sh = f.target_shadow;
    sh.curve = &T;
    for (const auto& e : T.edges()) {
      std::set<std::string> tail_side = tree_side(T, e.id, e.tail);
      Rat d_side = 0, b_side = 0;
      for (const std::string& v : tail_side) {
        d_side += f.D.at(v);
        b_side += rat(cover.branch_legs_at(v));
      }
      Rat s_out_tail = d_side + 1 - b_side / 2;
      sh.edge_slopes[e.id] = s_out_tail;  // slope tail -> head equals the outgoing slope at the tail
    }
    for (const auto& l : T.legs())
      if (l.kind == LegKind::Marking) sh.leg_slopes[l.id] = 1;

    // Values: 0 at the support, propagated over the tree.
    std::map<std::string, LinForm> val;
    val[v0.id] = LinForm(dim);
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : T.edges()) {
        bool t = val.count(e.tail), h = val.count(e.head);
        if (t == h) continue;
        if (t)
          val[e.head] = val[e.tail] + e.length * sh.edge_slopes[e.id];
        else
          val[e.tail] = val[e.head] - e.length * sh.edge_slopes[e.id];
        grew = true;
      }
    }
    sh.vertex_values = val;

    // Pullback: values through the vertex map, slopes times expansion.
    PLFunction& sf = f.source_function;
    sf.curve = &S;
    for (const auto& sv : S.vertices()) sf.vertex_values[sv.id] = val.at(cover.vertex_image(sv.id));
    for (const auto& se : S.edges()) {
      const GraphEdge& te = T.edge(cover.edge_image(se.id));
      Rat s = sh.edge_slopes[te.id] * rat(cover.expansion(se.id));
      // orient: stored slope runs tail -> head of the source edge
      if (cover.vertex_image(se.tail) == te.tail)
        sf.edge_slopes[se.id] = s;
      else
        sf.edge_slopes[se.id] = -s;
      if (!is_integer(sf.edge_slopes[se.id]))
        throw std::logic_error("validation bug: non-integral source slope on edge " + se.id);
    }
    for (const auto& sl : S.legs())
      if (sl.kind == LegKind::Marking) sf.leg_slopes[sl.id] = 1;

    auto errs = check_admissible(cover, f);
    if (!errs.empty())
      throw std::logic_error("validation bug: admissible function at " + v0.id + ": " + errs.front());
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::string> check_admissible(const TropCover& cover, const AdmissibleFunction& f) {
  std::vector<std::string> errs;
  if (f.D.degree() != 1) errs.push_back("divisor degree is not one");
  if (!f.D.effective()) errs.push_back("divisor is not effective");

  for (const std::string& e : f.target_shadow.check_compatibility())
    errs.push_back("target shadow: " + e);
  for (const std::string& e : f.source_function.check_compatibility())
    errs.push_back("source function: " + e);
  if (!errs.empty()) return errs;

  // Eq. for the shadow: D = K_orb + div(shadow).
  Divisor korb = orbifold_canonical(cover);
  Divisor dv = divisor_of(f.target_shadow);
  for (const auto& v : cover.target().vertices()) {
    if (korb.at(v.id) + dv.at(v.id) != f.D.at(v.id))
      errs.push_back("shadow divisor identity fails at target vertex " + v.id);
  }

  // Source identity: K + div(f) = psi^* D (local degree times the value at the image).
  Divisor k = canonical_divisor(cover.source());
  Divisor df = divisor_of(f.source_function);
  for (const auto& v : cover.source().vertices()) {
    Rat want = rat(cover.local_degree(v.id)) * f.D.at(cover.vertex_image(v.id));
    if (k.at(v.id) + df.at(v.id) != want)
      errs.push_back("pullback divisor identity fails at source vertex " + v.id);
  }

  // Half-integral shadow slopes only on expansion-2 edges; integral source slopes.
  for (const auto& te : cover.target().edges()) {
    const Rat& s = f.target_shadow.edge_slopes.at(te.id);
    if (!is_integer(s) && cover.target_edge_expansion(te.id) != 2)
      errs.push_back("half-integral shadow slope on an expansion-1 edge " + te.id);
  }
  for (const auto& se : cover.source().edges())
    if (!is_integer(f.source_function.edge_slopes.at(se.id)))
      errs.push_back("non-integral source slope on " + se.id);
  return errs;
}

}  // namespace tvz
