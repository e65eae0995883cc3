#include "tvz/cover.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tvz {

TropCover::TropCover(TropCurve source, TropCurve target, std::map<std::string, std::string> vertex_map,
                     std::map<std::string, std::string> edge_map, std::map<std::string, std::string> leg_map,
                     std::map<std::string, int> edge_expansion, std::map<std::string, int> leg_expansion)
    : source_(std::move(source)),
      target_(std::move(target)),
      vertex_map_(std::move(vertex_map)),
      edge_map_(std::move(edge_map)),
      leg_map_(std::move(leg_map)),
      edge_expansion_(std::move(edge_expansion)),
      leg_expansion_(std::move(leg_expansion)) {
  for (const auto& e : target_.edges()) {
    coord_[e.id] = base_dim_++;
    coord_names_.push_back(e.id);
  }
}

int TropCover::coordinate_of(const std::string& target_edge) const {
  auto it = coord_.find(target_edge);
  if (it == coord_.end()) throw std::out_of_range("unknown target edge: " + target_edge);
  return it->second;
}

const std::string& TropCover::vertex_image(const std::string& v) const { return vertex_map_.at(v); }
const std::string& TropCover::edge_image(const std::string& e) const { return edge_map_.at(e); }
const std::string& TropCover::leg_image(const std::string& l) const { return leg_map_.at(l); }
int TropCover::expansion(const std::string& e) const { return edge_expansion_.at(e); }
int TropCover::leg_expansion(const std::string& l) const { return leg_expansion_.at(l); }

int TropCover::target_edge_expansion(const std::string& target_edge) const {
  for (const auto& [se, te] : edge_map_)
    if (te == target_edge) return edge_expansion_.at(se);
  throw std::out_of_range("target edge has no preimage: " + target_edge);
}

std::vector<std::string> TropCover::vertex_preimages(const std::string& target_vertex) const {
  std::vector<std::string> out;
  for (const auto& [sv, tv] : vertex_map_)
    if (tv == target_vertex) out.push_back(sv);
  return out;
}

std::vector<std::string> TropCover::edge_preimages(const std::string& target_edge) const {
  std::vector<std::string> out;
  for (const auto& [se, te] : edge_map_)
    if (te == target_edge) out.push_back(se);
  return out;
}

int TropCover::local_degree(const std::string& source_vertex) const {
  return vertex_preimages(vertex_image(source_vertex)).size() == 1 ? 2 : 1;
}

int TropCover::branch_legs_at(const std::string& target_vertex) const {
  int n = 0;
  for (const auto& l : target_.legs())
    if (l.kind == LegKind::Branch && l.base == target_vertex) ++n;
  return n;
}

int TropCover::induced_target_weight(const std::string& target_vertex) const {
  int w = 0;
  for (const std::string& sv : vertex_preimages(target_vertex)) w += source_.vertex(sv).weight;
  return w;
}

ValidationReport validate(const TropCover& cover) {
  ValidationReport rep;
  auto issue = [&](const std::string& code, const std::string& msg, const std::string& loc,
                   bool warning = false) { rep.issues.push_back({code, msg, loc, warning}); };

  const TropCurve& S = cover.source();
  const TropCurve& T = cover.target();
  Cone base = cover.base_cone();

  for (const std::string& e : S.validate(base)) issue("source-graph", e, "");
  for (const std::string& e : T.validate(base)) issue("target-graph", e, "");
  if (!rep.pass()) return rep;

  if (T.h1() != 0) issue("target-tree", "target graph is not a tree", "");
  for (const auto& v : T.vertices())
    if (v.genus != 0) issue("target-genus", "target vertex has positive genus", v.id);

  int branch_count = 0;
  for (const auto& l : T.legs())
    if (l.kind == LegKind::Branch) ++branch_count;
  if (branch_count != 6)
    issue("branch-leg-count",
          "target must carry exactly 6 branch legs, found " + std::to_string(branch_count), "");
  for (const auto& l : S.legs())
    if (l.kind == LegKind::Branch) issue("source-branch-leg", "branch legs live on the target only", l.id);

  // map well-formedness
  for (const auto& v : S.vertices()) {
    if (!T.has_vertex(cover.vertex_image(v.id))) {
      issue("vertex-map", "vertex image missing", v.id);
      return rep;
    }
  }
  for (const auto& e : S.edges()) {
    const std::string& te = cover.edge_image(e.id);
    const GraphEdge* tedge = nullptr;
    for (const auto& t : T.edges())
      if (t.id == te) tedge = &t;
    if (tedge == nullptr) {
      issue("edge-map", "edge image missing", e.id);
      return rep;
    }
    int x = cover.expansion(e.id);
    if (x != 1 && x != 2) issue("expansion", "edge expansion must be 1 or 2", e.id);
    // endpoints must map to endpoints (no folding, no vertical edges)
    std::set<std::string> tends{tedge->tail, tedge->head};
    std::set<std::string> iends{cover.vertex_image(e.tail), cover.vertex_image(e.head)};
    if (e.tail == e.head)
      issue("loop-edge", "source loops cannot map to tree edges", e.id);
    else if (tends != iends)
      issue("edge-endpoints", "edge endpoints do not map to the endpoints of the image edge", e.id);
    // length compatibility: source length = coordinate of the target edge
    LinForm want = LinForm::coordinate(cover.base_dim(), cover.coordinate_of(te));
    if (e.length != want)
      issue("length-compat", "source edge length must equal its target-edge coordinate", e.id);
    LinForm twant = want * rat(x);
    if (tedge->length != twant)
      issue("length-compat", "target edge length must be expansion * coordinate", te);
  }
  for (const auto& l : S.legs()) {
    if (l.kind != LegKind::Marking) continue;
    const std::string& tl = cover.leg_image(l.id);
    bool found = false;
    for (const auto& t : T.legs())
      if (t.id == tl && t.kind == LegKind::Marking) found = true;
    if (!found) issue("leg-map", "marking leg image missing on target", l.id);
  }

  // degree two over every target vertex and edge
  for (const auto& tv : T.vertices()) {
    auto pre = cover.vertex_preimages(tv.id);
    int deg = 0;
    for (const std::string& sv : pre) deg += (pre.size() == 1 ? 2 : 1);
    if (pre.empty() || deg != 2)
      issue("degree", "target vertex is not covered with total degree two", tv.id);
  }
  for (const auto& te : T.edges()) {
    int deg = 0;
    for (const std::string& se : cover.edge_preimages(te.id)) deg += cover.expansion(se);
    if (deg != 2) issue("degree", "target edge is not covered with total degree two", te.id);
  }

  // harmonicity at every source vertex: for each target edge/leg at the image,
  // the expansions of its preimages at this vertex sum to the local degree.
  for (const auto& sv : S.vertices()) {
    int d = cover.local_degree(sv.id);
    const std::string tv = cover.vertex_image(sv.id);
    for (const auto& te : T.edges()) {
      if (te.tail != tv && te.head != tv) continue;
      int s = 0;
      for (const std::string& se : S.edges_at(sv.id))
        if (cover.edge_image(se) == te.id) s += cover.expansion(se);
      if (s != d) issue("harmonic", "expansions over target edge " + te.id + " at vertex do not sum to the local degree", sv.id);
    }
    for (const auto& tl : T.legs()) {
      if (tl.base != tv || tl.kind != LegKind::Marking) continue;
      int s = 0;
      for (const std::string& sl : S.legs_at(sv.id))
        if (S.leg(sl).kind == LegKind::Marking && cover.leg_image(sl) == tl.id) s += cover.leg_expansion(sl);
      if (s != d) issue("harmonic", "marking legs over " + tl.id + " do not sum to the local degree", sv.id);
    }
  }

  // local Riemann-Hurwitz: for the degree-two preimage w of v,
  //   g(w) = (1/2)(#branch legs at v + #expansion-2 edges at w - 2);
  // degree-one preimages are rational and all their edges have expansion 1.
  for (const auto& sv : S.vertices()) {
    int d = cover.local_degree(sv.id);
    const std::string tv = cover.vertex_image(sv.id);
    int e2 = 0;
    for (const std::string& se : S.edges_at(sv.id))
      if (cover.expansion(se) == 2) ++e2;
    if (d == 1) {
      if (sv.genus != 0) issue("riemann-hurwitz", "degree-one vertex must have genus zero", sv.id);
      if (e2 != 0) issue("riemann-hurwitz", "degree-one vertex cannot meet expansion-2 edges", sv.id);
      if (cover.branch_legs_at(tv) != 0)
        issue("riemann-hurwitz", "branch legs at the image of a two-preimage vertex", sv.id);
    } else {
      int b = cover.branch_legs_at(tv);
      if (2 * sv.genus != b + e2 - 2)
        issue("riemann-hurwitz",
              "local Riemann-Hurwitz fails: 2g = " + std::to_string(2 * sv.genus) + " but branch legs + expansion-2 edges - 2 = " + std::to_string(b + e2 - 2),
              sv.id);
    }
  }

  // weighted stability of the target
  for (const auto& tv : T.vertices()) {
    if (cover.induced_target_weight(tv.id) > 0) continue;
    if (T.valence(tv.id) < 3)
      issue("weighted-stability", "weight-zero target vertex with fewer than three special points", tv.id);
  }

  if (S.genus() != 2)
    issue("source-genus", "source must have total genus two, found " + std::to_string(S.genus()), "");

  // unstable conjugates: weight-0, unmarked source vertices with fewer than
  // three special points (edge-ends, markings, ramification points) are
  // admitted iff their conjugate is stable; flagged, not rejected.
  Involution sigma;
  try {
    sigma = conjugate_involution(cover);
  } catch (const std::invalid_argument&) {
    return rep;  // preimage counts are broken; the degree issues above cover it
  }
  auto special_points = [&](const std::string& v) {
    int n = S.valence(v);
    if (cover.local_degree(v) == 2) n += cover.branch_legs_at(cover.vertex_image(v));
    return n;
  };
  auto vertex_stable = [&](const std::string& v) {
    const GraphVertex& gv = S.vertex(v);
    return gv.weight > 0 || gv.genus > 0 || special_points(v) >= 3;
  };
  for (const auto& sv : S.vertices()) {
    if (vertex_stable(sv.id)) continue;
    const std::string& conj = sigma.on_vertices.at(sv.id);
    if (conj != sv.id && vertex_stable(conj))
      issue("unstable-conjugate", "weight-zero low-valence vertex kept as conjugate of a stable one", sv.id,
            /*warning=*/true);
    else
      issue("stability", "unstable source vertex without stable conjugate", sv.id);
  }

  return rep;
}

Divisor orbifold_canonical(const TropCover& cover) {
  Divisor d;
  const TropCurve& T = cover.target();
  for (const auto& v : T.vertices()) {
    int val = 0;
    for (const auto& e : T.edges()) {
      if (e.tail == v.id) ++val;
      if (e.head == v.id) ++val;
    }
    for (const auto& l : T.legs())
      if (l.base == v.id && l.kind == LegKind::Marking) ++val;
    d.values[v.id] = rat(val - 2) + rat(cover.branch_legs_at(v.id), 2);
  }
  return d;
}

Involution conjugate_involution(const TropCover& cover) {
  Involution inv;
  for (const auto& tv : cover.target().vertices()) {
    auto pre = cover.vertex_preimages(tv.id);
    std::sort(pre.begin(), pre.end());
    if (pre.size() == 1)
      inv.on_vertices[pre[0]] = pre[0];
    else if (pre.size() == 2) {
      inv.on_vertices[pre[0]] = pre[1];
      inv.on_vertices[pre[1]] = pre[0];
    } else {
      throw std::invalid_argument("cover invalid: target vertex " + tv.id + " has " +
                                  std::to_string(pre.size()) + " preimages");
    }
  }
  for (const auto& te : cover.target().edges()) {
    auto pre = cover.edge_preimages(te.id);
    std::sort(pre.begin(), pre.end());
    if (pre.size() == 1)
      inv.on_edges[pre[0]] = pre[0];
    else if (pre.size() == 2) {
      inv.on_edges[pre[0]] = pre[1];
      inv.on_edges[pre[1]] = pre[0];
    } else {
      throw std::invalid_argument("cover invalid: target edge " + te.id + " has " +
                                  std::to_string(pre.size()) + " preimages");
    }
  }
  for (const auto& tl : cover.target().legs()) {
    if (tl.kind != LegKind::Marking) continue;
    std::vector<std::string> pre;
    for (const auto& sl : cover.source().legs())
      if (sl.kind == LegKind::Marking && cover.leg_image(sl.id) == tl.id) pre.push_back(sl.id);
    std::sort(pre.begin(), pre.end());
    if (pre.size() == 1)
      inv.on_legs[pre[0]] = pre[0];
    else if (pre.size() == 2) {
      inv.on_legs[pre[0]] = pre[1];
      inv.on_legs[pre[1]] = pre[0];
    } else if (!pre.empty()) {
      throw std::invalid_argument("cover invalid: target leg " + tl.id + " has " +
                                  std::to_string(pre.size()) + " preimages");
    }
  }
  return inv;
}

namespace {

// Contract a curve along the given edge set; merged vertex classes get
// genus = sum of member genera + h1 of the contracted subgraph.
TropCurve contract_edges(const TropCurve& c, const std::set<std::string>& dead,
                         std::map<std::string, std::string>* collapse) {
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  };
  for (const auto& v : c.vertices()) parent[v.id] = v.id;
  for (const auto& e : c.edges()) {
    if (!dead.count(e.id)) continue;
    std::string a = find(e.tail), b = find(e.head);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);  // keep the lexicographically least id
  }
  std::map<std::string, std::vector<std::string>> classes;
  for (const auto& v : c.vertices()) classes[find(v.id)].push_back(v.id);

  std::vector<GraphVertex> vs;
  for (const auto& [root, members] : classes) {
    GraphVertex nv{root, 0, 0};
    int internal_edges = 0;
    std::set<std::string> mset(members.begin(), members.end());
    for (const std::string& m : members) {
      const GraphVertex& ov = c.vertex(m);
      nv.genus += ov.genus;
      nv.weight += ov.weight;
    }
    for (const auto& e : c.edges())
      if (dead.count(e.id) && mset.count(e.tail) && mset.count(e.head)) ++internal_edges;
    nv.genus += internal_edges - (static_cast<int>(members.size()) - 1);  // h1 of the contracted subgraph
    vs.push_back(nv);
  }
  std::vector<GraphEdge> es;
  for (const auto& e : c.edges()) {
    if (dead.count(e.id)) continue;
    es.push_back({e.id, find(e.tail), find(e.head), e.length});
  }
  std::vector<GraphLeg> ls;
  for (const auto& l : c.legs()) ls.push_back({l.id, find(l.base), l.kind, l.label});
  if (collapse)
    for (const auto& v : c.vertices()) (*collapse)[v.id] = find(v.id);
  return TropCurve(c.base_dim(), std::move(vs), std::move(es), std::move(ls));
}

}  // namespace

TropCover contract_on_face(const TropCover& cover, const Cone& face,
                           std::map<std::string, std::string>* vertex_collapse) {
  std::set<std::string> dead_target, dead_source;
  for (const auto& te : cover.target().edges()) {
    LinForm coordf = LinForm::coordinate(cover.base_dim(), cover.coordinate_of(te.id));
    if (sign_on(face, coordf) == Sign::Zero) dead_target.insert(te.id);
  }
  for (const auto& se : cover.source().edges())
    if (dead_target.count(cover.edge_image(se.id))) dead_source.insert(se.id);

  std::map<std::string, std::string> s_collapse, t_collapse;
  TropCurve S = contract_edges(cover.source(), dead_source, &s_collapse);
  TropCurve T = contract_edges(cover.target(), dead_target, &t_collapse);

  // Re-express lengths in the coordinates of the contracted cover: one
  // coordinate per surviving target edge, in id order.
  std::map<std::string, int> new_coord;
  {
    int k = 0;
    for (const auto& te : T.edges()) new_coord[te.id] = k++;
  }
  int nd = static_cast<int>(new_coord.size());
  std::vector<GraphEdge> tes;
  for (const auto& te : T.edges()) {
    LinForm len = LinForm::coordinate(nd, new_coord.at(te.id)) * rat(cover.target_edge_expansion(te.id));
    tes.push_back({te.id, te.tail, te.head, len});
  }
  T = TropCurve(nd, std::vector<GraphVertex>(T.vertices()), std::move(tes),
                std::vector<GraphLeg>(T.legs()));
  std::vector<GraphEdge> ses;
  for (const auto& se : S.edges())
    ses.push_back({se.id, se.tail, se.head, LinForm::coordinate(nd, new_coord.at(cover.edge_image(se.id)))});
  S = TropCurve(nd, std::vector<GraphVertex>(S.vertices()), std::move(ses),
                std::vector<GraphLeg>(S.legs()));

  std::map<std::string, std::string> vmap, emap, lmap;
  std::map<std::string, int> eexp, lexp;
  for (const auto& v : S.vertices()) {
    // image of any member of the class, pushed through the target collapse
    vmap[v.id] = t_collapse.at(cover.vertex_image(v.id));
  }
  for (const auto& e : S.edges()) {
    emap[e.id] = cover.edge_image(e.id);
    eexp[e.id] = cover.expansion(e.id);
  }
  for (const auto& l : S.legs()) {
    if (l.kind != LegKind::Marking) continue;
    lmap[l.id] = cover.leg_image(l.id);
    lexp[l.id] = cover.leg_expansion(l.id);
  }
  if (vertex_collapse) *vertex_collapse = s_collapse;
  return TropCover(std::move(S), std::move(T), std::move(vmap), std::move(emap), std::move(lmap),
                   std::move(eexp), std::move(lexp));
}

}  // namespace tvz
