#include "tvz/trop_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tvz {

TropCurve::TropCurve(int base_dim, std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges,
                     std::vector<GraphLeg> legs)
    : base_dim_(base_dim), vertices_(std::move(vertices)), edges_(std::move(edges)), legs_(std::move(legs)) {
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(vertices_.begin(), vertices_.end(), by_id);
  std::sort(edges_.begin(), edges_.end(), by_id);
  std::sort(legs_.begin(), legs_.end(), by_id);
  reindex();
}

void TropCurve::reindex() {
  vindex_.clear();
  eindex_.clear();
  lindex_.clear();
  for (size_t i = 0; i < vertices_.size(); ++i) vindex_[vertices_[i].id] = static_cast<int>(i);
  for (size_t i = 0; i < edges_.size(); ++i) eindex_[edges_[i].id] = static_cast<int>(i);
  for (size_t i = 0; i < legs_.size(); ++i) lindex_[legs_[i].id] = static_cast<int>(i);
}

const GraphVertex& TropCurve::vertex(const std::string& id) const {
  auto it = vindex_.find(id);
  if (it == vindex_.end()) throw std::out_of_range("unknown vertex: " + id);
  return vertices_[it->second];
}

const GraphEdge& TropCurve::edge(const std::string& id) const {
  auto it = eindex_.find(id);
  if (it == eindex_.end()) throw std::out_of_range("unknown edge: " + id);
  return edges_[it->second];
}

const GraphLeg& TropCurve::leg(const std::string& id) const {
  auto it = lindex_.find(id);
  if (it == lindex_.end()) throw std::out_of_range("unknown leg: " + id);
  return legs_[it->second];
}

int TropCurve::valence(const std::string& vertex_id) const {
  int v = 0;
  for (const auto& e : edges_) {
    if (e.tail == vertex_id) ++v;
    if (e.head == vertex_id) ++v;
  }
  for (const auto& l : legs_)
    if (l.base == vertex_id) ++v;
  return v;
}

std::vector<std::string> TropCurve::edges_at(const std::string& vertex_id) const {
  std::vector<std::string> out;
  for (const auto& e : edges_)
    if (e.tail == vertex_id || e.head == vertex_id) out.push_back(e.id);
  return out;
}

std::vector<std::string> TropCurve::legs_at(const std::string& vertex_id) const {
  std::vector<std::string> out;
  for (const auto& l : legs_)
    if (l.base == vertex_id) out.push_back(l.id);
  return out;
}

bool TropCurve::connected() const {
  if (vertices_.empty()) return true;
  std::set<std::string> seen{vertices_.front().id};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : edges_) {
      bool t = seen.count(e.tail), h = seen.count(e.head);
      if (t != h) {
        seen.insert(t ? e.head : e.tail);
        grew = true;
      }
    }
  }
  return seen.size() == vertices_.size();
}

int TropCurve::h1() const {
  // components by union-find over edges
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  };
  for (const auto& v : vertices_) parent[v.id] = v.id;
  for (const auto& e : edges_) {
    std::string a = find(e.tail), b = find(e.head);
    if (a != b) parent[a] = b;
  }
  std::set<std::string> roots;
  for (const auto& v : vertices_) roots.insert(find(v.id));
  return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) +
         static_cast<int>(roots.size());
}

int TropCurve::genus() const {
  int g = h1();
  for (const auto& v : vertices_) g += v.genus;
  return g;
}

std::vector<std::string> TropCurve::validate(const Cone& base) const {
  std::vector<std::string> errs;
  std::set<std::string> ids;
  for (const auto& v : vertices_) {
    if (!ids.insert("v:" + v.id).second) errs.push_back("duplicate vertex id " + v.id);
    if (v.genus < 0) errs.push_back("negative genus at " + v.id);
    if (v.weight < 0) errs.push_back("negative weight at " + v.id);
  }
  for (const auto& e : edges_) {
    if (!ids.insert("e:" + e.id).second) errs.push_back("duplicate edge id " + e.id);
    if (!vindex_.count(e.tail)) errs.push_back("edge " + e.id + " references unknown vertex " + e.tail);
    if (!vindex_.count(e.head)) errs.push_back("edge " + e.id + " references unknown vertex " + e.head);
    if (e.length.dim() != base_dim_) {
      errs.push_back("edge " + e.id + " length has wrong dimension");
      continue;
    }
    Sign s = sign_on(base, e.length);
    if (s == Sign::Zero) errs.push_back("edge " + e.id + " has identically zero length");
    else if (s != Sign::Pos)
      errs.push_back("edge " + e.id + " length is not nonnegative on the base cone");
  }
  for (const auto& l : legs_) {
    if (!ids.insert("l:" + l.id).second) errs.push_back("duplicate leg id " + l.id);
    if (!vindex_.count(l.base)) errs.push_back("leg " + l.id + " references unknown vertex " + l.base);
  }
  if (!connected()) errs.push_back("graph is not connected");
  return errs;
}

Rat Divisor::degree() const {
  Rat d = 0;
  for (const auto& [v, x] : values) d += x;
  return d;
}

Rat Divisor::at(const std::string& v) const {
  auto it = values.find(v);
  return it == values.end() ? Rat(0) : it->second;
}

bool Divisor::effective() const {
  for (const auto& [v, x] : values)
    if (x < 0) return false;
  return true;
}

Rat PLFunction::slope_out(const std::string& vertex_id, const std::string& edge_id) const {
  const GraphEdge& e = curve->edge(edge_id);
  Rat s = edge_slopes.at(edge_id);
  Rat s_last = s;
  auto it = edge_breaks.find(edge_id);
  if (it != edge_breaks.end() && !it->second.empty()) s_last = it->second.back().slope_after;
  if (vertex_id == e.tail) return s;
  if (vertex_id == e.head) return -s_last;
  throw std::invalid_argument("vertex " + vertex_id + " is not an endpoint of " + edge_id);
}

std::vector<std::string> PLFunction::check_compatibility() const {
  std::vector<std::string> errs;
  for (const auto& e : curve->edges()) {
    auto vt = vertex_values.find(e.tail);
    auto vh = vertex_values.find(e.head);
    auto se = edge_slopes.find(e.id);
    if (vt == vertex_values.end() || vh == vertex_values.end() || se == edge_slopes.end()) {
      errs.push_back("missing data on edge " + e.id);
      continue;
    }
    // total rise = sum over pieces of slope * piece length
    LinForm rise(e.length.dim());
    LinForm prev_pos(e.length.dim());
    Rat slope = se->second;
    auto bit = edge_breaks.find(e.id);
    if (bit != edge_breaks.end()) {
      for (const EdgeBreak& b : bit->second) {
        rise += (b.position - prev_pos) * slope;
        prev_pos = b.position;
        slope = b.slope_after;
      }
    }
    rise += (e.length - prev_pos) * slope;
    if (vh->second - vt->second != rise)
      errs.push_back("slopes on edge " + e.id + " are inconsistent with its length");
  }
  return errs;
}

Divisor canonical_divisor(const TropCurve& curve) {
  Divisor d;
  for (const auto& v : curve.vertices())
    d.values[v.id] = rat(2 * v.genus - 2 + curve.valence(v.id));
  return d;
}

Divisor divisor_of(const PLFunction& pl) {
  auto errs = pl.check_compatibility();
  if (!errs.empty()) throw std::invalid_argument("inconsistent PL function: " + errs.front());
  Divisor d;
  const TropCurve& c = *pl.curve;
  for (const auto& v : c.vertices()) d.values[v.id] = 0;
  for (const auto& e : c.edges()) {
    d.values[e.tail] += pl.slope_out(e.tail, e.id);
    d.values[e.head] += pl.slope_out(e.head, e.id);
  }
  for (const auto& l : c.legs()) {
    auto it = pl.leg_slopes.find(l.id);
    if (it != pl.leg_slopes.end()) d.values[l.base] -= it->second;
  }
  return d;
}

std::vector<BreakPoint> bending_locus(const PLFunction& pl, const Cone* base) {
  std::vector<BreakPoint> out;
  for (const auto& e : pl.curve->edges()) {
    auto it = pl.edge_breaks.find(e.id);
    if (it == pl.edge_breaks.end()) continue;
    LinForm prev(e.length.dim());
    Rat prev_slope = pl.edge_slopes.at(e.id);
    for (const EdgeBreak& b : it->second) {
      if (base != nullptr) {
        Sign lo = sign_on(*base, b.position - prev);
        Sign hi = sign_on(*base, e.length - b.position);
        if (lo != Sign::Pos || hi != Sign::Pos)
          throw std::invalid_argument("break positions on edge " + e.id +
                                      " are not strictly increasing within the edge");
      }
      if (b.slope_after == prev_slope)
        throw std::invalid_argument("spurious break (no slope change) on edge " + e.id);
      out.push_back({e.id, b.position});
      prev = b.position;
      prev_slope = b.slope_after;
    }
  }
  return out;
}

TropCurve subdivide_at_breaks(const TropCurve& curve, const std::vector<BreakPoint>& breaks,
                              std::map<std::string, std::string>* back_map) {
  std::map<std::string, std::vector<LinForm>> per_edge;
  for (const BreakPoint& b : breaks) per_edge[b.edge_id].push_back(b.position);

  std::vector<GraphVertex> vs = curve.vertices();
  std::vector<GraphEdge> es;
  for (const auto& e : curve.edges()) {
    auto it = per_edge.find(e.id);
    if (it == per_edge.end()) {
      es.push_back(e);
      if (back_map) (*back_map)[e.id] = e.id;
      continue;
    }
    // positions are taken in the given order, which callers supply increasing
    // along the edge (lexicographic sorting would be wrong for linear forms)
    std::vector<LinForm>& pos = it->second;
    std::string prev_v = e.tail;
    LinForm prev_pos(e.length.dim());
    for (size_t k = 0; k < pos.size(); ++k) {
      std::string nv = e.id + ".b" + std::to_string(k);
      vs.push_back({nv, 0, 0});
      std::string pid = e.id + ".p" + std::to_string(k);
      es.push_back({pid, prev_v, nv, pos[k] - prev_pos});
      if (back_map) (*back_map)[pid] = e.id;
      prev_v = nv;
      prev_pos = pos[k];
    }
    std::string pid = e.id + ".p" + std::to_string(pos.size());
    es.push_back({pid, prev_v, e.head, e.length - prev_pos});
    if (back_map) (*back_map)[pid] = e.id;
  }
  return TropCurve(curve.base_dim(), std::move(vs), std::move(es), curve.legs());
}

}  // namespace tvz
