#include "tvz/lambda.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tvz {

namespace {

// Position along an edge with an explicit positive integer denominator;
// realized break positions must land back in the half-integral lattice but
// intermediate comparisons need not.
struct ScaledPos {
  LinForm num;
  Int den = 1;
};

Sign cmp_pos(const SignOracle& oracle, const ScaledPos& a, const ScaledPos& b, WallOrigin origin) {
  LinForm h = a.num * Rat(b.den) - b.num * Rat(a.den);
  return oracle.sign(h, origin);
}

struct Candidate {
  int index = -1;  // -1 = zero function
  std::map<std::string, LinForm> value;
  std::map<std::string, Rat> slope;  // per edge id, along tail -> head
};

struct SubPiece {
  LinForm p0, p1;  // positions from the edge tail
  LinForm v0;      // lambda at p0
  Rat slope;
  int active;
};

int weight_above(const TropCover& cover, const std::vector<std::pair<std::string, LinForm>>& vals,
                 const SignOracle& oracle, const LinForm& threshold, bool strict) {
  int w = 0;
  for (const auto& [v, val] : vals) {
    Sign s = oracle.sign(val - threshold, WallOrigin::Alignment);
    bool above = strict ? (s == Sign::Pos) : (s != Sign::Neg);
    if (above) w += cover.source().vertex(v).weight;
  }
  return w;
}

}  // namespace

std::vector<LiftedFunction> lift_all(const TropCover& cover,
                                     const std::vector<AdmissibleFunction>& fns,
                                     const SignOracle& oracle) {
  const TropCurve& S = cover.source();
  std::vector<std::pair<std::string, int>> positive;  // (vertex, weight)
  for (const auto& v : S.vertices())
    if (v.weight > 0) positive.push_back({v.id, v.weight});

  std::vector<LiftedFunction> lifts;
  for (size_t i = 0; i < fns.size(); ++i) {
    const AdmissibleFunction& f = fns[i];
    LiftedFunction lf;
    lf.index = static_cast<int>(i);
    lf.support = f.support;
    if (positive.empty()) {
      lf.no_valid_lift = true;
      lifts.push_back(std::move(lf));
      continue;
    }
    std::vector<std::pair<std::string, LinForm>> vals;
    for (const auto& [v, w] : positive) {
      (void)w;
      vals.push_back({v, f.source_function.vertex_values.at(v)});
    }

    // Distinct value classes, sorted descending on the region.
    std::vector<std::vector<int>> classes;
    for (int k = 0; k < static_cast<int>(vals.size()); ++k) {
      bool placed = false;
      for (auto& cl : classes) {
        Sign s = oracle.sign(vals[k].second - vals[cl.front()].second, WallOrigin::Alignment);
        if (s == Sign::Zero) {
          cl.push_back(k);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({k});
    }
    std::sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
      return oracle.sign(vals[a.front()].second - vals[b.front()].second, WallOrigin::Alignment) ==
             Sign::Pos;
    });

    // The default sets the maximal value to zero; the exception clause fires
    // only for a unique maximizer of the listed genus/weight/support types.
    const auto& top = classes.front();
    bool exceptional = false, genus_one = false;
    if (top.size() == 1) {
      const GraphVertex& v = S.vertex(vals[top.front()].first);
      bool supports_d = f.D.at(cover.vertex_image(v.id)) > 0;
      if (v.genus == 2 && v.weight <= 2 && supports_d) exceptional = true;
      else if (v.genus == 1 && v.weight <= 1) {
        exceptional = true;
        genus_one = true;
      } else if (v.genus == 0 && v.weight <= 2 && supports_d)
        exceptional = true;
    }

    std::optional<LinForm> shift;
    if (!exceptional) {
      shift = vals[top.front()].second;
    } else {
      lf.exception_applied = true;
      lf.genus_one_clause = genus_one;
      for (const auto& cl : classes) {
        const LinForm& c = vals[cl.front()].second;
        if (weight_above(cover, vals, oracle, c, true) <= 2 &&
            weight_above(cover, vals, oracle, c, false) >= 3) {
          shift = c;
          break;
        }
      }
      if (!shift) lf.no_valid_lift = true;  // reported as "no valid lift", treated as trivial
    }

    if (shift) {
      lf.zero_shift = *shift;
      bool all_nonpos = true;
      for (const auto& v : S.vertices()) {
        LinForm lv = f.source_function.vertex_values.at(v.id) - *shift;
        Sign s = oracle.try_sign(lv);
        if (s == Sign::Pos || s == Sign::Mixed) all_nonpos = false;
        lf.values[v.id] = std::move(lv);
      }
      lf.nonpositive = all_nonpos;
    }
    lifts.push_back(std::move(lf));
  }

  // A lift pointwise ≤ another one at every vertex is ≤ everywhere (both are
  // linear on edges) and contributes nothing to the maximum. Exact ties are
  // broken toward the smaller index.
  for (size_t i = 0; i < lifts.size(); ++i) {
    if (lifts[i].is_trivial()) continue;
    for (size_t j = 0; j < lifts.size(); ++j) {
      if (i == j || lifts[j].no_valid_lift || lifts[j].nonpositive) continue;
      bool le = true, eq = true;
      for (const auto& v : S.vertices()) {
        Sign s = oracle.try_sign(lifts[j].values.at(v.id) - lifts[i].values.at(v.id));
        if (s == Sign::Neg || s == Sign::Mixed) {
          le = false;
          break;
        }
        if (s != Sign::Zero) eq = false;
      }
      if (le && (!eq || j < i)) {
        lifts[i].dominated = true;
        break;
      }
    }
  }
  return lifts;
}

namespace {

// Upper envelope of the affine candidates on one edge, swept from the tail.
std::vector<SubPiece> edge_envelope(const SignOracle& oracle, const std::vector<Candidate>& cands,
                                    const std::string& edge_id, const std::string& tail,
                                    const LinForm& length) {
  struct Aff {
    int index;
    LinForm a;  // value at the tail
    Rat s;
  };
  std::vector<Aff> fs;
  for (const Candidate& c : cands) {
    auto it = c.slope.find(edge_id);
    Aff f{c.index, c.value.at(tail), it == c.slope.end() ? Rat(0) : it->second};
    bool drop = false;
    for (const Aff& g : fs)
      if (g.s == f.s && oracle.sign(g.a - f.a, WallOrigin::MaxResolution) == Sign::Zero) {
        drop = true;
        break;
      }
    if (!drop) fs.push_back(std::move(f));
  }

  auto value_at = [&](const Aff& f, const ScaledPos& x) { return f.a * Rat(x.den) + x.num * f.s; };

  // Maximal value at x, then maximal slope, then the zero function / smallest
  // index; optionally restricted to slopes above a bound.
  auto pick_at = [&](const ScaledPos& x, const Rat* min_slope) {
    int best = -1;
    for (int k = 0; k < static_cast<int>(fs.size()); ++k) {
      if (min_slope && fs[k].s <= *min_slope) continue;
      if (best < 0) {
        best = k;
        continue;
      }
      Sign s = oracle.sign(value_at(fs[k], x) - value_at(fs[best], x), WallOrigin::MaxResolution);
      if (s == Sign::Pos)
        best = k;
      else if (s == Sign::Zero &&
               (fs[k].s > fs[best].s || (fs[k].s == fs[best].s && fs[k].index < fs[best].index)))
        best = k;
    }
    return best;
  };

  std::vector<SubPiece> out;
  ScaledPos t{LinForm(length.dim()), 1};
  int cur = pick_at(t, nullptr);
  if (cur < 0) throw std::logic_error("empty candidate set on edge " + edge_id);
  while (true) {
    std::optional<ScaledPos> best_x;
    for (const Aff& g : fs) {
      if (g.s <= fs[cur].s) continue;
      Rat ds = g.s - fs[cur].s;  // integral and positive
      ScaledPos x{fs[cur].a - g.a, ds.get_num()};
      if (cmp_pos(oracle, x, t, WallOrigin::Bending) != Sign::Pos) continue;
      ScaledPos end{length, 1};
      if (cmp_pos(oracle, x, end, WallOrigin::Bending) != Sign::Neg) continue;
      if (!best_x || cmp_pos(oracle, x, *best_x, WallOrigin::Bending) == Sign::Neg) best_x = x;
    }
    SubPiece p;
    p.p0 = t.num.divided_by(t.den);
    p.v0 = fs[cur].a + p.p0 * fs[cur].s;
    p.slope = fs[cur].s;
    p.active = fs[cur].index;
    if (!best_x) {
      p.p1 = length;
      out.push_back(std::move(p));
      break;
    }
    try {
      p.p1 = best_x->num.divided_by(best_x->den);
    } catch (const DenominatorError&) {
      throw DiscrepancyError("break position on edge " + edge_id +
                             " leaves the half-integral lattice");
    }
    out.push_back(std::move(p));
    Rat cur_slope = fs[cur].s;
    t = *best_x;
    cur = pick_at(t, &cur_slope);
    if (cur < 0) throw std::logic_error("envelope sweep lost its active function on " + edge_id);
  }
  return out;
}

LambdaRegionData assemble_region(const TropCover& cover, const std::vector<AdmissibleFunction>& fns,
                                 std::vector<LiftedFunction> lifts, const Cone& region) {
  SignOracle oracle(&region);
  const TropCurve& S = cover.source();
  int dim = cover.base_dim();

  LambdaRegionData data;
  data.region = region;

  // Candidates: the zero function plus every nontrivial lift.
  std::vector<Candidate> cands;
  {
    Candidate zero;
    for (const auto& v : S.vertices()) zero.value[v.id] = LinForm(dim);
    cands.push_back(std::move(zero));
  }
  for (const LiftedFunction& lf : lifts) {
    if (lf.is_trivial()) continue;
    Candidate c;
    c.index = lf.index;
    c.value = lf.values;
    c.slope = fns[lf.index].source_function.edge_slopes;
    cands.push_back(std::move(c));
  }
  data.lifts = std::move(lifts);

  // Vertex maxima and active candidates on the original vertices.
  std::map<std::string, LinForm> vmax;
  std::map<std::string, int> vact;
  for (const auto& v : S.vertices()) {
    int best = 0;
    for (int k = 1; k < static_cast<int>(cands.size()); ++k) {
      Sign s = oracle.sign(cands[k].value.at(v.id) - cands[best].value.at(v.id),
                           WallOrigin::MaxResolution);
      if (s == Sign::Pos) best = k;
      else if (s == Sign::Zero && cands[k].index < cands[best].index)
        best = k;
    }
    vmax[v.id] = cands[best].value.at(v.id);
    vact[v.id] = cands[best].index;
  }

  // Sprout markings based at positive-level vertices: a new vertex at
  // distance lambda(base) along the leg, the leg re-based there, and every
  // candidate descending with slope 1 on the new edge.
  std::vector<GraphVertex> vs = S.vertices();
  std::vector<GraphEdge> es = S.edges();
  std::vector<GraphLeg> ls;
  for (const auto& l : S.legs()) {
    if (l.kind == LegKind::Marking && oracle.try_sign(vmax.at(l.base)) == Sign::Pos) {
      std::string tip = l.id + ".s";
      std::string eid = l.id + ".e";
      vs.push_back({tip, 0, 0});
      es.push_back({eid, l.base, tip, vmax.at(l.base)});
      ls.push_back({l.id, tip, l.kind, l.label});
      data.sprout_tip[l.id] = tip;
      for (Candidate& c : cands) {
        if (c.index < 0) {
          c.value[tip] = LinForm(dim);
        } else {
          c.value[tip] = c.value.at(l.base) - vmax.at(l.base);
          c.slope[eid] = -1;
        }
      }
      vmax[tip] = LinForm(dim);
      vact[tip] = -1;
    } else {
      ls.push_back(l);
    }
  }
  TropCurve sprouted(dim, std::move(vs), std::move(es), std::move(ls));

  // Envelope per edge.
  std::map<std::string, std::vector<SubPiece>> env;
  for (const auto& e : sprouted.edges())
    env[e.id] = edge_envelope(oracle, cands, e.id, e.tail, e.length);

  // Level classes: equality classes (on the region) of 0, the vertex maxima
  // and the break values. Vertex images need not be totally ordered — over
  // the index-two cones they genuinely are not — so classes are kept in a
  // canonical coefficient order with the zero class first.
  std::vector<LinForm> levels{LinForm(dim)};
  auto add_level = [&](const LinForm& v) {
    for (const LinForm& l : levels)
      if (oracle.try_sign(v - l) == Sign::Zero) return;
    levels.push_back(v);
  };
  for (const auto& [vid, v] : vmax) add_level(v);
  for (const auto& [eid, pieces] : env)
    for (const SubPiece& p : pieces) add_level(p.v0);
  std::sort(levels.begin() + 1, levels.end());
  auto level_index = [&](const LinForm& v) {
    for (size_t k = 0; k < levels.size(); ++k)
      if (oracle.try_sign(v - levels[k]) == Sign::Zero) return static_cast<int>(k);
    throw std::logic_error("value is not a level");
  };

  struct CutEvent {
    LinForm pos, value;
  };
  std::map<std::string, std::vector<CutEvent>> cuts;  // interior break points per edge
  std::map<std::string, std::vector<SubPiece>> fine;
  for (const auto& e : sprouted.edges()) {
    std::vector<CutEvent> ev;
    const auto& pieces = env[e.id];
    for (size_t k = 1; k < pieces.size(); ++k) ev.push_back({pieces[k].p0, pieces[k].v0});
    cuts[e.id] = std::move(ev);
    fine[e.id] = pieces;
  }

  std::vector<BreakPoint> breaks;
  for (const auto& e : sprouted.edges())
    for (const CutEvent& c : cuts[e.id]) breaks.push_back({e.id, c.pos});
  data.curve = subdivide_at_breaks(sprouted, breaks);

  // Vertex values, actives, piece records.
  data.value.clear();
  for (const auto& [vid, v] : vmax) {
    data.value[vid] = v;
    data.active[vid] = vact.at(vid);
  }
  for (const auto& e : sprouted.edges()) {
    const auto& ev = cuts[e.id];
    const auto& fp = fine[e.id];
    std::vector<std::string> piece_ids;
    if (ev.empty()) {
      piece_ids.push_back(e.id);
    } else {
      for (size_t k = 0; k < fp.size(); ++k) piece_ids.push_back(e.id + ".p" + std::to_string(k));
      for (size_t k = 0; k < ev.size(); ++k) {
        std::string vid = e.id + ".b" + std::to_string(k);
        data.value[vid] = ev[k].value;
        data.cut_vertex[vid] = {e.id, ev[k].pos};
        int a0 = fp[k].active, a1 = fp[k + 1].active;
        data.active[vid] =
            oracle.try_sign(ev[k].value) == Sign::Zero ? -1 : std::min(a0 < 0 ? a1 : a0, a1 < 0 ? a0 : a1);
      }
    }
    data.pieces_of[e.id] = piece_ids;
    for (size_t k = 0; k < fp.size(); ++k) {
      data.piece_slope[piece_ids[k]] = fp[k].slope;
      data.piece_active[piece_ids[k]] = fp[k].active;
      data.piece_span[piece_ids[k]] = {fp[k].p0, fp[k].p1};
    }
    // consistency: the envelope must meet the vertex maxima at both ends
    const SubPiece& last = fp.back();
    LinForm vend = last.v0 + (last.p1 - last.p0) * last.slope;
    if (oracle.try_sign(vend - vmax.at(e.head)) != Sign::Zero ||
        oracle.try_sign(fp.front().v0 - vmax.at(e.tail)) != Sign::Zero)
      throw std::logic_error("edge envelope does not match vertex maxima on " + e.id);
  }

  data.levels = levels;
  for (const auto& [vid, v] : data.value) data.vertex_level[vid] = level_index(v);
  return data;
}

}  // namespace

LambdaRegionData lambda_max(const TropCover& cover, const std::vector<AdmissibleFunction>& fns,
                            const Cone& region) {
  SignOracle oracle(&region);
  std::vector<LiftedFunction> lifts = lift_all(cover, fns, oracle);
  return assemble_region(cover, fns, std::move(lifts), region);
}

LambdaRegionData specialize(const TropCover& cover, const std::vector<AdmissibleFunction>& fns,
                            const LambdaRegionData& data, const Cone& face) {
  if (!cone_contains_cone(data.region, face))
    throw std::invalid_argument("specialize: the given cone is not a face of the region");
  SignOracle oracle(&face);
  std::vector<LiftedFunction> lifts = data.lifts;  // keep the stored zero shifts
  for (LiftedFunction& lf : lifts) {
    if (lf.no_valid_lift) continue;
    bool all_nonpos = true;
    for (const auto& [v, val] : lf.values) {
      Sign s = oracle.try_sign(val);
      if (s == Sign::Pos || s == Sign::Mixed) all_nonpos = false;
    }
    lf.nonpositive = all_nonpos;
    lf.dominated = false;
  }
  for (size_t i = 0; i < lifts.size(); ++i) {
    if (lifts[i].is_trivial()) continue;
    for (size_t j = 0; j < lifts.size(); ++j) {
      if (i == j || lifts[j].no_valid_lift || lifts[j].nonpositive) continue;
      bool le = true, eq = true;
      for (const auto& [v, val] : lifts[i].values) {
        Sign s = oracle.try_sign(lifts[j].values.at(v) - val);
        if (s == Sign::Neg || s == Sign::Mixed) {
          le = false;
          break;
        }
        if (s != Sign::Zero) eq = false;
      }
      if (le && (!eq || j < i)) {
        lifts[i].dominated = true;
        break;
      }
    }
  }
  return assemble_region(cover, fns, std::move(lifts), face);
}

PLFunction region_function_on_original(const TropCover& cover, const LambdaRegionData& data) {
  PLFunction pl;
  pl.curve = &cover.source();
  for (const auto& v : cover.source().vertices()) pl.vertex_values[v.id] = data.value.at(v.id);
  for (const auto& e : cover.source().edges()) {
    const auto& ids = data.pieces_of.at(e.id);
    pl.edge_slopes[e.id] = data.piece_slope.at(ids.front());
    Rat prev = pl.edge_slopes[e.id];
    std::vector<EdgeBreak> bs;
    for (size_t k = 1; k < ids.size(); ++k) {
      Rat s = data.piece_slope.at(ids[k]);
      if (s != prev) bs.push_back({data.piece_span.at(ids[k]).first, s});
      prev = s;
    }
    if (!bs.empty()) pl.edge_breaks[e.id] = std::move(bs);
  }
  for (const auto& l : cover.source().legs())
    if (l.kind == LegKind::Marking)
      pl.leg_slopes[l.id] = data.sprout_tip.count(l.id) ? Rat(1) : Rat(0);
  return pl;
}

LambdaRegionData refeed_lambda(const LambdaRegionData& data) {
  // Treat lambda itself as the only candidate on its own subdivided curve.
  SignOracle oracle(&data.region);
  std::vector<Candidate> cands;
  int dim = data.region.ambient_dim;
  {
    Candidate zero;
    for (const auto& v : data.curve.vertices()) zero.value[v.id] = LinForm(dim);
    cands.push_back(std::move(zero));
  }
  Candidate lam;
  lam.index = 0;
  lam.value = data.value;
  for (const auto& e : data.curve.edges()) lam.slope[e.id] = data.piece_slope.at(e.id);
  cands.push_back(std::move(lam));

  LambdaRegionData out;
  out.region = data.region;
  out.curve = data.curve;
  std::map<std::string, std::vector<SubPiece>> env;
  for (const auto& e : data.curve.edges()) {
    auto pieces = edge_envelope(oracle, cands, e.id, e.tail, e.length);
    if (pieces.size() != 1)
      throw std::logic_error("lambda re-fed to the envelope produced a new break on " + e.id);
    out.pieces_of[e.id] = {e.id};
    out.piece_slope[e.id] = pieces.front().slope;
    out.piece_active[e.id] = pieces.front().active;
    out.piece_span[e.id] = {pieces.front().p0, pieces.front().p1};
  }
  out.value = data.value;
  out.levels = data.levels;
  out.vertex_level = data.vertex_level;
  return out;
}

std::string LambdaRegionData::combinatorial_type() const {
  // Metric-free: the level classes are renumbered by first appearance in the
  // canonical traversal, the zero class is marked 'z', and each piece records
  // its bounding classes and slope.
  std::set<std::string> synthetic;
  for (const auto& [vid, src] : cut_vertex) {
    (void)src;
    synthetic.insert(vid);
  }
  for (const auto& [leg, tip] : sprout_tip) {
    (void)leg;
    synthetic.insert(tip);
  }
  std::map<int, std::string> renumber{{0, "z"}};
  int next = 0;
  auto cls = [&](int level) {
    auto it = renumber.find(level);
    if (it != renumber.end()) return it->second;
    std::string name = "c" + std::to_string(next++);
    renumber[level] = name;
    return name;
  };
  std::ostringstream os;
  os << "L" << levels.size() << "|";
  for (const auto& [vid, lvl] : vertex_level) {
    if (synthetic.count(vid)) continue;
    os << "v " << vid << "=" << cls(lvl) << ";";
  }
  for (const auto& [eid, ids] : pieces_of) {
    os << "e " << eid << ":";
    for (const std::string& pid : ids) {
      const GraphEdge& pe = curve.edge(pid);
      os << "(" << cls(vertex_level.at(pe.tail)) << "," << cls(vertex_level.at(pe.head)) << ","
         << piece_slope.at(pid).get_str() << ")";
    }
    os << ";";
  }
  return os.str();
}

}  // namespace tvz
