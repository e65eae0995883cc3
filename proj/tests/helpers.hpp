#pragma once

#include <fstream>
#include <random>
#include <sstream>

#include "tvz/io.hpp"
#include "tvz/pipeline.hpp"
#include "tvz/sample.hpp"

namespace tvz::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name + ".json";
}

inline TropCover load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream os;
  os << in.rdbuf();
  return cover_from_document(parse_cover_document(os.str()));
}

// ----- point-evaluation oracle ---------------------------------------------
// Everything the symbolic pipeline computes can be recomputed numerically at
// a rational base point: the lifts become numbers and the envelope on each
// edge is a one-dimensional maximum. Independent of the cone machinery.

struct PointFunction {
  std::map<std::string, Rat> value;          // per source vertex
  std::map<std::string, Rat> slope;          // per source edge, tail -> head
};

struct PointBreak {
  Rat position;
  Rat level;
};

struct PointLambda {
  std::map<std::string, Rat> value;                       // at original vertices
  std::map<std::string, std::vector<PointBreak>> breaks;  // per edge, increasing positions
};

// Numeric lift of one admissible function at a base point, following the
// normalization rule verbatim; nullopt when no threshold satisfies the
// weight constraints.
inline std::optional<PointFunction> lift_at_point(const TropCover& cover,
                                                  const AdmissibleFunction& f,
                                                  const std::vector<Rat>& x) {
  std::vector<std::pair<std::string, Rat>> pos;
  for (const auto& v : cover.source().vertices())
    if (v.weight > 0) pos.push_back({v.id, f.source_function.vertex_values.at(v.id).eval(x)});
  if (pos.empty()) return std::nullopt;
  auto vmax = pos.front().second;
  std::string argmax = pos.front().first;
  int max_count = 0;
  for (const auto& [v, val] : pos)
    if (val > vmax) {
      vmax = val;
      argmax = v;
    }
  for (const auto& [v, val] : pos)
    if (val == vmax) ++max_count;

  bool exceptional = false;
  if (max_count == 1) {
    const GraphVertex& v = cover.source().vertex(argmax);
    bool supports = f.D.at(cover.vertex_image(v.id)) > 0;
    exceptional = (v.genus == 2 && v.weight <= 2 && supports) || (v.genus == 1 && v.weight <= 1) ||
                  (v.genus == 0 && v.weight <= 2 && supports);
  }
  std::optional<Rat> shift;
  if (!exceptional) {
    shift = vmax;
  } else {
    std::vector<Rat> thresholds;
    for (const auto& [v, val] : pos) thresholds.push_back(val);
    std::sort(thresholds.rbegin(), thresholds.rend());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    for (const Rat& c : thresholds) {
      int strict = 0, weak = 0;
      for (const auto& [v, val] : pos) {
        int w = cover.source().vertex(v).weight;
        if (val > c) strict += w;
        if (val >= c) weak += w;
      }
      if (strict <= 2 && weak >= 3) {
        shift = c;
        break;
      }
    }
  }
  if (!shift) return std::nullopt;
  PointFunction out;
  for (const auto& v : cover.source().vertices())
    out.value[v.id] = f.source_function.vertex_values.at(v.id).eval(x) - *shift;
  for (const auto& e : cover.source().edges()) out.slope[e.id] = f.source_function.edge_slopes.at(e.id);
  return out;
}

// lambda = max{0, lifts} at a base point, with one-dimensional envelopes on
// the edges computed by direct slope sweeps over exact rationals.
inline PointLambda lambda_at_point(const TropCover& cover, const std::vector<AdmissibleFunction>& fns,
                                   const std::vector<Rat>& x) {
  std::vector<PointFunction> lifts;
  for (const auto& f : fns) {
    auto l = lift_at_point(cover, f, x);
    if (l) lifts.push_back(std::move(*l));
  }
  PointLambda out;
  for (const auto& v : cover.source().vertices()) {
    Rat m = 0;
    for (const auto& l : lifts) m = std::max(m, l.value.at(v.id));
    out.value[v.id] = m;
  }
  for (const auto& e : cover.source().edges()) {
    Rat len = e.length.eval(x);
    struct Aff {
      Rat a, s;
    };
    std::vector<Aff> fs{{Rat(0), Rat(0)}};
    for (const auto& l : lifts) fs.push_back({l.value.at(e.tail), l.slope.at(e.id)});
    // envelope sweep
    auto value_at = [&](const Aff& f, const Rat& t) -> Rat { return f.a + f.s * t; };
    int cur = 0;
    for (int k = 1; k < static_cast<int>(fs.size()); ++k)
      if (value_at(fs[k], 0) > value_at(fs[cur], 0) ||
          (value_at(fs[k], 0) == value_at(fs[cur], 0) && fs[k].s > fs[cur].s))
        cur = k;
    Rat t = 0;
    std::vector<PointBreak> bs;
    while (true) {
      std::optional<Rat> best;
      int next = -1;
      for (int k = 0; k < static_cast<int>(fs.size()); ++k) {
        if (fs[k].s <= fs[cur].s) continue;
        Rat cx = (fs[cur].a - fs[k].a) / (fs[k].s - fs[cur].s);
        if (cx <= t || cx >= len) continue;
        if (!best || cx < *best || (cx == *best && fs[k].s > fs[next].s)) {
          best = cx;
          next = k;
        }
      }
      if (!best) break;
      bs.push_back({*best, value_at(fs[cur], *best)});
      t = *best;
      cur = next;
    }
    if (!bs.empty()) out.breaks[e.id] = std::move(bs);
  }
  return out;
}

inline std::vector<Rat> interior_point(const Cone& c) { return c.interior_sample(); }

// Compares the symbolic region data against the numeric oracle at a point of
// the region; returns a description of the first mismatch, empty if none.
inline std::string compare_with_oracle(const TropCover& cover,
                                       const std::vector<AdmissibleFunction>& fns,
                                       const FanCone& fc, const std::vector<Rat>& x) {
  PointLambda oracle = lambda_at_point(cover, fns, x);
  for (const auto& v : cover.source().vertices()) {
    Rat sym = fc.lambda.value.at(v.id).eval(x);
    if (sym != oracle.value.at(v.id))
      return "value mismatch at " + v.id + ": " + rat_str(sym) + " vs " +
             rat_str(oracle.value.at(v.id));
  }
  for (const auto& e : cover.source().edges()) {
    std::vector<PointBreak> sym;
    const auto& ids = fc.lambda.pieces_of.at(e.id);
    for (size_t k = 1; k < ids.size(); ++k) {
      Rat p = fc.lambda.piece_span.at(ids[k]).first.eval(x);
      Rat prev_slope = fc.lambda.piece_slope.at(ids[k - 1]);
      Rat next_slope = fc.lambda.piece_slope.at(ids[k]);
      if (prev_slope == next_slope) continue;  // class subdivision point, not a bend
      const GraphEdge& pe = fc.lambda.curve.edge(ids[k]);
      Rat lv = fc.lambda.value.at(pe.tail).eval(x);
      sym.push_back({p, lv});
    }
    auto it = oracle.breaks.find(e.id);
    size_t want = it == oracle.breaks.end() ? 0 : it->second.size();
    if (sym.size() != want)
      return "break count mismatch on " + e.id + ": " + std::to_string(sym.size()) + " vs " +
             std::to_string(want);
    for (size_t k = 0; k < want; ++k) {
      if (sym[k].position != it->second[k].position || sym[k].level != it->second[k].level)
        return "break mismatch on " + e.id;
    }
  }
  return "";
}

inline std::vector<TropCover> random_covers(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TropCover> out;
  while (static_cast<int>(out.size()) < count) {
    auto c = sample_cover(rng);
    if (c) out.push_back(std::move(*c));
  }
  return out;
}

}  // namespace tvz::testing
