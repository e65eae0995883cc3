#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tvz/trop_graph.hpp"

using namespace tvz;

namespace {

LinForm coord(int dim, int k) { return LinForm::coordinate(dim, k); }

// brute-force oracle: valence by direct end counting, K = val + 2g - 2
int brute_valence(const TropCurve& c, const std::string& v) {
  int n = 0;
  for (const auto& e : c.edges()) n += (e.tail == v) + (e.head == v);
  for (const auto& l : c.legs()) n += (l.base == v);
  return n;
}

}  // namespace

TEST_CASE("canonical divisor on the basic graphs") {
  // single vertex of genus two
  TropCurve single(0, {{"v", 2, 0}}, {}, {});
  CHECK(canonical_divisor(single).at("v") == rat(2));

  // theta graph: two vertices, three parallel edges
  TropCurve theta(1, {{"u", 0, 0}, {"v", 0, 0}},
                  {{"a", "u", "v", coord(1, 0)},
                   {"b", "u", "v", coord(1, 0)},
                   {"c", "u", "v", coord(1, 0)}},
                  {});
  Divisor kt = canonical_divisor(theta);
  CHECK(kt.at("u") == rat(1));
  CHECK(kt.at("v") == rat(1));
  CHECK(theta.genus() == 2);

  // dumbbell: one bridge, one loop at each end
  TropCurve dumbbell(2, {{"u", 0, 0}, {"v", 0, 0}},
                     {{"lu", "u", "u", coord(2, 0)},
                      {"m", "u", "v", coord(2, 1)},
                      {"lv", "v", "v", coord(2, 0)}},
                     {});
  Divisor kd = canonical_divisor(dumbbell);
  for (const auto& v : dumbbell.vertices())
    CHECK(kd.at(v.id) == rat(2 * v.genus - 2 + brute_valence(dumbbell, v.id)));
  CHECK(kd.at("u") == rat(1));
  CHECK(kd.at("v") == rat(1));
  CHECK(dumbbell.genus() == 2);

  // degree formula: deg K = 2 genus - 2 + #legs
  TropCurve legged(1, {{"u", 1, 0}, {"v", 0, 0}}, {{"e", "u", "v", coord(1, 0)}},
                   {{"x", "v", LegKind::Marking, ""}, {"y", "v", LegKind::Marking, ""}});
  CHECK(canonical_divisor(legged).degree() == rat(2 * legged.genus() - 2 + 2));
}

TEST_CASE("divisor of a PL function") {
  TropCurve seg(1, {{"u", 0, 0}, {"v", 0, 0}}, {{"e", "u", "v", coord(1, 0)}}, {});
  PLFunction pl;
  pl.curve = &seg;
  pl.vertex_values["u"] = LinForm(1);
  pl.vertex_values["v"] = coord(1, 0);
  pl.edge_slopes["e"] = 1;
  Divisor d = divisor_of(pl);
  CHECK(d.at("u") == rat(1));
  CHECK(d.at("v") == rat(-1));
  CHECK(d.degree() == 0);

  // constant function: zero divisor
  PLFunction c;
  c.curve = &seg;
  c.vertex_values["u"] = LinForm(1);
  c.vertex_values["v"] = LinForm(1);
  c.edge_slopes["e"] = 0;
  CHECK(divisor_of(c).at("u") == 0);
  CHECK(divisor_of(c).at("v") == 0);

  // theta with slopes (1,1,-2): bending forced into the edge data
  TropCurve theta(1, {{"u", 0, 0}, {"v", 0, 0}},
                  {{"a", "u", "v", coord(1, 0)},
                   {"b", "u", "v", coord(1, 0)},
                   {"c", "u", "v", coord(1, 0)}},
                  {});
  PLFunction t;
  t.curve = &theta;
  t.vertex_values["u"] = LinForm(1);
  t.vertex_values["v"] = coord(1, 0);
  t.edge_slopes["a"] = 1;
  t.edge_slopes["b"] = 1;
  t.edge_slopes["c"] = -2;
  // slope -2 over full length is incompatible with rise +l; add a break
  t.edge_breaks["c"] = {{coord(1, 0) * rat(1, 2), rat(4)}};  // -2 then +4: rise -l + 2l = l
  CHECK(t.check_compatibility().empty());
  Divisor dt = divisor_of(t);
  // brute force: outgoing slopes at u: 1 + 1 - 2 = 0; at v: -1 - 1 - 4 = -6... sign fixed
  CHECK(dt.at("u") == rat(0));
  CHECK(dt.at("v") == rat(-6));

  // inconsistent slopes are rejected
  PLFunction bad = pl;
  bad.edge_slopes["e"] = 2;
  CHECK_THROWS_AS(divisor_of(bad), std::invalid_argument);
}

TEST_CASE("telescoping: total divisor balances leg flux on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<GraphVertex> vs;
    for (int i = 0; i < n; ++i) vs.push_back({"v" + std::to_string(i), int(rng() % 3), 0});
    std::vector<GraphEdge> es;
    int dim = 1;
    for (int i = 1; i < n; ++i)
      es.push_back({"e" + std::to_string(i), "v" + std::to_string(rng() % i), "v" + std::to_string(i),
                    LinForm::coordinate(dim, 0)});
    // an extra edge for a cycle
    if (n > 2)
      es.push_back({"x", "v0", "v" + std::to_string(n - 1), LinForm::coordinate(dim, 0)});
    std::vector<GraphLeg> ls;
    int nl = static_cast<int>(rng() % 3);
    for (int i = 0; i < nl; ++i)
      ls.push_back({"l" + std::to_string(i), "v" + std::to_string(rng() % n), LegKind::Marking, ""});
    TropCurve g(dim, vs, es, ls);

    // random PL function: all lengths share one coordinate, so values that
    // are integer multiples of it are compatible with integer slopes
    PLFunction pl;
    pl.curve = &g;
    std::map<std::string, long> height;
    for (const auto& v : g.vertices()) {
      height[v.id] = static_cast<long>(rng() % 9) - 4;
      pl.vertex_values[v.id] = LinForm::coordinate(dim, 0) * rat(height[v.id]);
    }
    for (const auto& e : g.edges()) pl.edge_slopes[e.id] = rat(height[e.head] - height[e.tail]);
    REQUIRE(pl.check_compatibility().empty());
    for (const auto& l : g.legs()) pl.leg_slopes[l.id] = rat(static_cast<long>(rng() % 5) - 2);

    Divisor d = divisor_of(pl);
    Rat leg_flux = 0;
    for (const auto& [id, s] : pl.leg_slopes) leg_flux += s;
    CHECK(d.degree() + leg_flux == 0);
  }
}

TEST_CASE("bending locus and subdivision") {
  TropCurve seg(2, {{"u", 0, 0}, {"v", 1, 2}}, {{"e", "u", "v", coord(2, 0)}},
                {{"x", "v", LegKind::Marking, ""}});
  Cone base = orthant(2);

  // linear function: empty bending locus
  PLFunction lin;
  lin.curve = &seg;
  lin.vertex_values["u"] = LinForm(2);
  lin.vertex_values["v"] = coord(2, 0) * rat(2);
  lin.edge_slopes["e"] = 2;
  CHECK(bending_locus(lin, &base).empty());
  TropCurve same = subdivide_at_breaks(seg, bending_locus(lin, &base));
  CHECK(same.vertices().size() == seg.vertices().size());
  CHECK(same.edges().size() == seg.edges().size());

  // slope sequence (1, 0) with a break at l/2
  PLFunction bent;
  bent.curve = &seg;
  bent.vertex_values["u"] = LinForm(2);
  bent.vertex_values["v"] = coord(2, 0) * rat(1, 2);
  bent.edge_slopes["e"] = 1;
  bent.edge_breaks["e"] = {{coord(2, 0) * rat(1, 2), rat(0)}};
  CHECK(bent.check_compatibility().empty());
  auto breaks = bending_locus(bent, &base);
  REQUIRE(breaks.size() == 1);
  CHECK(breaks[0].edge_id == "e");
  CHECK(breaks[0].position == coord(2, 0) * rat(1, 2));

  std::map<std::string, std::string> back;
  TropCurve sub = subdivide_at_breaks(seg, breaks, &back);
  CHECK(sub.vertices().size() == 3);
  CHECK(sub.edges().size() == 2);
  CHECK(sub.genus() == seg.genus());
  // length additivity per original edge
  LinForm total(2);
  for (const auto& e : sub.edges()) {
    CHECK(back.at(e.id) == "e");
    total += e.length;
  }
  CHECK(total == seg.edge("e").length);
  // inserted vertex has genus and weight zero, deterministic id
  CHECK(sub.vertex("e.b0").genus == 0);
  CHECK(sub.vertex("e.b0").weight == 0);

  // rejected: break beyond the edge length
  PLFunction bad = bent;
  bad.edge_breaks["e"] = {{coord(2, 0) * rat(2), rat(0)}};
  CHECK_THROWS_AS(bending_locus(bad, &base), std::invalid_argument);
  // rejected: spurious break without slope change
  PLFunction spurious = bent;
  spurious.edge_breaks["e"] = {{coord(2, 0) * rat(1, 2), rat(1)}};
  CHECK_THROWS_AS(bending_locus(spurious, &base), std::invalid_argument);
}
