#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace tvz;
using namespace tvz::testing;

namespace {

// Independent oracle for the admissible functions: enumerate all slope
// assignments on the target edges (integral, half-integral exactly on
// expansion-two edges, bounded) and keep those whose divisor via the
// valence/branch-leg formula is effective of degree one supported at a
// vertex. Returns (support, slope map) pairs.
std::vector<std::pair<std::string, std::map<std::string, Rat>>> brute_admissible(
    const TropCover& cover, int bound) {
  const TropCurve& T = cover.target();
  Divisor korb = orbifold_canonical(cover);
  std::vector<std::string> eids;
  for (const auto& e : T.edges()) eids.push_back(e.id);
  std::vector<std::vector<Rat>> candidates;
  for (const std::string& e : eids) {
    std::vector<Rat> c;
    int den = cover.target_edge_expansion(e) == 2 ? 2 : 1;
    for (int k = -bound * den; k <= bound * den; ++k) c.push_back(rat(k, den));
    candidates.push_back(std::move(c));
  }
  std::vector<std::pair<std::string, std::map<std::string, Rat>>> out;
  std::vector<size_t> idx(eids.size(), 0);
  while (true) {
    std::map<std::string, Rat> slopes;
    for (size_t i = 0; i < eids.size(); ++i) slopes[eids[i]] = candidates[i][idx[i]];
    // D(v) = K_orb(v) + sum of outgoing slopes + (marking legs contribute -1,
    // already balanced against the valence inside K_orb)
    std::map<std::string, Rat> D;
    for (const auto& v : T.vertices()) D[v.id] = korb.at(v.id);
    int marking_legs = 0;
    for (const auto& l : T.legs())
      if (l.kind == LegKind::Marking) {
        D[l.base] -= 1;
        ++marking_legs;
      }
    for (const auto& e : T.edges()) {
      D[e.tail] += slopes[e.id];
      D[e.head] -= slopes[e.id];
    }
    bool eff = true;
    Rat deg = 0;
    std::string support;
    for (const auto& [v, d] : D) {
      if (d < 0 || !is_integer(d * 1)) { }
      if (d < 0) eff = false;
      deg += d;
      if (d > 0) support = support.empty() ? v : "MULTI";
    }
    if (eff && deg == 1 && support != "MULTI" && !support.empty()) {
      // integrality of the pullback: source slope = expansion * target slope
      bool integral = true;
      for (const auto& se : cover.source().edges()) {
        Rat s = slopes[cover.edge_image(se.id)] * rat(cover.expansion(se.id));
        if (!is_integer(s)) integral = false;
      }
      if (integral) out.push_back({support, slopes});
    }
    // advance odometer
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == candidates[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
    if (idx.empty()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::multiset<Rat> abs_slopes(const AdmissibleFunction& f) {
  std::multiset<Rat> s;
  for (const auto& [e, v] : f.source_function.edge_slopes) s.insert(abs(v));
  return s;
}

}  // namespace

TEST_CASE("enumerate matches the brute-force oracle on the dumbbell cover") {
  TropCover c = load_fixture("dumbbell");
  auto fns = enumerate_admissible(c);
  auto oracle = brute_admissible(c, 6);
  REQUIRE(fns.size() == c.target().vertices().size());
  REQUIRE(oracle.size() == fns.size());
  for (size_t i = 0; i < fns.size(); ++i) {
    CHECK(fns[i].support == oracle[i].first);
    for (const auto& [e, s] : oracle[i].second) {
      // stored slope runs tail -> head; the oracle uses the same convention
      CHECK(fns[i].target_shadow.edge_slopes.at(e) == s);
    }
  }
}

TEST_CASE("enumerate matches the oracle on the marked chain cover") {
  TropCover c = load_fixture("chain");
  auto fns = enumerate_admissible(c);
  auto oracle = brute_admissible(c, 6);
  REQUIRE(fns.size() == oracle.size());
  for (size_t i = 0; i < fns.size(); ++i) CHECK(fns[i].support == oracle[i].first);
}

TEST_CASE("the core-with-two-tails cover has exactly three admissible functions") {
  TropCover c = load_fixture("exa1");
  auto fns = enumerate_admissible(c);
  REQUIRE(fns.size() == 3);
  CHECK(fns[0].support == "c");
  CHECK(fns[1].support == "t");
  CHECK(fns[2].support == "w");
  // slope labels (1; 2,2,1; 1,1,3) on the source
  CHECK(abs_slopes(fns[0]) == std::multiset<Rat>{rat(1), rat(1), rat(1)});
  CHECK(abs_slopes(fns[1]) == std::multiset<Rat>{rat(2), rat(2), rat(1)});
  CHECK(abs_slopes(fns[2]) == std::multiset<Rat>{rat(1), rat(1), rat(3)});
  for (const auto& f : fns) CHECK(check_admissible(c, f).empty());
  // single-vertex cover: exactly one admissible function, the constant
  TropCover s = load_fixture("single");
  auto sf = enumerate_admissible(s);
  REQUIRE(sf.size() == 1);
  CHECK(sf[0].source_function.vertex_values.at("O").is_zero());
}

TEST_CASE("positive-weight cores admit exactly one nontrivial lift") {
  for (const std::string name : {"exa2a", "exa2b"}) {
    TropCover c = load_fixture(name);
    auto fns = enumerate_admissible(c);
    Fan fan = build_alignment_fan(c, fns);
    std::set<std::string> nontrivial_supports;
    for (const FanCone& fc : fan.maximal) {
      int count = 0;
      for (const LiftedFunction& lf : fc.lambda.lifts)
        if (!lf.is_trivial()) {
          ++count;
          nontrivial_supports.insert(lf.support);
        }
      CHECK(count == 1);
    }
    CHECK(nontrivial_supports.size() == 1);
    CHECK(*nontrivial_supports.begin() == (name == "exa2a" ? "c" : "v1"));
  }
}

TEST_CASE("single-vertex covers lift trivially; low weight reports no valid lift") {
  TropCover c = load_fixture("single");
  auto fns = enumerate_admissible(c);
  Fan fan = build_alignment_fan(c, fns);
  REQUIRE(fan.maximal.size() == 1);
  CHECK(fan.maximal[0].lambda.lifts[0].is_trivial());

  // the same cover with weight two: the exception clause finds no threshold
  CoverDocument doc = parse_cover_document(R"({
    "target": {"vertices": [{"id": "c"}], "edges": [],
      "legs": [
        {"id": "b1", "base": "c", "kind": "branch"},
        {"id": "b2", "base": "c", "kind": "branch"},
        {"id": "b3", "base": "c", "kind": "branch"},
        {"id": "b4", "base": "c", "kind": "branch"},
        {"id": "b5", "base": "c", "kind": "branch"},
        {"id": "b6", "base": "c", "kind": "branch"}]},
    "vertices": [{"id": "O", "genus": 2, "weight": 2, "target_vertex": "c"}],
    "edges": [], "legs": []})");
  TropCover c2 = cover_from_document(doc);
  auto fns2 = enumerate_admissible(c2);
  Fan fan2 = build_alignment_fan(c2, fns2);
  REQUIRE(fan2.maximal.size() == 1);
  CHECK(fan2.maximal[0].lambda.lifts[0].no_valid_lift);
  CHECK(fan2.maximal[0].lambda.lifts[0].is_trivial());
}

TEST_CASE("interpolation break on the expansion-two middle edge") {
  // over the central Kummer cone the bend sits at (l1 - l2 + m)/2 from E1 at
  // level (l1 + l2 - m)/2, matching the half-integral-length figure
  TropCover c = load_fixture("esesub3");
  auto fns = enumerate_admissible(c);
  Fan fan = build_alignment_fan(c, fns);

  int e1 = c.coordinate_of("e1"), e2 = c.coordinate_of("e2"), em = c.coordinate_of("em");
  std::vector<Rat> center(3, Rat(0));
  center[e1] = 1;
  center[e2] = 1;
  center[em] = 1;
  const FanCone* central = nullptr;
  for (const FanCone& fc : fan.maximal)
    if (fc.cone.contains(center) && sign_on(fc.cone, LinForm::coordinate(3, e1) +
                                                         LinForm::coordinate(3, e2) -
                                                         LinForm::coordinate(3, em)) == Sign::Pos)
      central = &fc;
  REQUIRE(central != nullptr);
  const auto& ids = central->lambda.pieces_of.at("sm");
  REQUIRE(ids.size() == 2);
  LinForm expect_pos = (LinForm::coordinate(3, e1) - LinForm::coordinate(3, e2) +
                        LinForm::coordinate(3, em)).divided_by(Int(2));
  // sm is stored E1 -> E2; position measured from E1
  CHECK(central->lambda.piece_span.at(ids[0]).second == expect_pos);
  LinForm expect_level = (LinForm::coordinate(3, e1) + LinForm::coordinate(3, e2) -
                          LinForm::coordinate(3, em)).divided_by(Int(2));
  const GraphEdge& p1 = central->lambda.curve.edge(ids[1]);
  CHECK(central->lambda.value.at(p1.tail) == expect_level);
  // the bend vertex is the support of the corrected canonical divisor
  Divisor kd = corrected_canonical(*central);
  CHECK(kd.at(p1.tail) == rat(2));
}

TEST_CASE("lambda agrees with the numeric oracle on every cone of every fixture") {
  for (const std::string name :
       {"exa1", "exa2a", "exa2b", "esesub3", "esesub2b", "esesub2c", "single", "dumbbell", "theta",
        "chain"}) {
    TropCover c = load_fixture(name);
    auto fns = enumerate_admissible(c);
    Fan fan = build_alignment_fan(c, fns);
    for (const FanCone& fc : fan.maximal) {
      std::vector<Rat> x = interior_point(fc.cone);
      std::string err = compare_with_oracle(c, fns, fc, x);
      INFO(name << ": " << err);
      CHECK(err.empty());
      // second, asymmetric interior point
      if (!fc.cone.rays.empty()) {
        std::vector<Rat> y = x;
        for (int i = 0; i < fc.cone.ambient_dim; ++i) y[i] += Rat(fc.cone.rays[0][i]);
        std::string err2 = compare_with_oracle(c, fns, fc, y);
        INFO(name << " (second point): " << err2);
        CHECK(err2.empty());
      }
    }
  }
}

TEST_CASE("lambda re-fed to the envelope reproduces itself") {
  for (const std::string name : {"exa1", "esesub3", "esesub2c", "chain"}) {
    TropCover c = load_fixture(name);
    auto fns = enumerate_admissible(c);
    Fan fan = build_alignment_fan(c, fns);
    for (const FanCone& fc : fan.maximal) {
      LambdaRegionData again = refeed_lambda(fc.lambda);
      for (const auto& [v, val] : fc.lambda.value) CHECK(again.value.at(v) == val);
      for (const auto& e : fc.lambda.curve.edges()) {
        CHECK(again.pieces_of.at(e.id).size() == 1);
        CHECK(again.piece_slope.at(e.id) == fc.lambda.piece_slope.at(e.id));
      }
    }
  }
}

TEST_CASE("lambda is nonnegative and dominates every lift, with certificates") {
  TropCover c = load_fixture("exa1");
  auto fns = enumerate_admissible(c);
  Fan fan = build_alignment_fan(c, fns);
  for (const FanCone& fc : fan.maximal) {
    for (const auto& [v, val] : fc.lambda.value) {
      auto cert = farkas_certificate(fc.cone, val);
      REQUIRE(cert.has_value());
      LinForm sum(val.dim());
      for (size_t i = 0; i < fc.cone.ineqs.size(); ++i) sum += fc.cone.ineqs[i] * (*cert)[i];
      CHECK(sum == val);
    }
    for (const LiftedFunction& lf : fc.lambda.lifts) {
      if (lf.is_trivial()) continue;
      for (const auto& [v, lval] : lf.values) {
        LinForm gap = fc.lambda.value.at(v) - lval;
        CHECK(farkas_certificate(fc.cone, gap).has_value());
      }
    }
  }
}

TEST_CASE("specialization to faces equals recomputation on the contracted cover") {
  for (const std::string name : {"exa1", "esesub3"}) {
    TropCover c = load_fixture(name);
    auto fns = enumerate_admissible(c);
    Fan fan = build_alignment_fan(c, fns);
    for (const FanCone& fc : fan.maximal) {
      // identity specialization
      LambdaRegionData self = specialize(c, fns, fc.lambda, fc.cone);
      for (const auto& [v, val] : fc.lambda.value) CHECK(self.value.at(v) == val);

      for (const LinForm& facet : fc.cone.ineqs) {
        Cone face = face_of(fc.cone, facet);
        if (face.rays.empty()) continue;
        LambdaRegionData spec = specialize(c, fns, fc.lambda, face);

        std::map<std::string, std::string> collapse;
        TropCover contracted = contract_on_face(c, face, &collapse);
        auto fns2 = enumerate_admissible(contracted);
        // the face in the contracted coordinates
        std::map<std::string, int> old_coord;
        for (const std::string& n : c.coordinate_names()) old_coord[n] = c.coordinate_of(n);
        std::vector<std::vector<Int>> new_rays;
        for (const auto& r : face.rays) {
          std::vector<Int> nr;
          for (const std::string& n : contracted.coordinate_names()) nr.push_back(r[old_coord[n]]);
          new_rays.push_back(nr);
        }
        // sign queries read only the rays, so a bare ray-cone is enough here
        Cone new_face;
        new_face.ambient_dim = contracted.base_dim();
        new_face.rays = new_rays;
        std::sort(new_face.rays.begin(), new_face.rays.end());
        LambdaRegionData rec = lambda_max(contracted, fns2, new_face);

        // values agree on every original vertex, at every ray of the face
        for (const auto& v : c.source().vertices()) {
          const LinForm& a = spec.value.at(v.id);
          const LinForm& b = rec.value.at(collapse.at(v.id));
          for (size_t k = 0; k < face.rays.size(); ++k)
            CHECK(a.eval_ray(face.rays[k]) == b.eval_ray(new_rays[k]));
        }
      }
    }
  }
}

TEST_CASE("markings sprout to the boundary of the support") {
  TropCover c = load_fixture("chain");
  auto fns = enumerate_admissible(c);
  Fan fan = build_alignment_fan(c, fns);
  bool sprouted_somewhere = false;
  for (const FanCone& fc : fan.maximal) {
    Sign s = sign_on(fc.cone, fc.lambda.value.at("M"));
    if (s == Sign::Pos) {
      // both markings at M sprout, independently
      REQUIRE(fc.lambda.sprout_tip.count("x0a"));
      REQUIRE(fc.lambda.sprout_tip.count("x0b"));
      CHECK(fc.lambda.sprout_tip.at("x0a") != fc.lambda.sprout_tip.at("x0b"));
      sprouted_somewhere = true;
      // the sprout edge has length lambda(M) and the tip sits at level zero
      const std::string tip = fc.lambda.sprout_tip.at("x0a");
      CHECK(fc.lambda.curve.edge("x0a.e").length == fc.lambda.value.at("M"));
      CHECK(fc.lambda.vertex_level.at(tip) == 0);
      // the marking leg is re-based at the tip
      CHECK(fc.lambda.curve.leg("x0a").base == tip);
    } else {
      CHECK(!fc.lambda.sprout_tip.count("x0a"));
    }
  }
  CHECK(sprouted_somewhere);
}
