#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace tvz;
using namespace tvz::testing;

TEST_CASE("single smooth hyperelliptic vertex validates") {
  TropCover c = load_fixture("single");
  ValidationReport r = validate(c);
  CHECK(r.pass());
  // orbifold canonical: 0 - 2 + 6/2 = 1 at the only vertex, degree 1
  Divisor k = orbifold_canonical(c);
  CHECK(k.at("c") == rat(1));
  CHECK(k.degree() == rat(1));
}

TEST_CASE("theta over a segment is not a double cover") {
  // two genus-0 vertices joined by three parallel edges over one target edge
  std::vector<GraphVertex> svs{{"u", 0, 3}, {"v", 0, 0}};
  std::vector<GraphEdge> ses;
  for (int i = 0; i < 3; ++i)
    ses.push_back({"e" + std::to_string(i), "u", "v", LinForm::coordinate(1, 0)});
  TropCurve S(1, svs, ses, {});
  std::vector<GraphLeg> tls;
  for (int i = 0; i < 6; ++i) tls.push_back({"b" + std::to_string(i), "tu", LegKind::Branch, ""});
  TropCurve T(1, {{"tu", 0, 0}, {"tv", 0, 0}},
              {{"te", "tu", "tv", LinForm::coordinate(1, 0)}}, tls);
  std::map<std::string, std::string> vmap{{"u", "tu"}, {"v", "tv"}};
  std::map<std::string, std::string> emap{{"e0", "te"}, {"e1", "te"}, {"e2", "te"}};
  std::map<std::string, int> eexp{{"e0", 1}, {"e1", 1}, {"e2", 1}};
  TropCover cover(S, T, vmap, emap, {}, eexp, {});
  ValidationReport r = validate(cover);
  CHECK(!r.pass());
  bool degree_violation = false;
  for (const auto& i : r.issues)
    if (i.code == "degree") degree_violation = true;
  CHECK(degree_violation);
}

TEST_CASE("the paper's core-with-two-tails cover validates") {
  TropCover c = load_fixture("exa1");
  CHECK(validate(c).pass());
  // orbifold canonical on a segment with (5,1) branch legs at the ends: the
  // five-leg vertex has 2 - 2 + 5/2, the one-leg tail ends have val - 2 + b/2
  Divisor k = orbifold_canonical(c);
  CHECK(k.at("c") == rat(5, 2));
  CHECK(k.at("w") == rat(-1, 2));
  CHECK(k.at("t") == rat(-1));
  CHECK(k.degree() == rat(1));
}

TEST_CASE("orbifold canonical examples from the defining formula") {
  // target segment with five branch legs at one end and one at the other
  TropCover c = load_fixture("exa2b");
  Divisor k = orbifold_canonical(c);
  // v1: val 2, 3 legs: 2 - 2 + 3/2
  CHECK(k.at("v1") == rat(3, 2));
  CHECK(k.at("t1") == rat(-1));
  CHECK(k.degree() == rat(1));

  // weight-zero valence-3 vertex with no branch legs has value 1
  TropCover c2 = load_fixture("esesub2b");
  Divisor k2 = orbifold_canonical(c2);
  CHECK(k2.at("t1") == rat(-1));
  Rat core_value = rat(3 - 2) + rat(6, 2);
  CHECK(k2.at("c") == core_value);
  // q2 of the theta target: valence 1, two branch legs: 1 - 2 + 1 = 0
  TropCover c3 = load_fixture("theta");
  CHECK(orbifold_canonical(c3).at("q2") == rat(0));
}

TEST_CASE("plain trivalent vertex value") {
  TropCover c3 = load_fixture("theta");
  // c0: valence 3, no branch legs: 3 - 2 = 1
  CHECK(orbifold_canonical(c3).at("c0") == rat(1));
}

TEST_CASE("conjugate involution fixes expansion-2 objects and swaps pairs") {
  TropCover c = load_fixture("exa1");
  Involution s = conjugate_involution(c);
  CHECK(s.on_vertices.at("O") == "O");
  CHECK(s.on_vertices.at("W") == "W");
  CHECK(s.on_vertices.at("T") == "Tx");
  CHECK(s.on_vertices.at("Tx") == "T");
  CHECK(s.on_edges.at("sw") == "sw");
  CHECK(s.on_edges.at("st") == "sx");
  // involution squared is the identity
  for (const auto& [a, b] : s.on_vertices) CHECK(s.on_vertices.at(b) == a);
  for (const auto& [a, b] : s.on_edges) CHECK(s.on_edges.at(b) == a);
}

TEST_CASE("genus bookkeeping: sum of vertex genera plus h1 equals two") {
  for (const auto& name : {"exa1", "exa2a", "exa2b", "esesub3", "dumbbell", "theta", "chain"}) {
    TropCover c = load_fixture(name);
    CHECK(validate(c).pass());
    CHECK(c.source().genus() == 2);
  }
}

TEST_CASE("face restriction of a cover is a valid cover") {
  TropCover c = load_fixture("esesub3");
  Cone base = c.base_cone();
  // contract the first tail edge (coordinate of e1 -> 0)
  Cone face = face_of(base, LinForm::coordinate(c.base_dim(), c.coordinate_of("e1")));
  TropCover contracted = contract_on_face(c, face);
  CHECK(validate(contracted).pass());
  CHECK(contracted.source().genus() == 2);
  CHECK(contracted.base_dim() == 2);
  // the tail vertex was absorbed: T1 merges with E1 (id order keeps the least)
  bool merged = !contracted.source().has_vertex("T1") || !contracted.source().has_vertex("E1");
  CHECK(merged);

  // contracting the expansion-2 middle edge merges the elliptic vertices
  Cone face2 = face_of(base, LinForm::coordinate(c.base_dim(), c.coordinate_of("em")));
  TropCover c2 = contract_on_face(c, face2);
  CHECK(validate(c2).pass());
  CHECK(c2.source().genus() == 2);

  // contracting a loop-creating set adds genus: pair edges of the theta cover
  TropCover th = load_fixture("theta");
  Cone tface = face_of(th.base_cone(), LinForm::coordinate(th.base_dim(), th.coordinate_of("f1")));
  TropCover th2 = contract_on_face(th, tface);
  CHECK(validate(th2).pass());
  CHECK(th2.source().genus() == 2);
}

TEST_CASE("random covers validate and have genus two") {
  auto covers = random_covers(40, 20240801);
  for (const auto& c : covers) {
    CHECK(validate(c).pass());
    CHECK(c.source().genus() == 2);
    // deg orbifold canonical = #marking legs + 1 (slope-one flux along the
    // markings brings the divisor of any admissible shadow down to degree 1)
    int marks = 0;
    for (const auto& l : c.target().legs())
      if (l.kind == LegKind::Marking) ++marks;
    Rat deg = orbifold_canonical(c).degree();
    CHECK(deg == rat(marks + 1));
  }
}
