#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvz/cone.hpp"

using namespace tvz;

namespace {
LinForm form(std::vector<long> c) {
  std::vector<Rat> r(c.size());
  for (size_t i = 0; i < c.size(); ++i) r[i] = rat(c[i]);
  return LinForm{r};
}
}  // namespace

TEST_CASE("orthant rays, volume, smoothness") {
  Cone o = orthant(3);
  CHECK(o.rays.size() == 3);
  CHECK(o.full_dim());
  CHECK(o.is_simplicial());
  CHECK(lattice_index(o) == 1);
  CHECK(cone_volume(o) == rat(1));
}

TEST_CASE("splitting the quadrant") {
  Cone q = orthant(2);
  LinForm wall = form({1, -1});  // x - y
  CHECK(sign_on(q, wall) == Sign::Mixed);
  auto [plus, minus] = split(q, wall);
  CHECK(plus.rays == std::vector<std::vector<Int>>{{Int(1), Int(0)}, {Int(1), Int(1)}});
  CHECK(minus.rays == std::vector<std::vector<Int>>{{Int(0), Int(1)}, {Int(1), Int(1)}});
  CHECK(cone_volume(plus) + cone_volume(minus) == cone_volume(q));
  CHECK(sign_on(plus, wall) == Sign::Pos);
  CHECK(sign_on(minus, wall) == Sign::Neg);
  CHECK(sign_on(plus, form({0, 0})) == Sign::Zero);
  CHECK(share_facet(plus, minus));
}

TEST_CASE("non-simplicial cones from repeated splits") {
  Cone o = orthant(3);
  // x + y - z changes sign on the octant; one side has four extreme rays
  auto [plus, minus] = split(o, form({1, 1, -1}));
  CHECK(plus.rays.size() + minus.rays.size() >= 7);
  bool some_nonsimplicial = !plus.is_simplicial() || !minus.is_simplicial();
  CHECK(some_nonsimplicial);
  CHECK(cone_volume(plus) + cone_volume(minus) == rat(1));
}

TEST_CASE("lattice index detects the half-lattice cone") {
  Cone c = cone_from_rays(2, {{Int(1), Int(1)}, {Int(1), Int(-1)}});
  CHECK(c.is_simplicial());
  CHECK(lattice_index(c) == 2);
  LinForm half = LinForm{std::vector<Rat>{rat(1, 2), rat(1, 2)}};
  CHECK(integral_on_ray_lattice(c, half));  // (x+y)/2 integral on the rays
  Cone s = cone_from_rays(2, {{Int(1), Int(0)}, {Int(0), Int(1)}});
  CHECK(lattice_index(s) == 1);
  CHECK(!integral_on_ray_lattice(s, half));
}

TEST_CASE("farkas certificates") {
  Cone q = cone_from_inequalities(2, {form({1, 0}), form({-1, 1})});  // x >= 0, y >= x
  LinForm h = form({1, 1});
  auto mu = farkas_certificate(q, h);
  REQUIRE(mu.has_value());
  // verify h = sum mu_i ineq_i exactly
  LinForm sum(2);
  for (size_t i = 0; i < q.ineqs.size(); ++i) sum += q.ineqs[i] * (*mu)[i];
  CHECK(sum == h);
  for (const Rat& m : *mu) CHECK(m >= 0);
  CHECK(!farkas_certificate(q, form({1, -1})).has_value());  // x - y < 0 inside
}

TEST_CASE("faces and containment") {
  Cone o = orthant(3);
  Cone f = face_of(o, LinForm::coordinate(3, 1));
  CHECK(f.rank() == 2);
  CHECK(cone_contains_cone(o, f));
  CHECK(!cone_contains_cone(f, o));
  Cone i = intersect(o, f);
  CHECK(i.rays == f.rays);
}

TEST_CASE("volume additivity over a fan of many splits") {
  std::vector<Cone> cones{orthant(3)};
  std::vector<LinForm> walls{form({1, -1, 0}), form({0, 1, -1}), form({2, -1, -1}), form({1, 1, -3})};
  for (const LinForm& w : walls) {
    std::vector<Cone> next;
    for (Cone& c : cones) {
      if (sign_on(c, w) == Sign::Mixed) {
        auto [a, b] = split(c, w);
        next.push_back(a);
        next.push_back(b);
      } else {
        next.push_back(c);
      }
    }
    cones = next;
  }
  Rat total = 0;
  for (const Cone& c : cones) total += cone_volume(c);
  CHECK(total == rat(1));
  // pairwise interior disjoint
  for (size_t i = 0; i < cones.size(); ++i)
    for (size_t j = i + 1; j < cones.size(); ++j) CHECK(intersect(cones[i], cones[j]).rank() < 3);
}
