#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvz/linform.hpp"

using namespace tvz;

TEST_CASE("rational parsing and printing round-trip") {
  CHECK(rat_str(rat(3, 2)) == "3/2");
  CHECK(rat_str(rat(-4, 2)) == "-2/1");
  CHECK(*rat_parse("3/2") == rat(3, 2));
  CHECK(*rat_parse("-7") == rat(-7));
  CHECK(!rat_parse("a/b").has_value());
  CHECK(!rat_parse("1/0").has_value());
  CHECK(!rat_parse("").has_value());
}

TEST_CASE("linear form arithmetic is coefficient-wise") {
  LinForm a = LinForm::coordinate(3, 0) + LinForm::coordinate(3, 2) * rat(1, 2);
  LinForm b = LinForm::coordinate(3, 0) - LinForm::coordinate(3, 1);
  LinForm c = a + b;
  CHECK(c.coeff(0) == rat(2));
  CHECK(c.coeff(1) == rat(-1));
  CHECK(c.coeff(2) == rat(1, 2));
  CHECK((a - a).is_zero());
  CHECK(a * rat(2) == LinForm::coordinate(3, 0) * rat(2) + LinForm::coordinate(3, 2));
}

TEST_CASE("denominators beyond two are rejected") {
  LinForm half = LinForm::coordinate(2, 0) * rat(1, 2);
  CHECK_THROWS_AS(half * rat(1, 2), DenominatorError);
  CHECK_THROWS_AS(half.divided_by(Int(3)), DenominatorError);
  CHECK_NOTHROW(half * rat(2));
  CHECK(half.divided_by(Int(-1)) == -half);
}

TEST_CASE("primitive integer vector clears denominators and content") {
  LinForm f = LinForm::coordinate(2, 0) * rat(3, 2) - LinForm::coordinate(2, 1) * rat(1, 2);
  auto v = f.primitive();
  CHECK(v == std::vector<Int>{Int(3), Int(-1)});
  LinForm g = LinForm::coordinate(2, 0) * rat(4) + LinForm::coordinate(2, 1) * rat(6);
  CHECK(g.primitive() == std::vector<Int>{Int(2), Int(3)});
}

TEST_CASE("evaluation") {
  LinForm f = LinForm::coordinate(2, 0) * rat(3) - LinForm::coordinate(2, 1) * rat(1, 2);
  CHECK(f.eval({rat(1), rat(4)}) == rat(1));
  CHECK(f.eval_ray({Int(1), Int(2)}) == rat(2));
  CHECK(f.to_string({"a", "b"}) == "3*a - 1/2*b");
}
