#include "doctest.h"
#include "maxlab/constructions.hpp"
#include "maxlab/space.hpp"

using namespace maxlab;

namespace {

MetricMeasureSpace three(const Rational& a, const Rational& b, const Rational& c) {
  return {{}, {0, a, c, a, 0, b, c, b, 0}, {1, 1, 1}, "test"};
}

}  // namespace

TEST_CASE("validation") {
  CHECK(validate_metric(one_point_space()).ok);
  CHECK(validate_metric(basic_s({2, Rational(3, 2), 2})).ok);

  auto bad = three(3, 1, 1);
  auto report = validate_metric(bad);
  REQUIRE_FALSE(report.ok);
  bool found = false;
  for (const auto& v : report.violations)
    if (v.kind == "triangle" && v.witness == std::vector<std::size_t>{0, 1, 2}) found = true;
  CHECK(found);

  MetricMeasureSpace asym({}, {0, 1, 2, 0}, {1, 1}, "asym");
  auto r2 = validate_metric(asym);
  CHECK_FALSE(r2.ok);
  CHECK(r2.violations.front().kind == "symmetry");

  MetricMeasureSpace neg({}, {0, 1, 1, 0}, {1, 0}, "w");
  CHECK(validate_metric(neg).violations.front().kind == "weight");
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(MetricMeasureSpace({}, {0, 1}, {1, 1}, ""), std::invalid_argument);
  CHECK_THROWS_AS(MetricMeasureSpace({}, {}, {}, ""), std::invalid_argument);
}

TEST_CASE("measure and diameter") {
  CHECK(total_measure(basic_s({2, Rational(3, 2), 2})) == 5);
  CHECK(total_measure(one_point_space(Rational(7, 3))) == Rational(7, 3));
  CHECK(total_measure(basic_t({2, 2, 3})) == 8);
  CHECK(diameter(basic_s({3, Rational(7, 4), 2})) == Rational(7, 4));
  CHECK(diameter(one_point_space()) == 0);
}

TEST_CASE("scaling") {
  auto s = basic_s({2, Rational(3, 2), 2});
  CHECK(scale_metric(s, 1) == s);
  CHECK(diameter(scale_metric(s, Rational(2, 3))) == 1);
  CHECK(total_measure(scale_measure(s, Rational(1, 5))) == 1);
  auto a = scale_measure(scale_metric(s, 3), Rational(1, 7));
  auto b = scale_metric(scale_measure(s, Rational(1, 7)), 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(a.weight(i) == b.weight(i));
    for (std::size_t j = 0; j < s.size(); ++j) CHECK(a.dist(i, j) == b.dist(i, j));
  }
  auto c = scale_metric(scale_metric(s, 2), 3);
  CHECK(c.dist(1, 2) == s.dist(1, 2) * 6);
  CHECK_THROWS(scale_metric(s, 0));
}

TEST_CASE("labels") {
  PointLabel l{"x", {2, 1}};
  CHECK(l.str() == "x_{2,1}");
  CHECK(PointLabel::parse("x_{2,1}") == l);
  CHECK(PointLabel::parse("y'_3") == PointLabel{"y'", {3}});
  CHECK(PointLabel::parse("c3/x_0") == PointLabel{"c3/x", {0}});
  CHECK(PointLabel::parse("a").role == "a");
  auto s = basic_s({2, Rational(3, 2), 2});
  CHECK(s.index_of("x_2") == 2);
  CHECK_FALSE(s.find("x_9"));
}
