#include <random>

#include "doctest.h"
#include "maxlab/constructions.hpp"
#include "maxlab/json_util.hpp"

using namespace maxlab;
using nlohmann::json;

namespace {

Rational branch_measure(const MetricMeasureSpace& s, long n) {
  Rational m = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.label(i).index.front() == n) m += s.weight(i);
  return m;
}

}  // namespace

TEST_CASE("first generation") {
  auto one = first_generation({{1}, {{1}}});
  REQUIRE(one.size() == 2);
  CHECK(one.dist(0, 1) == 1);
  CHECK(one.weight(0) == 1);
  CHECK(one.weight(1) == 1);

  std::vector<long> tau{1, 1};
  auto two = first_generation({tau, constant_table(tau, 1)});
  CHECK(branch_measure(two, 1) == 2);
  CHECK(two.weight(two.index_of("x_2")) == Rational(1, 2));
  CHECK(branch_measure(two, 2) == 1);
  CHECK(validate_metric(two).ok);

  std::vector<long> tau3{2, 3, 1, 4};
  BranchTable F{{1, Rational(1, 3)}, {2, 5, Rational(1, 7)}, {3}, {1, 1, 1, 9}};
  auto s = first_generation({tau3, F});
  CHECK(validate_metric(s).ok);
  for (long n = 2; n <= 4; ++n) CHECK(branch_measure(s, n) * 2 == branch_measure(s, n - 1));
  CHECK(s.dist(s.index_of("x_{2,1}"), s.index_of("x_{2,2}")) == 2);
  CHECK(s.dist(s.index_of("x_2"), s.index_of("x_{2,3}")) == 1);
  CHECK(s.dist(s.index_of("x_1"), s.index_of("x_{2,1}")) == 2);
  CHECK_THROWS(first_generation({{1, 2}, {{1}, {1}}}));
  CHECK_THROWS(first_generation({{1}, {{0}}}));
}

TEST_CASE("second generation") {
  auto one = second_generation({{1}, {{1}}});
  REQUIRE(one.size() == 3);
  auto y = one.index_of("y_1"), yi = one.index_of("y_{1,1}"), yp = one.index_of("y'_{1,1}");
  CHECK(one.weight(y) == 1);
  CHECK(one.weight(yi) == 1);
  CHECK(one.weight(yp) == 1);
  CHECK(one.dist(y, yi) == 1);
  CHECK(one.dist(yi, yp) == 1);
  CHECK(one.dist(y, yp) == 2);

  std::vector<long> tau{1, 2};
  auto two = second_generation({tau, constant_table(tau, 1)});
  CHECK(two.weight(two.index_of("y_2")) == Rational(3, 8));
  CHECK(two.weight(two.index_of("y_{2,1}")) == Rational(3, 16));
  CHECK(validate_metric(two).ok);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<long> t;
    for (int n = 0; n < 4; ++n) t.push_back(1 + static_cast<long>(rng() % 3));
    BranchTable F;
    for (long c : t) {
      std::vector<Rational> row;
      for (long i = 0; i < c; ++i) row.emplace_back(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
      F.push_back(row);
    }
    auto s = second_generation({t, F});
    CHECK(validate_metric(s).ok);
    // halving of branch measures
    std::vector<Rational> mu(t.size() + 1, Rational(0));
    for (std::size_t i = 0; i < s.size(); ++i) mu[s.label(i).index.front()] += s.weight(i);
    for (std::size_t n = 2; n <= t.size(); ++n) CHECK(mu[n] * 2 == mu[n - 1]);
    // no unit-distance triangle
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        for (std::size_t c = b + 1; c < s.size(); ++c)
          CHECK_FALSE((s.dist(a, b) == 1 && s.dist(b, c) == 1 && s.dist(a, c) == 1));
  }
}

TEST_CASE("metric modification") {
  auto one = second_generation({{1, 1}, {{1}, {1}}});
  auto mod = lemma1_modify(one);
  CHECK(mod.dist(mod.index_of("y_1"), mod.index_of("y'_{1,1}")) == 2);
  CHECK(mod.dist(mod.index_of("y_1"), mod.index_of("y_{1,1}")) == 1);
  CHECK(mod.dist(mod.index_of("y_1"), mod.index_of("y_2")) == 3);
  CHECK(mod.dist(mod.index_of("y'_{1,1}"), mod.index_of("y_{2,1}")) == 3);
  CHECK(validate_metric(mod).ok);
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(mod.weight(i) == one.weight(i));

  MetricMeasureSpace tri({}, {0, 1, 1, 1, 0, 1, 1, 1, 0}, {1, 1, 1}, "t");
  CHECK_THROWS_AS(lemma1_modify(tri), std::invalid_argument);
  MetricMeasureSpace other({}, {0, 3, 3, 0}, {1, 1}, "t");
  CHECK_THROWS_AS(lemma1_modify(other), std::invalid_argument);
}

TEST_CASE("segment spaces") {
  auto one = segment_type({{{Rational(1, 2)}}, {{Rational(1, 4), Rational(1, 4)}}});
  CHECK(one.size() == 2);
  CHECK(one.dist(0, 1) == Rational(1, 2));

  auto l2 = segment_lemma2_params(2, 3);
  CHECK(l2.d[1] == std::vector<Rational>{Rational(1, 9), Rational(1, 3)});
  CHECK(l2.F[1] == std::vector<Rational>(3, Rational(1, 12)));
  for (long n = 1; n <= 3; ++n) {
    Rational s = 0;
    for (std::size_t i = 1; i < l2.F[n - 1].size(); ++i) s += l2.F[n - 1][i];
    CHECK(s == pow_int(Rational(2), -n) * n / (n + 1));
    CHECK(s + l2.F[n - 1][0] == pow_int(Rational(2), -n));
  }

  auto s2 = segment_preset_lemma2(2, 3);
  CHECK(validate_metric(s2).ok);
  CHECK(s2.dist(s2.index_of("x_{1,0}"), s2.index_of("x_{2,2}")) == 1);
  CHECK(s2.dist(s2.index_of("x_{2,0}"), s2.index_of("x_{2,2}")) == Rational(4, 9));

  for (const Rational& k : {Rational(2), Rational(5, 2), Rational(7)}) {
    auto p = segment_lemma2_params(k, 8);
    for (const auto& d : p.d) {
      Rational partial = 0;
      for (std::size_t j = 0; j + 1 < d.size(); ++j) {
        partial += d[j];
        CHECK(partial < d[j + 1] / k);
      }
    }
  }

  auto l3 = segment_lemma3_params(3, 4);
  CHECK(l3.F[1] == std::vector<Rational>{Rational(1, 64), Rational(1, 32), Rational(1, 8)});
  for (std::size_t n = 0; n < l3.d.size(); ++n) {
    Rational pd = 0, pf = 0;
    for (std::size_t j = 0; j + 1 < l3.d[n].size(); ++j) {
      pd += l3.d[n][j];
      CHECK(pd < l3.d[n][j + 1]);
    }
    for (std::size_t j = 0; j + 1 < l3.F[n].size(); ++j) {
      pf += l3.F[n][j];
      CHECK(pf < l3.F[n][j + 1]);
    }
  }
  CHECK(validate_metric(segment_preset_lemma3(3, 5)).ok);

  auto s3 = segment_preset_lemma2(2, 3);
  auto x30 = s3.index_of("x_{3,0}");
  for (long j = 1; j < 3; ++j)
    CHECK(s3.dist(x30, s3.index_of("x_{3," + std::to_string(j) + "}")) <
          s3.dist(x30, s3.index_of("x_{3," + std::to_string(j + 1) + "}")));

  CHECK_THROWS(segment_type({{{Rational(3, 2)}}, {{Rational(1, 4), Rational(1, 4)}}}));
  CHECK_THROWS(segment_type({{{Rational(1, 2)}}, {{Rational(1, 2), Rational(1, 4)}}}));
  CHECK_THROWS(segment_preset_lemma2(Rational(3, 2), 3));
  CHECK_THROWS(segment_preset_lemma3(Rational(5, 2), 3));
}

TEST_CASE("basic spaces") {
  auto s = basic_s({2, Rational(3, 2), 2});
  CHECK(s.dist(0, 1) == 1);
  CHECK(s.dist(0, 2) == 1);
  CHECK(s.dist(1, 2) == Rational(3, 2));
  CHECK(s.weight(0) == 1);
  CHECK(s.weight(1) == 2);

  auto t = basic_t({1, 2, 3});
  auto y0 = t.index_of("y_0"), yo = t.index_of("yo_1"), yp = t.index_of("y'_1");
  CHECK(t.dist(y0, yo) == 1);
  CHECK(t.dist(yo, yp) == 1);
  CHECK(t.dist(y0, yp) == Rational(3, 2));
  CHECK(t.weight(y0) == 1);
  CHECK(t.weight(yo) == 1);
  CHECK(t.weight(yp) == 3);

  for (long tau : {1, 2, 3, 5})
    for (const Rational& d : {Rational(9, 8), Rational(3, 2), Rational(2)})
      for (const Rational& m : {Rational(3, 2), Rational(4)}) {
        CHECK(validate_metric(basic_s({tau, d, m})).ok);
        CHECK(validate_metric(basic_t({tau, d, m})).ok);
        CHECK(validate_metric(basic_t({tau, d + 1, m})).ok);
      }

  CHECK_THROWS(basic_s({2, Rational(5, 2), 2}));
  CHECK_THROWS(basic_s({2, 1, 2}));
  CHECK_THROWS(basic_t({2, 2, 1}));
  CHECK_THROWS(basic_t({0, 2, 2}));
}

TEST_CASE("gluing") {
  auto a = basic_s({2, Rational(3, 2), 2});
  auto g1 = glue({2, {a}});
  auto r1 = glue_rescaled_components({2, {a}}).front();
  REQUIRE(g1.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(g1.weight(i) == r1.weight(i));
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(g1.dist(i, j) == r1.dist(i, j));
  }
  CHECK(diameter(r1) == 1);
  CHECK(total_measure(r1) == Rational(1, 2));

  auto b = basic_s({3, Rational(7, 4), 3});
  auto g = glue({2, {a, b}});
  CHECK(validate_metric(g).ok);
  CHECK(diameter(g) == 3);
  auto [b0, b1] = glue_component_range({2, {a, b}}, 2);
  CHECK(b0 == 3);
  CHECK(b1 == 7);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = b0; j < b1; ++j) CHECK(g.dist(i, j) == 3);
  CHECK(g.dist(b0 + 1, b0 + 2) == Rational(1));
  CHECK(g.dist(b0, b0 + 1) == Rational(4, 7));
  CHECK(total_measure(g) <= Rational(3, 4));
  CHECK(g.label(b0).str() == "c2/x_0");

  auto small = scale_measure(one_point_space(), Rational(1, 100));
  auto gs = glue({1, {small}});
  CHECK(gs.weight(0) == Rational(1, 100));
  auto desc = parse_provenance(g.provenance());
  CHECK(desc["scales"][1]["metric"] == "4/7");
}

TEST_CASE("families") {
  auto f7 = family_lemma7(Rational(3, 2), Lemma7Mode::strict, 3);
  REQUIRE(f7.members.size() == 3);
  for (long n = 1; n <= 3; ++n) {
    CHECK(f7.members[n - 1].params == BasicParams{n, Rational(3, 2), 2});
    CHECK(f7.members[n - 1].kind == BasicKind::S);
  }
  auto w7 = family_lemma7(1, Lemma7Mode::weak, 3);
  CHECK(w7.members[1].params.d == Rational(3, 2));
  auto t7 = family_lemma7p(2, Lemma7Mode::weak, 2);
  CHECK(t7.members[1].params.d == Rational(5, 2));
  CHECK(t7.members[0].kind == BasicKind::T);

  FamilyParams p{Rational(3, 2), 1, Rational(1, 4), Rational(1, 4), 3, 4, 6};
  auto f6 = family_lemma6(p);
  for (const auto& m : f6.members) {
    CHECK(m.params.tau == 9);
    CHECK(m.params.m == Rational(pow_int(Integer(m.n), 4)));
    CHECK(m.params.d == Rational(3, 2) + Rational(1, 4) / m.n);
  }
  CHECK(f6.k0 == Rational(7, 4));

  FamilyParams q{Rational(3, 2), 2, Rational(1, 4), Rational(1, 4), 2, 3, 4};
  auto g6 = family_lemma6(q);
  CHECK(g6.members[0].params.tau == 16 * pow_int(Integer(3), 8));
  CHECK(g6.members[0].params.m == Rational(pow_int(Integer(3), 8)));

  FamilyParams r{Rational(3, 2), Rational(3, 2), Rational(1, 4), Rational(1, 4), 2, 3, 3};
  auto h6 = family_lemma6(r);
  // tau = ceil(2^3) * floor(3^3), m = ceil(3^6)
  CHECK(h6.members[0].params.tau == 8 * 27);
  CHECK(h6.members[0].params.m == 729);
  FamilyParams s{1, Rational(5, 4), Rational(1, 4), Rational(1, 4), 2, 3, 3};
  auto i6 = family_lemma6(s);
  // 2^(5/2) = 5.66, 3^(5/4) = 3.95, 3^5 = 243
  CHECK(i6.members[0].params.tau == 6 * 3);
  CHECK(i6.members[0].params.m == 243);

  auto t6 = family_lemma6p({2, 2, Rational(1, 4), Rational(1, 2), 2, 3, 3});
  CHECK(t6.members[0].kind == BasicKind::T);
  CHECK(t6.members[0].params.d == Rational(13, 6));

  CHECK_THROWS(family_lemma6({2, 1, Rational(1, 4), Rational(1, 4), 2, 3, 4}));
  CHECK_THROWS(family_lemma6({Rational(3, 2), 1, Rational(1, 2), Rational(1, 4), 2, 3, 4}));
  CHECK_THROWS(family_lemma6({Rational(3, 2), 1, Rational(1, 4), Rational(1, 4), 2, 2, 4}));
  CHECK_THROWS(family_lemma7(Rational(5, 2), Lemma7Mode::strict, 3));
}

TEST_CASE("descriptors round trip") {
  std::vector<json> descs = {
      {{"kind", "one_point"}},
      {{"kind", "basic_s"}, {"params", {{"tau", "2"}, {"d", "3/2"}, {"m", "2/1"}}}},
      {{"kind", "basic_t"}, {"params", {{"tau", 3}, {"d", "5/2"}, {"m", "4"}}}},
      {{"kind", "first_generation"}, {"params", {{"tau", {1, 2}}, {"F", "1/2"}}}},
      {{"kind", "second_generation"}, {"params", {{"tau_star", {1, 2}}, {"F_star", {{"1"}, {"1", "3"}}}}}},
      {{"kind", "segment_lemma2"}, {"params", {{"k", "2"}, {"n_max", 4}}}},
      {{"kind", "segment_lemma3"}, {"params", {{"k", "3"}, {"n_max", 3}}}},
      {{"kind", "family_lemma7"}, {"params", {{"k", "3/2"}, {"mode", "strict"}, {"n_max", 3}}}},
      {{"kind", "glue"},
       {"params",
        {{"k0", "2"},
         {"components",
          {{{"kind", "basic_s"}, {"params", {{"tau", "2"}, {"d", "3/2"}, {"m", "2"}}}}, {{"kind", "one_point"}}}}}}},
      {{"kind", "lemma1_modify"},
       {"params", {{"base", {{"kind", "second_generation"}, {"params", {{"tau_star", {1}}, {"F_star", "1"}}}}}}}},
  };
  for (const auto& d : descs) {
    auto s = build_space(d);
    CHECK(validate_metric(s).ok);
    auto again = build_space(descriptor_of(s));
    CHECK(again == s);
  }
  auto scaled = scale_measure(scale_metric(basic_s({2, Rational(3, 2), 2}), 2), Rational(1, 3));
  CHECK(build_space(descriptor_of(scaled)) == scaled);
  CHECK_THROWS_AS(build_space({{"kind", "nope"}}), std::invalid_argument);
  CHECK_THROWS_AS(build_space({{"kind", "basic_s"}, {"params", {{"tau", "20001"}, {"d", "3/2"}, {"m", "2"}}}}),
                  std::length_error);
}
