#include <random>
#include <set>

#include "doctest.h"
#include "maxlab/constants.hpp"
#include "maxlab/constructions.hpp"
#include "maxlab/maximal.hpp"
#include "oracle.hpp"

using namespace maxlab;

namespace {

std::set<std::vector<std::size_t>> member_sets(const std::vector<BallPair>& t) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& b : t) out.insert(b.members);
  return out;
}

}  // namespace

TEST_CASE("critical radii") {
  const Rational d(3, 2);
  auto s = basic_s({2, d, 2});
  auto r = critical_radii(s, 1, 1);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == Rational(1, 2));
  CHECK(r[1] == (1 + d) / 2);
  CHECK(r[2] == d + 1);
  CHECK(ball(s, 1, r[0]) == std::vector<std::size_t>{1});
  CHECK(ball(s, 1, r[1]) == std::vector<std::size_t>{0, 1});
  CHECK(ball(s, 1, r[2]) == std::vector<std::size_t>{0, 1, 2});

  CHECK(critical_radii(one_point_space(), 1, 0) == std::vector<Rational>{1});
  CHECK(ball(one_point_space(), 0, 1) == std::vector<std::size_t>{0});

  auto r2 = critical_radii(s, 2, 1);
  CHECK(r2.size() == 5);
  bool found = false;
  for (const auto& x : r2) {
    auto bp = ball_pair(s, 2, 1, x);
    if (bp.members == std::vector<std::size_t>{1} && bp.k_members == std::vector<std::size_t>{0, 1}) {
      found = true;
      CHECK(x > Rational(1, 2));
      CHECK(x < Rational(3, 4));
    }
  }
  CHECK(found);
}

TEST_CASE("ball tables of the basic spaces") {
  auto s = basic_s({3, Rational(7, 4), 2});
  std::set<std::vector<std::size_t>> expect_s{{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}, {0, 1, 2, 3}};
  CHECK(member_sets(ball_table(s, 1)) == expect_s);
  CHECK(ball_table(one_point_space(), 2).size() == 1);

  // y_0 = 0, yo_i = i, y'_i = tau + i
  auto t = basic_t({2, Rational(5, 2), 3});
  std::set<std::vector<std::size_t>> expect_t{{0}, {1}, {2}, {3}, {4}, {0, 1, 2}, {0, 1, 2, 3, 4},
                                              {0, 1, 3}, {0, 2, 4}, {0, 1, 2, 3}, {0, 1, 2, 4},
                                              {1, 3}, {2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}};
  CHECK(member_sets(ball_table(t, Rational(3, 2))) == expect_t);
  for (const auto& b : ball_table(t, 2)) {
    CHECK(std::includes(b.k_members.begin(), b.k_members.end(), b.members.begin(), b.members.end()));
    CHECK(b.members == ball(t, b.center, b.radius));
  }
}

TEST_CASE("centered values on the star space") {
  auto s = basic_s({2, Rational(3, 2), 2});
  auto v = m_centered(s, 1, delta(s, 0));
  CHECK(v.values == std::vector<Rational>{1, Rational(1, 3), Rational(1, 3)});
  CHECK(v.op == OpKind::centered);
  for (std::size_t x = 0; x < s.size(); ++x) CHECK(v.witnesses[x].center == x);

  for (auto op : {OpKind::centered, OpKind::noncentered}) {
    auto c = maximal(s, op, Rational(5, 4), constant_function(s, Rational(7, 3)));
    for (const auto& q : c.values) CHECK(q == Rational(7, 3));
  }
}

TEST_CASE("segment and two-layer examples") {
  auto seg = segment_preset_lemma2(2, 3);
  auto x20 = seg.index_of("x_{2,0}");
  auto v = m_centered(seg, 2, delta(seg, x20));
  auto expect = oracle::centered(seg, 2, delta(seg, x20));
  CHECK(v.values == expect);
  CHECK(v.values[seg.index_of("x_{2,1}")] == Rational(1, 2));

  auto seg3 = segment_preset_lemma3(3, 6);
  for (long n = 2; n <= 6; ++n) {
    auto x0 = seg3.index_of("x_{" + std::to_string(n) + ",0}");
    auto g = m_noncentered(seg3, 3, delta(seg3, x0));
    for (long j = 1; j <= n - 1; ++j) {
      auto xj = seg3.index_of("x_{" + std::to_string(n) + "," + std::to_string(j) + "}");
      CHECK(g.values[xj] >= seg3.weight(x0) / (2 * seg3.weight(xj)));
    }
  }

  for (long tau : {1, 3, 5})
    for (const Rational& m : {Rational(2), Rational(9, 2)}) {
      auto t = basic_t({tau, 2, m});
      auto g = m_noncentered(t, 1, delta(t, 0));
      for (long i = 1; i <= tau; ++i)
        CHECK(g.values[t.index_of("y'_" + std::to_string(i))] == 1 / (1 + Rational(1, tau) + m));
    }
}

TEST_CASE("enumeration agrees with both oracles") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_space(2 + trial % 7, rng);
    auto f = random_function(s.size(), rng);
    if (trial % 3 == 0) f[trial % s.size()] = 0;
    for (const Rational& k : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
      MaximalOperator M(s, k);
      auto c = M.centered(f);
      auto nc = M.noncentered(f);
      CHECK(c.values == oracle::centered(s, k, f));
      CHECK(nc.values == oracle::noncentered(s, k, f));
      CHECK(c.values == m_centered_oracle(s, k, f, 1).values);
      CHECK(nc.values == m_noncentered_oracle(s, k, f, 1).values);
      auto dense = m_noncentered_oracle(s, k, f, 3);
      for (std::size_t x = 0; x < s.size(); ++x) {
        CHECK(dense.values[x] == nc.values[x]);
        // witness realizes the value
        auto bp = ball_pair(s, k, nc.witnesses[x].center, nc.witnesses[x].radius);
        CHECK(std::find(bp.members.begin(), bp.members.end(), x) != bp.members.end());
        Rational mass = 0, w = 0;
        for (auto i : bp.members) mass += f[i] * s.weight(i);
        for (auto i : bp.k_members) w += s.weight(i);
        CHECK(mass / w == nc.values[x]);
      }
    }
  }
}

TEST_CASE("witnesses are the smallest center and radius") {
  auto s = basic_s({3, Rational(3, 2), 2});
  auto nc = m_noncentered(s, 1, constant_function(s, 1));
  for (std::size_t x = 0; x < s.size(); ++x) {
    CHECK(nc.witnesses[x].center == 0);
    CHECK(nc.witnesses[x].radius == (x == 0 ? Rational(1, 2) : Rational(2)));
  }
}

TEST_CASE("input checks") {
  auto s = basic_s({2, Rational(3, 2), 2});
  CHECK_THROWS(m_centered(s, Rational(1, 2), delta(s, 0)));
  CHECK_THROWS(m_centered(s, 1, TestFunction{1, 2}));
  CHECK_THROWS(m_noncentered(s, 1, TestFunction{1, -1, 2}));
  CHECK(parse_op_kind("nc") == OpKind::noncentered);
  CHECK_THROWS(parse_op_kind("x"));
}
