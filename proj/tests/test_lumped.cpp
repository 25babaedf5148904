#include <random>

#include "doctest.h"
#include "maxlab/constants.hpp"
#include "maxlab/lumped.hpp"

using namespace maxlab;

namespace {

// Expands a class-constant function onto the explicit basic space.
TestFunction spread(BasicKind kind, long tau, const std::vector<Rational>& f) {
  TestFunction out{f[0]};
  for (std::size_t c = 1; c < f.size(); ++c)
    for (long i = 0; i < tau; ++i) out.push_back(f[c]);
  (void)kind;
  return out;
}

}  // namespace

TEST_CASE("lumped spaces are consistent") {
  for (long tau : {1, 2, 7}) {
    auto s = lumped_basic_s({tau, Rational(3, 2), 3});
    auto t = lumped_basic_t({tau, Rational(5, 2), 3});
    CHECK(lumped_consistent(s));
    CHECK(lumped_consistent(t));
    CHECK(s.total_measure() == total_measure(basic_s({tau, Rational(3, 2), 3})));
    CHECK(t.total_measure() == total_measure(basic_t({tau, Rational(5, 2), 3})));
  }
  LumpedSpace bad({{"a", 2, 1}}, {{}}, "bad");
  CHECK_FALSE(lumped_consistent(bad));
  auto huge = lumped_basic_s({Integer("100000000000000000000"), Rational(3, 2), 2});
  CHECK(huge.atoms() == Integer("100000000000000000001"));
}

TEST_CASE("lumped evaluation matches the explicit spaces") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(0, 6);
  for (auto kind : {BasicKind::S, BasicKind::T})
    for (long tau : {1, 2, 4})
      for (const Rational& d : {Rational(5, 4), Rational(2)})
        for (const Rational& k : {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)}) {
          BasicParams p{tau, kind == BasicKind::T ? Rational(d + Rational(1, 2)) : d, Rational(7, 2)};
          auto L = lumped_basic(kind, p);
          auto X = basic(kind, p);
          std::vector<Rational> f(L.classes());
          for (auto& v : f) v = val(rng);
          if (f == std::vector<Rational>(f.size(), Rational(0))) f[0] = 1;
          auto F = spread(kind, tau, f);
          for (auto op : {OpKind::centered, OpKind::noncentered}) {
            auto g = lumped_maximal(L, op, k, f);
            auto G = maximal(X, op, k, F).values;
            CHECK(spread(kind, tau, g) == G);
            for (const auto& lp : {LpExponent(1), LpExponent(Rational(3, 2)), LpExponent::infinity()})
              for (auto nk : {NormKind::weak, NormKind::strong}) {
                double a = lumped_ratio(L, k, lp, nk, op, f).value;
                double b = ratio(X, k, lp, nk, op, F).value;
                CHECK(a == doctest::Approx(b).epsilon(1e-12));
              }
          }
        }
}

TEST_CASE("lumped lower bound uses the best class indicator") {
  auto L = lumped_basic_s({8, Rational(3, 2), 8});
  auto b = lumped_lower_bound(L, 1, LpExponent(1), NormKind::weak, OpKind::centered);
  CHECK(b.value == doctest::Approx(65.0 / 9.0));
  CHECK(b.witness == std::vector<Rational>{1, 0});
}
