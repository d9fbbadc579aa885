#include "doctest.h"

#include "filtmult/error.hpp"
#include "filtmult/filtration.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace filtmult;

namespace {

const QuadraticIrrational kSqrt2 = QuadraticIrrational::sqrt(2);

Filtration diag_sqrt2() { return Filtration::diagonal({kSqrt2}); }

MonomialIdeal x_pow(std::int64_t k) { return MonomialIdeal(1, {{static_cast<int>(k)}}); }

// ⌈k√2⌉ by integer square root, independent of QuadraticIrrational.
std::int64_t ceil_k_sqrt2(std::int64_t k) {
  const std::int64_t t = 2 * k * k;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(t)));
  while (r * r > t) --r;
  while ((r + 1) * (r + 1) <= t) ++r;
  return r * r == t ? r : r + 1;
}

// x-exponent of the a-th truncation of Diagonal(√2) by partitions of n into parts <= a.
std::int64_t truncated_exponent(int a, std::int64_t n) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(n + 1), INT64_MAX);
  w[0] = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    for (std::int64_t part = 1; part <= std::min<std::int64_t>(a, k); ++part) {
      w[static_cast<std::size_t>(k)] =
          std::min(w[static_cast<std::size_t>(k)], w[static_cast<std::size_t>(k - part)] + ceil_k_sqrt2(part));
    }
  }
  return w[static_cast<std::size_t>(n)];
}

}  // namespace

TEST_CASE("quadratic irrationals compare and round exactly") {
  CHECK(kSqrt2.sign() == 1);
  CHECK(kSqrt2.compare(Rational(141, 100)) == 1);
  CHECK(kSqrt2.compare(Rational(142, 100)) == -1);
  CHECK(QuadraticIrrational(1, -1, 2).sign() == -1);
  CHECK(QuadraticIrrational(3, 0, 1).is_rational());
  for (std::int64_t k = 1; k <= 2000; ++k) CHECK(BigInt(ceil_k_sqrt2(k)) == kSqrt2.ceil_multiple(k));
  CHECK(kSqrt2.ceil_multiple(0) == 0);
  // (1 + √2)(√2 - 1) = 1
  CHECK((QuadraticIrrational(1, 1, 2) * QuadraticIrrational(-1, 1, 2)).compare(Rational(1)) == 0);
  CHECK_THROWS_AS(kSqrt2 + QuadraticIrrational::sqrt(3), Error);
  CHECK_THROWS_AS(QuadraticIrrational(0, 1, 4), Error);
  CHECK(QuadraticIrrational(Rational(3, 2), 0, 1).ceil_multiple(3) == 5);
}

TEST_CASE("ideal_at for the built-in kinds") {
  CHECK(diag_sqrt2().ideal_at(5) == x_pow(8));
  CHECK(Filtration::power(MonomialIdeal::maximal(2)).ideal_at(0).is_unit());
  const auto val = Filtration::valuation({QuadraticIrrational::rational(1), QuadraticIrrational::rational(Rational(3, 2))});
  CHECK(oracle::gens(val.ideal_at(3)) == std::set<Exponent>{{3, 0}, {2, 1}, {0, 2}});
  CHECK(val.ideal_at(0).is_unit());

  const MonomialIdeal I(2, {{2, 0}, {0, 1}});
  const auto sp = Filtration::shifted_power(I, 1);
  CHECK(sp.ideal_at(0).is_unit());
  CHECK(sp.ideal_at(1) == power(I, 2));
  CHECK(sp.ideal_at(3) == power(I, 4));

  const auto tab = Filtration::table({x_pow(1), x_pow(3)});
  CHECK(tab.ideal_at(2) == x_pow(3));
  try {
    tab.ideal_at(3);
    FAIL("expected IndexOutOfTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfTable);
  }
  CHECK_THROWS_AS(Filtration::diagonal({QuadraticIrrational(-1, 0, 1)}), Error);
  CHECK_THROWS_AS(Filtration::valuation({kSqrt2, QuadraticIrrational::sqrt(3)}), Error);
}

TEST_CASE("valuation with irrational weights matches direct enumeration") {
  const auto w1 = QuadraticIrrational::rational(1);
  const auto w2 = QuadraticIrrational(1, 1, 2);  // 1 + √2
  const auto F = Filtration::valuation({w1, w2});
  for (std::int64_t n = 1; n <= 12; ++n) {
    std::vector<Exponent> raw;
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        if ((w1 * Rational(a) + w2 * Rational(b)).compare(Rational(n)) >= 0) raw.push_back({a, b});
      }
    }
    CHECK(oracle::gens(F.ideal_at(n)) == oracle::minimal_set(raw));
  }
}

TEST_CASE("truncation examples") {
  const MonomialIdeal I(2, {{3, 0}, {1, 1}, {0, 4}});
  const auto P = Filtration::power(I);
  for (int a = 1; a <= 3; ++a) {
    const auto T = truncate(P, a);
    for (int n = 0; n <= 6; ++n) CHECK(T.ideal_at(n) == power(I, static_cast<unsigned>(n)));
  }
  const auto T2 = truncate(diag_sqrt2(), 2);
  CHECK(T2.ideal_at(4) == x_pow(6));
  for (int a = 1; a <= 8; ++a) {
    const auto T = truncate(diag_sqrt2(), a);
    for (std::int64_t n = 0; n <= 40; ++n) CHECK(T.ideal_at(n) == x_pow(truncated_exponent(a, n)));
    for (std::int64_t n = 0; n <= a; ++n) CHECK(T.ideal_at(n) == diag_sqrt2().ideal_at(n));
  }
  CHECK_THROWS_AS(truncate(P, 0), Error);
}

TEST_CASE("verify_filtration") {
  CHECK(verify_filtration(Filtration::power(MonomialIdeal::maximal(2)), 10).pass);
  CHECK(verify_filtration(diag_sqrt2(), 20).pass);
  const auto report = verify_filtration(Filtration::table({x_pow(1), x_pow(3)}), 2);
  CHECK_FALSE(report.pass);
  CHECK(report.violation == "multiplicative");
  CHECK(report.i == 1);
  CHECK(report.j == 1);
  const auto up = verify_filtration(Filtration::table({x_pow(3), x_pow(2)}), 2);
  CHECK_FALSE(up.pass);
  CHECK(up.violation == "descending");
}

TEST_CASE("diagonal ideals in several variables are not multiplicative") {
  // x·y lies in I_1^2 but not in I_2 = (x^2, y^2).
  const auto F = Filtration::diagonal({QuadraticIrrational::rational(1), QuadraticIrrational::rational(1)});
  const auto report = verify_filtration(F, 4);
  CHECK_FALSE(report.pass);
  CHECK(report.violation == "multiplicative");
  CHECK(report.i == 1);
  CHECK(report.j == 1);
}

TEST_CASE("detect_noetherian_scale") {
  CHECK(detect_noetherian_scale(Filtration::power(MonomialIdeal(2, {{2, 0}, {0, 1}})), 10, 4) == 1);
  CHECK(detect_noetherian_scale(truncate(diag_sqrt2(), 2), 10, 6) == 2);
  CHECK_FALSE(detect_noetherian_scale(diag_sqrt2(), 10, 6).has_value());
  CHECK_FALSE(detect_noetherian_scale(diag_sqrt2(), 64, 2).has_value());
  // ⌈7i√2⌉ = 10i for i <= 9: the power test alone cannot rule out a = 7 at depth 6.
  for (std::int64_t i = 1; i <= 9; ++i) CHECK(diag_sqrt2().ideal_at(7 * i) == x_pow(10 * i));
  CHECK(diag_sqrt2().ideal_at(70) != x_pow(100));
  const auto near_one = Filtration::diagonal({QuadraticIrrational::rational(Rational(999, 1000))});
  CHECK(detect_noetherian_scale(near_one, 10, 6) == 1);
  const auto half = Filtration::valuation({QuadraticIrrational::rational(2)});
  CHECK(detect_noetherian_scale(half, 10, 6) == 2);
}

TEST_CASE("multigraded filtrations") {
  const auto cn = MultiFiltration::ceiling_norm({1, 1});
  const std::vector<std::int64_t> p34{3, 4}, p11{1, 1}, bad{1};
  CHECK(cn.ideal_at(p34) == x_pow(5));
  CHECK(cn.ideal_at(p11) == x_pow(2));
  try {
    cn.ideal_at(bad);
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityMismatch);
  }
  const MonomialIdeal I(2, {{2, 0}, {0, 1}}), J(2, {{1, 0}, {0, 3}});
  const auto prod = MultiFiltration::product({Filtration::power(I), Filtration::power(J)});
  CHECK(prod.arity() == 2);
  CHECK(prod.ideal_at(p11) == product(I, J));
  // multigraded axiom on the ceiling-norm filtration
  for (std::int64_t a1 = 0; a1 <= 6; ++a1)
    for (std::int64_t a2 = 0; a2 <= 6; ++a2)
      for (std::int64_t b1 = 0; b1 <= 6; ++b1)
        for (std::int64_t b2 = 0; b2 <= 6; ++b2) {
          const std::vector<std::int64_t> a{a1, a2}, b{b1, b2}, s{a1 + b1, a2 + b2};
          CHECK(is_subset(product(cn.ideal_at(a), cn.ideal_at(b)), cn.ideal_at(s)));
        }
  const auto tm = MultiFiltration::truncated(cn, 2);
  CHECK(tm.ideal_at(p11) == x_pow(2));
  CHECK(is_subset(tm.ideal_at(p34), cn.ideal_at(p34)));
}

TEST_CASE("property: built-in kinds satisfy the filtration axioms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 1 + trial % 3;
    const auto I = oracle::random_primary(rng, d, 6 / d + 1, 2);
    std::vector<QuadraticIrrational> rates;
    for (int i = 0; i < d; ++i) rates.push_back(QuadraticIrrational(static_cast<int>(oracle::draw(rng, 0, 2)), 1, 2));
    const int N = d == 3 ? 8 : 30;
    CHECK(verify_filtration(Filtration::power(I), d == 1 ? 30 : 6).pass);
    CHECK(verify_filtration(Filtration::shifted_power(I, 2), d == 1 ? 30 : 5).pass);
    if (d == 1) {
      CHECK(verify_filtration(Filtration::diagonal(rates), N).pass);
      CHECK(verify_filtration(truncate(Filtration::diagonal(rates), 3), N).pass);
    }
    CHECK(verify_filtration(Filtration::valuation(rates), d == 3 ? 6 : 14).pass);
    CHECK(verify_filtration(truncate(Filtration::valuation(rates), 3), d == 3 ? 6 : 14).pass);
  }
}

TEST_CASE("property: truncation chain") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 1 + trial % 2;
    std::vector<QuadraticIrrational> rates;
    for (int i = 0; i < d; ++i) rates.push_back(QuadraticIrrational(Rational(static_cast<int>(oracle::draw(rng, 0, 3)), 2), 1, 2));
    const auto F = d == 1 ? Filtration::diagonal(rates) : Filtration::valuation(rates);
    for (int n = 1; n <= 16; ++n) {
      for (int a = 1; a <= n; ++a) {
        const auto In = F.ideal_at(n);
        CHECK(is_subset(truncate(F, a).ideal_at(n), In));
        if (a < n) CHECK(is_subset(truncate(F, a).ideal_at(n), truncate(F, a + 1).ideal_at(n)));
      }
    }
  }
}
