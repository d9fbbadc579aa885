#include "doctest.h"

#include "filtmult/error.hpp"
#include "filtmult/linalg.hpp"
#include "filtmult/multiplicity.hpp"
#include "filtmult/newton.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace filtmult;

namespace {

const MonomialIdeal kI(2, {{2, 0}, {0, 1}});
const MonomialIdeal kJ(2, {{1, 0}, {0, 3}});

LimitOptions exact_opts() { return {}; }

LimitOptions numeric_opts(std::int64_t max_m) {
  LimitOptions o;
  o.strategy = Strategy::Numeric;
  o.max_m = max_m;
  return o;
}

// e(I) from λ(R/I^m) for m = 1..M by the oracle colength, using d-th differences at the far end.
BigInt oracle_multiplicity(const MonomialIdeal& I, int M) {
  const int d = I.dim();
  std::vector<BigInt> lambda{0};
  auto running = MonomialIdeal::unit(d);
  for (int m = 1; m <= M; ++m) {
    std::vector<Exponent> sums;
    for (const auto& g : running.generators())
      for (const auto& h : I.generators()) {
        Exponent s(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) s[i] = g[i] + h[i];
        sums.push_back(s);
      }
    const auto mins = oracle::minimal_set(sums);
    running = MonomialIdeal(d, std::vector<Exponent>(mins.begin(), mins.end()));
    lambda.emplace_back(oracle::box_colength(running));
  }
  BigInt diff = 0;
  for (int k = 0; k <= d; ++k) {
    const BigInt term = binomial(d, k) * lambda[static_cast<std::size_t>(M - d + k)];
    if ((d - k) % 2 == 0) diff += term;
    else diff -= term;
  }
  return diff;
}

Rational exact_limit(std::vector<Filtration> Fs, std::vector<std::int64_t> n) {
  return *limit_normalized_colength(Fs, n, exact_opts()).exact_value;
}

}  // namespace

TEST_CASE("Hilbert–Samuel multiplicity examples") {
  CHECK(hilbert_samuel_multiplicity(MonomialIdeal::maximal(2)) == 1);
  CHECK(hilbert_samuel_multiplicity(kI) == 2);
  CHECK(hilbert_samuel_multiplicity(MonomialIdeal(2, {{3, 0}, {1, 1}, {0, 4}})) == 7);
  CHECK(hilbert_samuel_multiplicity(MonomialIdeal(3, {{2, 0, 0}, {0, 3, 0}, {0, 0, 5}})) == 30);
  CHECK(hilbert_samuel_multiplicity(MonomialIdeal(1, {{9}})) == 9);
  try {
    hilbert_samuel_multiplicity(MonomialIdeal(2, {{1, 1}}));
    FAIL("expected NotMPrimary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMPrimary);
  }
  try {
    hilbert_samuel_multiplicity(MonomialIdeal(2, {{7, 0}, {3, 1}, {0, 9}}), 2);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("a transient plateau of second differences is not taken for e") {
  // Second differences of λ(R/K^m) run 366, 367, 367, 367, 366, 366, ...
  const MonomialIdeal I(2, {{0, 6}, {1, 3}, {2, 2}, {6, 0}});
  const MonomialIdeal J(2, {{0, 7}, {6, 5}, {7, 1}, {8, 0}});
  const auto K = product(I, power(J, 2));
  std::vector<std::int64_t> lambda{0};
  for (unsigned m = 1; m <= 12; ++m) lambda.push_back(oracle::box_colength(power(K, m)));
  CHECK(lambda[12] - 2 * lambda[11] + lambda[10] == 366);
  CHECK(lambda[5] - 2 * lambda[4] + lambda[3] == 367);
  CHECK(finite_difference_multiplicity(K) == 367);
  CHECK(hilbert_samuel_multiplicity(K) == 366);
}

TEST_CASE("Hilbert–Samuel multiplicity agrees with the colength oracle and the covolume") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 3;
    const auto I = oracle::random_primary(rng, d, d == 3 ? 3 : 5, 3);
    const BigInt e = hilbert_samuel_multiplicity(I);
    CHECK(e == oracle_multiplicity(I, d == 3 ? 8 : 14));
    CHECK(Rational(e) == Rational(factorial(static_cast<unsigned>(d))) * covolume(newton_region(I)));
  }
}

TEST_CASE("limit of normalized colengths") {
  CHECK(exact_limit({Filtration::power(MonomialIdeal::maximal(2))}, {1}) == Rational(1, 2));
  CHECK(exact_limit({Filtration::power(kI), Filtration::power(kJ)}, {1, 1}) == Rational(7, 2));
  CHECK(exact_limit({Filtration::power(kI), Filtration::power(kJ)}, {0, 0}) == 0);
  CHECK(exact_limit({Filtration::shifted_power(kI, 3)}, {2}) == 4);
  CHECK(exact_limit({truncate(Filtration::diagonal({QuadraticIrrational::sqrt(2)}), 2)}, {1}) == Rational(3, 2));
  // rational rates go through the limit body, not the power test
  CHECK(exact_limit({Filtration::diagonal({QuadraticIrrational::rational(Rational(999, 1000))})}, {1}) ==
        Rational(999, 1000));
  const auto val = Filtration::valuation({QuadraticIrrational::rational(2), QuadraticIrrational::rational(Rational(3, 2))});
  // complement of {2x + 3y/2 >= 1}: triangle with legs 1/2 and 2/3
  CHECK(exact_limit({val}, {1}) == Rational(1, 6));
  CHECK(exact_limit({val}, {3}) == Rational(9, 6));

  const std::vector<Filtration> diag{Filtration::diagonal({QuadraticIrrational::sqrt(2)})};
  const std::vector<std::int64_t> one{1};
  const auto est = limit_normalized_colength(diag, one, numeric_opts(10000));
  CHECK_FALSE(est.exact);
  CHECK(est.strategy == "numeric");
  CHECK(std::fabs(est.value - std::sqrt(2.0)) < 1e-3);
  for (std::size_t k = 1; k < est.samples.size(); ++k) CHECK(est.samples[k - 1].first < est.samples[k].first);
  CHECK(est.samples.back().first == 8192);

  try {
    limit_normalized_colength(diag, one, exact_opts());
    FAIL("expected NotNoetherian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNoetherian);
  }
  CHECK_THROWS_AS(limit_normalized_colength(diag, one, numeric_opts(1)), Error);
  const std::vector<std::int64_t> two{1, 1};
  try {
    limit_normalized_colength(diag, two, exact_opts());
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityMismatch);
  }
}

TEST_CASE("sample points") {
  const auto s11 = sample_points(1, 4);
  CHECK(s11.points == std::vector<std::vector<std::int64_t>>{{1}});
  CHECK(s11.inverse[0][0] == 1);

  const auto s22 = sample_points(2, 2);
  CHECK(s22.points == std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 2}, {2, 1}});
  CHECK(linalg::determinant(s22.matrix) != 0);
  CHECK(abs(linalg::determinant(s22.matrix)) == 3);
  CHECK(homogeneous_exponents(2, 2) == std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}});

  const auto s21 = sample_points(2, 1);
  CHECK(s21.points == std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 2}});
  CHECK(abs(linalg::determinant(s21.matrix)) == 1);

  for (std::uint64_t seed : {1u, 7u, 99u}) {
    const auto s = sample_points(3, 3, seed);
    CHECK(s.points.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
      std::vector<Rational> column, unit(10, Rational(0));
      for (const auto& row : s.inverse) column.push_back(row[k]);
      unit[k] = 1;
      CHECK(linalg::multiply(s.matrix, column) == unit);
    }
    CHECK(s.points == sample_points(3, 3, seed).points);
    for (const auto& p : s.points)
      for (auto v : p) CHECK((v >= 1 && v <= 20));
  }
}

TEST_CASE("mixed multiplicity tables") {
  const std::vector<Filtration> bh{Filtration::power(kI), Filtration::power(kJ)};
  const auto t = mixed_multiplicity_table(bh, exact_opts());
  REQUIRE(t.exact);
  CHECK(t.entries.size() == 3);
  CHECK(*t.entry(std::vector<int>{2, 0}).exact_value == 2);
  CHECK(*t.entry(std::vector<int>{1, 1}).exact_value == 1);
  CHECK(*t.entry(std::vector<int>{0, 2}).exact_value == 3);
  CHECK(t.evaluate_exact(std::vector<std::int64_t>{1, 1}) == Rational(7, 2));

  const std::vector<Filtration> single{Filtration::power(kI)};
  const auto t1 = mixed_multiplicity_table(single, exact_opts());
  CHECK(t1.entries.size() == 1);
  CHECK(*t1.entries[0].exact_value == 2);

  const auto m = MonomialIdeal::maximal(2);
  const std::vector<Filtration> eq{Filtration::power(m), Filtration::shifted_power(m, 1)};
  const auto te = mixed_multiplicity_table(eq, exact_opts());
  for (const auto& e : te.entries) CHECK(*e.exact_value == 1);

  const auto seeded = mixed_multiplicity_table(bh, exact_opts(), 42);
  for (std::size_t i = 0; i < 3; ++i) CHECK(seeded.entries[i].exact_value == t.entries[i].exact_value);

  const auto tn = mixed_multiplicity_table(bh, numeric_opts(128));
  CHECK_FALSE(tn.exact);
  CHECK(tn.entries[1].value == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("truncation convergence") {
  const std::vector<Filtration> diag{Filtration::diagonal({QuadraticIrrational::sqrt(2)})};
  const auto report = truncation_convergence(diag, {1, 2, 5, 12, 29}, {{1}}, exact_opts());
  // e_a = min_{k <= a} ⌈k√2⌉ / k
  const std::vector<Rational> expected{2, Rational(3, 2), Rational(3, 2), Rational(17, 12), Rational(17, 12)};
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(report.values[k][0] == expected[k]);
  CHECK(report.deltas.size() == 4);
  CHECK(report.deltas[0][0] == Rational(-1, 2));
  CHECK(report.deltas[2][0] == Rational(-1, 12));

  const auto later = truncation_convergence(diag, {41}, {{1}}, exact_opts());
  CHECK(later.values[0][0] == Rational(58, 41));
  CHECK(std::fabs(to_double(later.values[0][0]) - std::sqrt(2.0)) < 1e-3);

  const MonomialIdeal I(2, {{3, 0}, {1, 1}, {0, 4}});
  const std::vector<Filtration> pw{Filtration::power(I)};
  const auto flat = truncation_convergence(pw, {1, 2, 3}, {{2}}, exact_opts());
  for (const auto& row : flat.values) CHECK(row[0] == 7);
  CHECK_THROWS_AS(truncation_convergence(pw, {2, 2}, {{2}}, exact_opts()), Error);
  CHECK_THROWS_AS(truncation_convergence(pw, {1}, {{1}}, exact_opts()), Error);
}

TEST_CASE("property: exact and numeric strategies agree") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 1 + trial % 3;
    const int r = 1 + (trial / 3) % 3;
    std::vector<Filtration> Fs;
    std::vector<std::int64_t> n;
    for (int j = 0; j < r; ++j) {
      Fs.push_back(Filtration::power(oracle::random_primary(rng, d, 3, 2)));
      n.push_back(static_cast<std::int64_t>(oracle::draw(rng, 1, 2)));
    }
    const auto ex = limit_normalized_colength(Fs, n, exact_opts());
    const auto nu = limit_normalized_colength(Fs, n, numeric_opts(d == 3 ? 32 : 256));
    CHECK(std::fabs(nu.value - ex.value) <= nu.error_bound * 1.5 + 1e-12);
  }
}

TEST_CASE("property: homogeneity, permutation, diagonal consistency, Rees specialization") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 2;
    const int r = 2 + trial % 2;
    std::vector<Filtration> Fs;
    for (int j = 0; j < r; ++j) Fs.push_back(Filtration::power(oracle::random_primary(rng, d, 3, 2)));
    const auto t = mixed_multiplicity_table(Fs, exact_opts());
    REQUIRE(t.exact);

    std::vector<std::int64_t> n;
    for (int j = 0; j < r; ++j) n.push_back(static_cast<std::int64_t>(oracle::draw(rng, 1, 3)));
    auto n2 = n;
    for (auto& v : n2) v *= 2;
    CHECK(exact_limit(Fs, n2) == pow(Rational(2), static_cast<unsigned>(d)) * exact_limit(Fs, n));
    CHECK(t.evaluate_exact(n) == exact_limit(Fs, n));

    const std::vector<std::int64_t> ones(static_cast<std::size_t>(r), 1);
    Rational diag = 0;
    for (const auto& e : t.entries) {
      BigInt f = 1;
      for (int v : e.type) f *= factorial(static_cast<unsigned>(v));
      diag += *e.exact_value / Rational(f);
    }
    CHECK(diag == exact_limit(Fs, ones));

    std::vector<Filtration> rev(Fs.rbegin(), Fs.rend());
    const auto tr = mixed_multiplicity_table(rev, exact_opts());
    for (const auto& e : t.entries) {
      std::vector<int> flipped(e.type.rbegin(), e.type.rend());
      CHECK(*tr.entry(flipped).exact_value == *e.exact_value);
    }

    for (int i = 0; i < r; ++i) {
      std::vector<int> type(static_cast<std::size_t>(r), 0);
      type[static_cast<std::size_t>(i)] = d;
      const std::vector<Filtration> just{Fs[static_cast<std::size_t>(i)]};
      CHECK(*t.entry(type).exact_value ==
            Rational(factorial(static_cast<unsigned>(d))) * exact_limit(just, {1}));
    }
  }
}
