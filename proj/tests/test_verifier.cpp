#include "doctest.h"

#include "filtmult/error.hpp"
#include "filtmult/verifier.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>

using namespace filtmult;

namespace {

const MonomialIdeal kI(2, {{2, 0}, {0, 1}});
const MonomialIdeal kJ(2, {{1, 0}, {0, 3}});

const InequalityRecord& record(const InequalityReport& r, const std::string& name) {
  for (const auto& rec : r.records) {
    if (rec.name == name) return rec;
  }
  throw std::runtime_error("missing record " + name);
}

}  // namespace

TEST_CASE("exact root comparisons") {
  CHECK(compare_root_sum(7, 2, 3, 2) == -1);
  CHECK(compare_root_sum(4, 1, 1, 2) == 0);
  CHECK(compare_root_sum(5, 1, 1, 2) == 1);
  CHECK(compare_root_sum(8, 1, 1, 3) == 0);
  CHECK(compare_root_sum(27, 1, 8, 3) == 0);
  CHECK(compare_root_sum(Rational(27, 8), Rational(1, 8), 1, 3) == 0);
  CHECK(compare_root_sum(10, 2, 3, 3) == -1);  // 2.154 vs 1.260 + 1.442
  CHECK(compare_root_sum(19, 2, 3, 3) == -1);
  CHECK(compare_root_sum(20, 2, 3, 3) == 1);  // 2.714 vs 2.702
  CHECK(compare_root_sum(5, 0, 5, 4) == 0);
  CHECK(compare_root_sum(0, 0, 0, 3) == 0);
  // near-equality: (2^{1/3} + 3^{1/3})^3 = 19.7305096379...
  CHECK(compare_root_sum(Rational(197305096379LL, 10000000000LL), 2, 3, 3) == -1);
  CHECK(compare_root_sum(Rational(197305096380LL, 10000000000LL), 2, 3, 3) == 1);
  CHECK(compare_root_sum(16, 1, 1, 4) == 0);
}

TEST_CASE("Minkowski report on the Bhattacharya pair") {
  const auto r = minkowski_report(Filtration::power(kI), Filtration::power(kJ));
  CHECK(r.exact);
  CHECK(r.pass);
  // E_i = e(F1^{[i]}, F2^{[d-i]})
  CHECK(r.mixed_exact == std::vector<Rational>{3, 1, 2});
  CHECK(*r.e1_exact == 2);
  CHECK(*r.e2_exact == 3);
  CHECK(*r.e12_exact == 7);
  CHECK(*record(r, "log_convexity[1]").exact_slack == 5);
  CHECK(record(r, "root_subadditivity").pass);
  CHECK_FALSE(record(r, "root_subadditivity").equality);
  CHECK(r.records.size() == 1 + 3 + 3 + 1);
}

TEST_CASE("Minkowski equalities") {
  const auto same = minkowski_report(Filtration::power(kI), Filtration::power(kI));
  for (const auto& rec : same.records) {
    CHECK(rec.pass);
    CHECK(rec.equality);
  }
  for (int d = 1; d <= 3; ++d) {
    const auto m = MonomialIdeal::maximal(d);
    const auto r = minkowski_report(Filtration::power(m), Filtration::shifted_power(m, 1));
    CHECK(r.pass);
    CHECK(*r.e12_exact == pow(Rational(2), static_cast<unsigned>(d)));
    CHECK(record(r, "root_subadditivity").equality);
  }
}

TEST_CASE("Minkowski report with the numeric strategy") {
  VerifierOptions opts;
  opts.limit.strategy = Strategy::Numeric;
  opts.limit.max_m = 256;
  const auto r = minkowski_report(Filtration::power(kI), Filtration::power(kJ), opts);
  CHECK_FALSE(r.exact);
  CHECK(r.pass);
  CHECK(r.e12 == doctest::Approx(7.0).epsilon(0.05));
}

TEST_CASE("Rees identity") {
  const std::vector<Filtration> bh{Filtration::power(kI), Filtration::power(kJ)};
  const auto r0 = rees_identity_check(bh, 0);
  CHECK(r0.pass);
  CHECK(*r0.entry_exact == 2);
  CHECK(*r0.single_exact == 2);
  CHECK(r0.drops.size() == 1);
  const auto m = MonomialIdeal::maximal(2);
  const std::vector<Filtration> eq{Filtration::power(m), Filtration::shifted_power(m, 1)};
  const auto r1 = rees_identity_check(eq, 1);
  CHECK(r1.pass);
  CHECK(*r1.entry_exact == 1);
  const std::vector<Filtration> one{Filtration::power(kI)};
  CHECK(rees_identity_check(one, 0).pass);
  CHECK_THROWS_AS(rees_identity_check(one, 1), Error);

  const std::vector<Filtration> three{Filtration::power(kI), Filtration::power(kJ), Filtration::power(m)};
  for (std::size_t s = 0; s < 3; ++s) {
    const auto r = rees_identity_check(three, s);
    CHECK(r.pass);
    CHECK(r.drops.size() == 3);
  }

  VerifierOptions numeric;
  numeric.limit.strategy = Strategy::Numeric;
  numeric.limit.max_m = 4096;
  const std::vector<Filtration> diag{Filtration::diagonal({QuadraticIrrational::sqrt(2)}),
                                     Filtration::diagonal({QuadraticIrrational(1, 1, 3)})};
  for (std::size_t s = 0; s < 2; ++s) CHECK(rees_identity_check(diag, s, numeric).pass);
}

TEST_CASE("integrality") {
  const auto r = integrality_check(MonomialIdeal(2, {{2, 0}, {0, 2}}));
  CHECK(r.pass);
  CHECK(r.e_ideal == 4);
  CHECK(r.e_closure == 4);
  CHECK(oracle::gens(r.closure) == std::set<Exponent>{{2, 0}, {1, 1}, {0, 2}});
  CHECK(r.converse_e_power == 1);
  CHECK(r.converse_e_shifted == 1);
  CHECK(r.converse_filtrations_differ);
  CHECK(integrality_check(MonomialIdeal::maximal(3)).pass);
  CHECK_THROWS_AS(integrality_check(MonomialIdeal(2, {{1, 1}})), Error);
}

TEST_CASE("ceiling-norm non-polynomiality witness") {
  const auto cn = MultiFiltration::ceiling_norm({1, 1});
  const auto r = non_polynomial_witness(cn, standard_witness_points(), 1);
  REQUIRE(r.points.size() == 8);
  CHECK(r.points[5].n == std::vector<std::int64_t>{3, 4});
  CHECK(r.points[5].last_sample == 5);
  CHECK(r.points[5].estimate.value == 5.0);
  CHECK(r.points[0].last_sample == 1);
  CHECK(*r.points[5].ceiling_candidate == 5);
  CHECK(*r.points[2].ceiling_candidate == 2);
  CHECK(*r.points[2].sqrt_candidate == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.points[2].estimate.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  CHECK(r.max_residual > 0.05);
  CHECK(r.non_polynomial);

  // homogeneous of degree one under scaling
  LimitOptions numeric;
  numeric.strategy = Strategy::Numeric;
  for (const auto& p : standard_witness_points()) {
    const auto base = limit_normalized_colength(cn, p, numeric);
    std::vector<std::int64_t> q{3 * p[0], 3 * p[1]};
    const auto scaled = limit_normalized_colength(cn, q, numeric);
    CHECK(std::fabs(scaled.value - 3 * base.value) < 1e-2);
  }

  // a genuinely linear multifiltration fits exactly
  const auto prod = MultiFiltration::product({Filtration::power(MonomialIdeal(1, {{2}})), Filtration::power(MonomialIdeal(1, {{3}}))});
  const auto lin = non_polynomial_witness(prod, standard_witness_points(), 1);
  CHECK(lin.max_residual < 1e-9);
  CHECK_FALSE(lin.non_polynomial);
  CHECK(lin.coefficients[0] == doctest::Approx(2.0));
  CHECK(lin.coefficients[1] == doctest::Approx(3.0));

  const std::vector<std::vector<std::int64_t>> few{{1, 0}, {0, 1}, {1, 1}};
  CHECK_THROWS_AS(non_polynomial_witness(cn, few, 1), Error);
  const std::vector<std::vector<std::int64_t>> dup{{1, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}};
  CHECK_THROWS_AS(non_polynomial_witness(cn, dup, 1), Error);
}

TEST_CASE("random ideals are m-primary and reproducible") {
  for (int d = 1; d <= 4; ++d) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      std::mt19937_64 a(seed), b(seed);
      const auto I = random_primary_ideal(a, d, 5);
      CHECK(is_m_primary(I));
      CHECK(I == random_primary_ideal(b, d, 5));
      for (const auto& g : I.generators())
        for (int v : g) CHECK(v <= 5);
    }
  }
}

TEST_CASE("suites") {
  const auto mk = minkowski_suite(10, 2, 5, 100);
  REQUIRE(mk.size() == 10);
  for (std::size_t k = 0; k < mk.size(); ++k) {
    CHECK(mk[k].seed == 100 + k);
    CHECK(mk[k].pass);
    for (double s : mk[k].slacks) CHECK(s >= 0.0);
  }
  for (const auto& rec : rees_suite(5, 2, 4, 7)) CHECK(rec.pass);
  for (const auto& rec : integrality_suite(6, 3, 4, 9)) CHECK(rec.pass);
  for (const auto& rec : cross_oracle_suite(9, 3, 5, 11)) CHECK(rec.pass);
  const auto again = minkowski_suite(10, 2, 5, 100);
  for (std::size_t k = 0; k < mk.size(); ++k) CHECK(again[k].slacks == mk[k].slacks);
}
