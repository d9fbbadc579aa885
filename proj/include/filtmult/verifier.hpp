#pragma once

#include "filtmult/filtration.hpp"
#include "filtmult/multiplicity.hpp"
#include "filtmult/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace filtmult {

struct VerifierOptions {
  LimitOptions limit;
  /// Slack allowed on numeric (inexact) comparisons, on top of the propagated error bounds.
  double numeric_tolerance = 1e-9;
};

struct InequalityRecord {
  std::string name;
  double left = 0.0;
  double right = 0.0;
  /// right - left.
  double slack = 0.0;
  /// Exact slack when both sides are rational.
  std::optional<Rational> exact_slack;
  bool exact = false;
  /// Both sides decided equal in exact arithmetic.
  bool equality = false;
  bool pass = true;
};

struct InequalityReport {
  int d = 0;
  bool exact = false;
  /// e(F1), e(F2), e(F1 F2) and E_i = e(F1^{[i]}, F2^{[d-i]}) for i = 0..d.
  double e1 = 0.0, e2 = 0.0, e12 = 0.0;
  std::vector<double> mixed;
  std::optional<Rational> e1_exact, e2_exact, e12_exact;
  std::vector<Rational> mixed_exact;
  std::vector<InequalityRecord> records;
  bool pass = true;
};

/// Exact comparison of a^{1/d} with b^{1/d} + c^{1/d} for nonnegative
/// rationals: -1, 0 or 1.
int compare_root_sum(const Rational& a, const Rational& b, const Rational& c, int d);

InequalityReport minkowski_report(const Filtration& f1, const Filtration& f2, const VerifierOptions& options = {});

struct ReesReport {
  std::size_t slot = 0;
  std::vector<int> type;
  double entry = 0.0;
  double single = 0.0;
  std::optional<Rational> entry_exact, single_exact;
  bool concentrated_pass = true;
  /// Entries with d_slot = 0 against the table without that filtration.
  struct Drop {
    std::vector<int> type;
    double full = 0.0;
    double reduced = 0.0;
    bool pass = true;
  };
  std::vector<Drop> drops;
  bool pass = true;
};

/// slot is 0-based.
ReesReport rees_identity_check(const std::vector<Filtration>& filtrations, std::size_t slot,
                               const VerifierOptions& options = {});

struct IntegralityReport {
  MonomialIdeal ideal;
  MonomialIdeal closure;
  Rational e_ideal;
  Rational e_closure;
  bool pass = true;
  /// Converse demonstration: {m^n} and {m^{n+1}} have equal multiplicities but
  /// differ as filtrations. Informational.
  Rational converse_e_power;
  Rational converse_e_shifted;
  bool converse_filtrations_differ = false;
};

IntegralityReport integrality_check(const MonomialIdeal& ideal, const VerifierOptions& options = {});

struct WitnessPoint {
  std::vector<std::int64_t> n;
  LimitEstimate estimate;
  /// Value of the last sample, exact.
  Rational last_sample;
  double fitted = 0.0;
  double residual = 0.0;
  /// Closed-form candidates for the ceiling-norm filtration: √(Σ w n²) and its ceiling.
  std::optional<double> sqrt_candidate;
  std::optional<BigInt> ceiling_candidate;
};

struct NonPolynomialReport {
  int degree = 0;
  std::vector<std::vector<int>> monomials;
  std::vector<double> coefficients;
  std::vector<WitnessPoint> points;
  double max_residual = 0.0;
  double threshold = 0.05;
  bool non_polynomial = false;
};

/// Least-squares fit of a homogeneous degree-`degree` form to P(n) at the
/// given points; needs at least C(r-1+degree, r-1) + 3 distinct points.
NonPolynomialReport non_polynomial_witness(const MultiFiltration& filtration,
                                           const std::vector<std::vector<std::int64_t>>& points, int degree,
                                           const VerifierOptions& options = {}, double threshold = 0.05);

/// The eight standard points of the ceiling-norm demonstration.
std::vector<std::vector<std::int64_t>> standard_witness_points();

/// Random m-primary ideal: a lattice-path staircase for d = 2, pure powers
/// plus random monomials otherwise. Every exponent is <= max_exponent.
MonomialIdeal random_primary_ideal(std::mt19937_64& rng, int d, int max_exponent);

struct SuiteRecord {
  std::uint64_t seed = 0;
  std::string name;
  bool pass = true;
  std::vector<double> slacks;
  std::string detail;
};

/// One record per instance, instance k seeded with seed + k, ordered by k.
std::vector<SuiteRecord> minkowski_suite(int count, int d, int max_exponent, std::uint64_t seed,
                                         const VerifierOptions& options = {});
std::vector<SuiteRecord> rees_suite(int count, int d, int max_exponent, std::uint64_t seed,
                                    const VerifierOptions& options = {});
std::vector<SuiteRecord> integrality_suite(int count, int max_dim, int max_exponent, std::uint64_t seed,
                                           const VerifierOptions& options = {});
/// e(I) by finite differences against d!·covolume.
std::vector<SuiteRecord> cross_oracle_suite(int count, int max_dim, int max_exponent, std::uint64_t seed);

}  // namespace filtmult
