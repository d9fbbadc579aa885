#pragma once

#include "filtmult/filtration.hpp"
#include "filtmult/monomial_ideal.hpp"
#include "filtmult/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace filtmult {

enum class Strategy { ExactNoetherian, Numeric };

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& text);

struct LimitOptions {
  Strategy strategy = Strategy::ExactNoetherian;
  /// Exact route: search bound and depth for detect_noetherian_scale.
  int scale_bound = 64;
  int scale_depth = 4;
  /// Numeric route: m runs over m0 * 2^k up to max_m.
  std::int64_t m0 = 1;
  std::int64_t max_m = 8192;
  /// Largest power m examined by the Hilbert–Samuel stabilization.
  int hs_budget = 64;
};

/// Value of lim λ(R/I(1)_{mn_1}···I(r)_{mn_r}) / m^d with provenance.
struct LimitEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  bool exact = false;
  std::optional<Rational> exact_value;
  std::string strategy;
  /// (m, λ/m^d), strictly increasing in m. Empty for the exact route.
  std::vector<std::pair<std::int64_t, Rational>> samples;
};

/// e(I) from the stabilized d-th finite differences of m -> λ(R/I^m)
/// (three consecutive equal differences). For d <= 3 a plateau that disagrees
/// with d!·covolume is transient and the scan continues. Throws NotMPrimary or
/// BudgetExceeded.
BigInt hilbert_samuel_multiplicity(const MonomialIdeal& ideal, int m_budget = 64);

/// The first plateau of three equal d-th differences, with no cross-check.
BigInt finite_difference_multiplicity(const MonomialIdeal& ideal, int m_budget = 64);

/// λ(R / I(1)_{n_1} ··· I(r)_{n_r}).
std::int64_t product_colength(std::span<const Filtration> filtrations, std::span<const std::int64_t> n);

LimitEstimate limit_normalized_colength(std::span<const Filtration> filtrations,
                                        std::span<const std::int64_t> n, const LimitOptions& options);

/// Numeric limit for a multigraded filtration; exact_value is filled only for
/// the exact route on a Product multifiltration.
LimitEstimate limit_normalized_colength(const MultiFiltration& filtration, std::span<const std::int64_t> n,
                                        const LimitOptions& options);

/// Exponent tuples (i_1,...,i_r) with Σ i_j = d, lexicographically descending.
std::vector<std::vector<int>> homogeneous_exponents(int r, int d);

struct SamplePoints {
  std::vector<std::vector<std::int64_t>> points;
  /// Columns of B follow homogeneous_exponents(r, d).
  std::vector<std::vector<Rational>> matrix;
  std::vector<std::vector<Rational>> inverse;
};

/// g = C(r-1+d, r-1) points with a nonsingular degree-d evaluation matrix.
/// seed == 0 picks the canonical points (greedy by increasing max-norm, then
/// lexicographic); any other seed draws from [1, 2g]^r and resamples.
SamplePoints sample_points(int r, int d, std::uint64_t seed = 0, int max_retries = 1000);

struct MixedEntry {
  std::vector<int> type;
  double value = 0.0;
  /// Σ_j |(B^{-1})_{ij}| · error_j scaled like the entry; 0 when exact.
  double error_bound = 0.0;
  std::optional<Rational> exact_value;
};

struct MixedMultiplicityTable {
  int d = 0;
  int r = 0;
  bool exact = false;
  std::string strategy;
  std::vector<MixedEntry> entries;
  SamplePoints witness;
  std::vector<LimitEstimate> sample_values;

  const MixedEntry& entry(std::span<const int> type) const;
  /// G(n) = Σ e_type / (d_1!···d_r!) · n^type, exact when the table is.
  Rational evaluate_exact(std::span<const std::int64_t> n) const;
  double evaluate(std::span<const std::int64_t> n) const;
};

MixedMultiplicityTable mixed_multiplicity_table(std::span<const Filtration> filtrations,
                                                const LimitOptions& options, std::uint64_t seed = 0);

struct TruncationConvergenceReport {
  std::vector<int> schedule;
  std::vector<std::vector<int>> targets;
  /// values[k][t]: mixed multiplicity of type targets[t] for the schedule[k]-th truncations.
  std::vector<std::vector<Rational>> values;
  /// deltas[k][t] = values[k+1][t] - values[k][t].
  std::vector<std::vector<Rational>> deltas;
};

TruncationConvergenceReport truncation_convergence(std::span<const Filtration> filtrations,
                                                   const std::vector<int>& schedule,
                                                   const std::vector<std::vector<int>>& targets,
                                                   const LimitOptions& options);

/// Exact description of a limit body: N(ideal) / scale, so that the limit at
/// n is e(ideal^{n}) / (d! scale^d) for a single filtration.
struct ExactRoute {
  MonomialIdeal ideal;
  std::int64_t scale = 1;
};

/// Power and ShiftedPower use the base ideal; a truncation uses its limit body
/// conv(∪_{k<=a} N(I_k)/k); any other kind needs a detected Noetherian scale a
/// and uses I_a. Throws NotNoetherian or BudgetExceeded.
ExactRoute exact_route(const Filtration& filtration, const LimitOptions& options);

}  // namespace filtmult
