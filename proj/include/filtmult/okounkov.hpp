#pragma once

#include "filtmult/filtration.hpp"
#include "filtmult/multiplicity.hpp"
#include "filtmult/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace filtmult {

/// Level-m fiber of the graded semigroup of a filtration: the exponents of
/// monomials in I_m of total degree <= beta·m.
struct SemigroupSample {
  int d = 0;
  std::int64_t m = 0;
  Rational beta;
  std::vector<Exponent> points;
};

SemigroupSample semigroup_points(const Filtration& filtration, std::int64_t m, const Rational& beta);

/// Same fiber for the unit ideal in every degree.
SemigroupSample full_semigroup_points(int d, std::int64_t m, const Rational& beta);

/// conv(Γ_m / m).
struct BodyApproximation {
  std::int64_t level = 0;
  std::vector<std::vector<Rational>> vertices;
  Rational volume;
};

/// Exact for d <= 3; throws DimensionUnsupported otherwise.
BodyApproximation body_volume(const Filtration& filtration, std::int64_t m, const Rational& beta);

/// Volume of conv(Γ̂_m / m): the simplex with side ⌊beta·m⌋ / m.
Rational full_body_volume(int d, std::int64_t m, const Rational& beta);

/// 2c with c the least exponent such that m^c ⊆ I_1.
Rational admissible_beta(const Filtration& filtration);

struct VolumeLimitReport {
  Rational beta;
  std::int64_t m = 0;
  Rational vol_hat;
  Rational vol_body;
  Rational difference;
  LimitEstimate limit;
  double gap = 0.0;
  double relative_gap = 0.0;
  /// Filled when the limit is exact.
  std::optional<Rational> exact_gap;
};

/// Compares Vol(Γ̂ body) - Vol(Γ body) at level m_max with the colength limit,
/// taken exactly when possible and numerically otherwise.
VolumeLimitReport volume_limit_check(const Filtration& filtration, std::int64_t m_max,
                                     const LimitOptions& options = {});

}  // namespace filtmult
