#pragma once

#include "filtmult/filtration.hpp"
#include "filtmult/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace filtmult {

/// Polynomial with coefficients depending on n mod period, written in the
/// variables n_1, ..., n_r themselves.
struct QuasiPolynomial {
  int arity = 0;
  std::int64_t period = 1;
  int degree = 0;
  /// Exponent tuples with total degree <= degree, graded then lexicographically descending.
  std::vector<std::vector<int>> monomials;
  /// Residue class (n mod period) -> coefficients aligned with monomials.
  std::map<std::vector<std::int64_t>, std::vector<Rational>> classes;
  /// The fit reproduces λ once every n_j >= threshold.
  std::int64_t threshold = 0;

  Rational evaluate(std::span<const std::int64_t> n) const;
  /// Coefficients of total degree `degree` for one class.
  std::vector<Rational> top_coefficients(std::span<const std::int64_t> residue) const;
};

struct QuasiPolynomialOptions {
  /// Fits start at k = 0, 1, ... up to this many periods.
  int k_budget = 32;
  /// Extra periods between the first stable fit and the confirming refit.
  int window = 2;
  /// Depth of the Noetherian-scale test.
  int scale_depth = 4;
};

/// Interpolates n -> λ(R / I(1)_{n_1} ··· I(r)_{n_r}) on each residue class
/// mod `period`. Throws NotNoetherian when some scale does not divide the
/// period, DegreeMismatch when a class has total degree != d, TopCoefficientDrift
/// when top coefficients differ between classes, and BudgetExceeded when no
/// stable fit is found within k_budget periods.
QuasiPolynomial fit_quasi_polynomial(std::span<const Filtration> filtrations, std::int64_t period,
                                     const QuasiPolynomialOptions& options = {});

}  // namespace filtmult
