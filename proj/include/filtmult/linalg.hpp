#pragma once

#include "filtmult/rational.hpp"

#include <optional>
#include <vector>

namespace filtmult::linalg {

using Matrix = std::vector<std::vector<Rational>>;

/// Exact inverse by Gauss–Jordan elimination; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Exact solution of m x = b; nullopt when m is singular.
std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b);

Rational determinant(Matrix m);

std::vector<Rational> multiply(const Matrix& m, const std::vector<Rational>& v);

}  // namespace filtmult::linalg
