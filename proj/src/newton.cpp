#include "filtmult/newton.hpp"

#include "filtmult/error.hpp"

#include <algorithm>
#include <optional>

namespace filtmult {

namespace {

int max_coordinate(const MonomialIdeal& ideal) {
  const auto& flat = ideal.flat();
  return flat.empty() ? 0 : *std::max_element(flat.begin(), flat.end());
}

// Every generator with each subset of its coordinates raised to `cap`. Their
// hull is the Newton polyhedron clipped to the box [0, cap]^d.
std::vector<geometry::Point> clipped_vertices(const MonomialIdeal& ideal, int cap) {
  const int dim = ideal.dim();
  std::vector<geometry::Point> pts;
  pts.reserve(ideal.size() << dim);
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    auto g = ideal.generator(i);
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
      geometry::Point p(static_cast<std::size_t>(dim));
      for (int j = 0; j < dim; ++j) p[static_cast<std::size_t>(j)] = (mask >> j) & 1u ? cap : g[j];
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

// Dense simplex tableau maximizing 1·λ subject to G^T λ <= a, λ >= 0, with
// Bland's rule. Returns true once the objective reaches 1 or is unbounded.
template <typename Coordinate>
bool lp_reaches_one(std::size_t rows, std::size_t n, Coordinate&& coordinate, std::span<const Rational> a) {
  const std::size_t cols = n + rows;  // structural + slack
  // tableau[r] = coefficients..., rhs
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < n; ++k) t[r][k] = coordinate(k, r);
    t[r][n + r] = 1;
    t[r][cols] = a[r];
  }
  std::vector<Rational> reduced(cols, 0);  // reduced costs for maximization
  for (std::size_t k = 0; k < n; ++k) reduced[k] = 1;
  Rational objective = 0;
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = n + r;

  while (true) {
    if (objective >= 1) return true;
    std::optional<std::size_t> enter;
    for (std::size_t c = 0; c < cols; ++c) {
      if (reduced[c] > 0) {
        enter = c;
        break;
      }
    }
    if (!enter) return false;
    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][*enter] <= 0) continue;
      Rational ratio = t[r][cols] / t[r][*enter];
      if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[*leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (!leave) return true;  // unbounded
    const std::size_t pr = *leave;
    const Rational pivot = t[pr][*enter];
    for (auto& v : t[pr]) v /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || t[r][*enter] == 0) continue;
      const Rational f = t[r][*enter];
      for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= f * t[pr][c];
    }
    const Rational f = reduced[*enter];
    for (std::size_t c = 0; c < cols; ++c) reduced[c] -= f * t[pr][c];
    objective += f * t[pr][cols];
    basis[pr] = *enter;
  }
}

}  // namespace

NewtonRegion::NewtonRegion(MonomialIdeal ideal) : ideal_(std::move(ideal)) {
  if (dim() > 3) return;
  has_facets_ = true;
  auto hull = geometry::convex_hull(dim(), clipped_vertices(ideal_, max_coordinate(ideal_) + 1));
  for (auto& h : hull.facets) {
    const bool nonneg = std::all_of(h.normal.begin(), h.normal.end(), [](std::int64_t v) { return v >= 0; });
    if (nonneg && h.offset > 0) facets_.push_back(std::move(h));
  }
}

bool NewtonRegion::contains(std::span<const int> a) const {
  if (static_cast<int>(a.size()) != dim())
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match Newton region");
  if (std::any_of(a.begin(), a.end(), [](int v) { return v < 0; })) return false;
  if (has_facets_) {
    geometry::Point p(a.begin(), a.end());
    return std::all_of(facets_.begin(), facets_.end(), [&](const geometry::HalfSpace& h) { return h.contains(p); });
  }
  std::vector<Rational> q(a.begin(), a.end());
  return newton_polyhedron_contains_lp(ideal_, q);
}

NewtonRegion newton_region(const MonomialIdeal& ideal) { return NewtonRegion(ideal); }

Rational covolume(const NewtonRegion& region) {
  const auto& ideal = region.ideal();
  if (!is_m_primary(ideal)) throw Error(ErrorCode::NotMPrimary, "covolume of " + to_string(ideal) + " is infinite");
  if (region.dim() > 3)
    throw Error(ErrorCode::DimensionUnsupported,
                "exact covolume is implemented for dimension <= 3, got " + std::to_string(region.dim()));
  if (ideal.is_unit()) return Rational(0);
  const int cap = max_coordinate(ideal) + 1;
  auto hull = geometry::convex_hull(region.dim(), clipped_vertices(ideal, cap));
  return pow(Rational(cap), static_cast<unsigned>(region.dim())) - hull.volume;
}

MonomialIdeal integral_closure(const MonomialIdeal& ideal) {
  const int dim = ideal.dim();
  if (ideal.is_unit()) return ideal;
  const NewtonRegion region(ideal);
  // Minimal lattice points of the region have every coordinate <= the largest
  // generator coordinate.
  const int cap = max_coordinate(ideal);
  std::vector<int> flat;
  std::vector<int> a(static_cast<std::size_t>(dim), 0);
  while (true) {
    if (region.contains(a)) flat.insert(flat.end(), a.begin(), a.end());
    int j = 0;
    while (j < dim && a[static_cast<std::size_t>(j)] == cap) a[static_cast<std::size_t>(j++)] = 0;
    if (j == dim) break;
    ++a[static_cast<std::size_t>(j)];
  }
  return MonomialIdeal::from_flat(dim, std::move(flat));
}

bool newton_polyhedron_contains_lp(const MonomialIdeal& ideal, std::span<const Rational> a) {
  if (static_cast<int>(a.size()) != ideal.dim())
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match ideal");
  if (std::any_of(a.begin(), a.end(), [](const Rational& v) { return v < 0; })) return false;
  return lp_reaches_one(static_cast<std::size_t>(ideal.dim()), ideal.size(),
                        [&](std::size_t k, std::size_t r) { return Rational(ideal.generator(k)[r]); }, a);
}

bool polyhedron_contains_lp(const std::vector<std::vector<Rational>>& points, std::span<const Rational> a) {
  if (points.empty()) return false;
  for (const auto& p : points) {
    if (p.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "point dimensions differ");
  }
  if (std::any_of(a.begin(), a.end(), [](const Rational& v) { return v < 0; })) return false;
  return lp_reaches_one(a.size(), points.size(), [&](std::size_t k, std::size_t r) { return points[k][r]; }, a);
}

}  // namespace filtmult
