#include "filtmult/okounkov.hpp"

#include "filtmult/error.hpp"
#include "filtmult/hull.hpp"

#include <cmath>
#include <numeric>

namespace filtmult {

namespace {

std::int64_t degree_bound(std::int64_t m, const Rational& beta) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "semigroup level must be positive");
  if (beta <= 0) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  return static_cast<std::int64_t>(floor_of(beta * m));
}

template <typename Visit>
void for_each_in_simplex(int d, std::int64_t bound, Visit&& visit) {
  Exponent a(static_cast<std::size_t>(d), 0);
  std::int64_t total = 0;
  while (true) {
    visit(a);
    int j = 0;
    while (j < d && total + 1 > bound) {
      total -= a[static_cast<std::size_t>(j)];
      a[static_cast<std::size_t>(j++)] = 0;
    }
    if (j == d) return;
    ++a[static_cast<std::size_t>(j)];
    ++total;
  }
}

}  // namespace

SemigroupSample semigroup_points(const Filtration& filtration, std::int64_t m, const Rational& beta) {
  const std::int64_t bound = degree_bound(m, beta);
  const auto ideal = filtration.ideal_at(m);
  SemigroupSample s{filtration.dim(), m, beta, {}};
  for_each_in_simplex(s.d, bound, [&](const Exponent& a) {
    if (contains(ideal, a)) s.points.push_back(a);
  });
  return s;
}

SemigroupSample full_semigroup_points(int d, std::int64_t m, const Rational& beta) {
  const std::int64_t bound = degree_bound(m, beta);
  SemigroupSample s{d, m, beta, {}};
  for_each_in_simplex(d, bound, [&](const Exponent& a) { s.points.push_back(a); });
  return s;
}

BodyApproximation body_volume(const Filtration& filtration, std::int64_t m, const Rational& beta) {
  const int d = filtration.dim();
  if (d > 3)
    throw Error(ErrorCode::DimensionUnsupported, "body volume is implemented for dimension <= 3, got " + std::to_string(d));
  const std::int64_t bound = degree_bound(m, beta);
  const auto ideal = filtration.ideal_at(m);
  // Γ_m = ∪_g (g + simplex of side bound - |g|), so its hull is spanned by the
  // generators and their pushes along each axis.
  std::vector<geometry::Point> candidates;
  for (const auto& g : ideal.generators()) {
    const std::int64_t size = std::accumulate(g.begin(), g.end(), std::int64_t{0});
    if (size > bound) continue;
    geometry::Point p(g.begin(), g.end());
    candidates.push_back(p);
    for (int i = 0; i < d; ++i) {
      auto q = p;
      q[static_cast<std::size_t>(i)] += bound - size;
      candidates.push_back(std::move(q));
    }
  }
  BodyApproximation body;
  body.level = m;
  body.volume = 0;
  if (candidates.empty()) return body;
  const auto hull = geometry::convex_hull(d, candidates);
  body.volume = hull.volume / pow(Rational(m), static_cast<unsigned>(d));
  for (const auto& v : hull.vertices) {
    std::vector<Rational> scaled;
    for (auto c : v) scaled.emplace_back(BigInt(c), BigInt(m));
    body.vertices.push_back(std::move(scaled));
  }
  return body;
}

Rational full_body_volume(int d, std::int64_t m, const Rational& beta) {
  const Rational side = Rational(degree_bound(m, beta)) / m;
  return pow(side, static_cast<unsigned>(d)) / Rational(factorial(static_cast<unsigned>(d)));
}

Rational admissible_beta(const Filtration& filtration) {
  return Rational(2 * maximal_ideal_power_inside(filtration.ideal_at(1)));
}

VolumeLimitReport volume_limit_check(const Filtration& filtration, std::int64_t m_max, const LimitOptions& options) {
  const int d = filtration.dim();
  VolumeLimitReport report;
  report.beta = admissible_beta(filtration);
  report.m = m_max;
  report.vol_hat = full_body_volume(d, m_max, report.beta);
  report.vol_body = body_volume(filtration, m_max, report.beta).volume;
  report.difference = report.vol_hat - report.vol_body;

  const std::vector<Filtration> single{filtration};
  const std::vector<std::int64_t> one{1};
  LimitOptions exact = options;
  exact.strategy = Strategy::ExactNoetherian;
  try {
    report.limit = limit_normalized_colength(single, one, exact);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotNoetherian) throw;
    LimitOptions numeric = options;
    numeric.strategy = Strategy::Numeric;
    report.limit = limit_normalized_colength(single, one, numeric);
  }
  if (report.limit.exact) {
    const Rational gap = abs(report.difference - *report.limit.exact_value);
    report.exact_gap = gap;
    report.gap = to_double(gap);
    report.relative_gap = *report.limit.exact_value == 0 ? 0.0 : to_double(gap / *report.limit.exact_value);
  } else {
    report.gap = std::fabs(to_double(report.difference) - report.limit.value);
    report.relative_gap = report.limit.value == 0.0 ? 0.0 : report.gap / std::fabs(report.limit.value);
  }
  return report;
}

}  // namespace filtmult
