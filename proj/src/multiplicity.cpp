#include "filtmult/multiplicity.hpp"

#include "filtmult/error.hpp"
#include "filtmult/linalg.hpp"
#include "filtmult/newton.hpp"
#include "filtmult/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace filtmult {

std::string to_string(Strategy strategy) {
  return strategy == Strategy::ExactNoetherian ? "exact_noetherian" : "numeric";
}

Strategy parse_strategy(const std::string& text) {
  if (text == "exact" || text == "exact_noetherian") return Strategy::ExactNoetherian;
  if (text == "numeric") return Strategy::Numeric;
  throw Error(ErrorCode::ParseError, "unknown strategy '" + text + "'");
}

namespace {

int common_dim(std::span<const Filtration> filtrations) {
  if (filtrations.empty()) throw Error(ErrorCode::InvalidArgument, "at least one filtration is required");
  const int d = filtrations.front().dim();
  for (const auto& f : filtrations) {
    if (f.dim() != d) throw Error(ErrorCode::DimensionMismatch, "filtrations live in different dimensions");
  }
  return d;
}

void require_arity(std::size_t expected, std::size_t got) {
  if (expected != got)
    throw Error(ErrorCode::ArityMismatch,
                "index vector of length " + std::to_string(got) + " for " + std::to_string(expected) + " filtrations");
}

Rational normalized(std::int64_t colength, std::int64_t m, int d) {
  return Rational(BigInt(colength)) / pow(Rational(m), static_cast<unsigned>(d));
}

std::vector<std::int64_t> numeric_schedule(const LimitOptions& options) {
  if (options.m0 < 1) throw Error(ErrorCode::InvalidArgument, "numeric schedule base must be positive");
  std::vector<std::int64_t> ms;
  for (std::int64_t m = options.m0; m <= options.max_m; m *= 2) ms.push_back(m);
  if (ms.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "numeric schedule needs max_m >= 2 * m0 to bound the error");
  return ms;
}

template <typename ColengthAt>
LimitEstimate numeric_limit(int d, const LimitOptions& options, ColengthAt&& colength_at) {
  LimitEstimate est;
  est.strategy = to_string(Strategy::Numeric);
  for (std::int64_t m : numeric_schedule(options)) est.samples.emplace_back(m, normalized(colength_at(m), m, d));
  // Ceilings make the sequence plateau, so a single vanishing step says little;
  // the bound is the larger of the last two steps.
  const auto& s = est.samples;
  est.value = to_double(s.back().second);
  for (std::size_t k = s.size() - 1; k >= 1 && k + 3 > s.size(); --k)
    est.error_bound = std::max(est.error_bound, std::fabs(to_double(s[k].second - s[k - 1].second)));
  return est;
}

Rational exact_limit_value(const std::vector<ExactRoute>& routes, std::span<const std::int64_t> n, int d,
                           int hs_budget) {
  if (std::all_of(n.begin(), n.end(), [](std::int64_t v) { return v == 0; })) return Rational(0);
  std::int64_t alpha = 1;
  for (const auto& r : routes) alpha = std::lcm(alpha, r.scale);
  MonomialIdeal K = MonomialIdeal::unit(d);
  for (std::size_t j = 0; j < routes.size(); ++j) {
    if (n[j] > 0) K = product(K, power(routes[j].ideal, static_cast<unsigned>(alpha / routes[j].scale * n[j])));
  }
  const BigInt e = hilbert_samuel_multiplicity(K, hs_budget);
  return Rational(e) / (Rational(factorial(static_cast<unsigned>(d))) * pow(Rational(alpha), static_cast<unsigned>(d)));
}

LimitEstimate exact_estimate(Rational value) {
  LimitEstimate est;
  est.strategy = to_string(Strategy::ExactNoetherian);
  est.exact = true;
  est.value = to_double(value);
  est.error_bound = 0.0;
  est.exact_value = std::move(value);
  return est;
}

std::vector<ExactRoute> resolve_routes(std::span<const Filtration> filtrations, const LimitOptions& options) {
  std::vector<ExactRoute> routes;
  for (const auto& f : filtrations) routes.push_back(exact_route(f, options));
  return routes;
}

// The a-th truncation has limit body conv(∪_{k<=a} N(I_k)/k). Keeps the points
// g/k that are not in the polyhedron spanned by the others, then clears
// denominators.
ExactRoute truncated_route(const Filtration& filtration) {
  const Filtration& base = filtration.base();
  const int a = filtration.truncation_level();
  const int d = filtration.dim();
  if (base.kind() == FiltrationKind::Power) return {base.base_ideal(), 1};

  std::vector<std::vector<Rational>> points;
  std::vector<std::int64_t> denominators;
  for (int k = 1; k <= a; ++k) {
    const auto I = base.ideal_at(k);
    if (I.is_unit()) return {I, 1};
    for (std::size_t i = 0; i < I.size(); ++i) {
      auto g = I.generator(i);
      std::vector<Rational> p;
      for (int v : g) p.emplace_back(v, k);
      points.push_back(std::move(p));
      denominators.push_back(k);
    }
  }
  // Componentwise domination first, then the exact polyhedron test.
  std::vector<bool> keep(points.size(), true);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      bool le = true;
      for (int c = 0; c < d && le; ++c) le = points[j][static_cast<std::size_t>(c)] <= points[i][static_cast<std::size_t>(c)];
      if (le && (points[j] != points[i] || j < i)) keep[i] = false;
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!keep[i]) continue;
    std::vector<std::vector<Rational>> others;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j != i && keep[j]) others.push_back(points[j]);
    }
    if (polyhedron_contains_lp(others, points[i])) keep[i] = false;
  }
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!keep[i]) continue;
    for (const auto& v : points[i]) scale = std::lcm(scale, static_cast<std::int64_t>(denominator(v)));
    if (scale > (1 << 20)) throw Error(ErrorCode::BudgetExceeded, "truncated limit body needs a scale above 2^20");
  }
  std::vector<Exponent> gens;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!keep[i]) continue;
    Exponent e;
    for (const auto& v : points[i]) {
      const Rational scaled = v * scale;
      if (scaled > std::numeric_limits<int>::max() / 4)
        throw Error(ErrorCode::BudgetExceeded, "truncated limit body exponents overflow");
      e.push_back(static_cast<int>(numerator(scaled)));
    }
    gens.push_back(std::move(e));
  }
  return {MonomialIdeal(d, gens), scale};
}

Rational monomial_value(std::span<const std::int64_t> point, std::span<const int> exponent) {
  Rational v = 1;
  for (std::size_t j = 0; j < exponent.size(); ++j) v *= pow(Rational(point[j]), static_cast<unsigned>(exponent[j]));
  return v;
}

BigInt type_factorial(std::span<const int> type) {
  BigInt f = 1;
  for (int t : type) f *= factorial(static_cast<unsigned>(t));
  return f;
}

// Limit body {x >= 0 : Σ w_i x_i >= 1}: the pure powers L/w_i with L clearing
// every denominator.
ExactRoute valuation_route(const Filtration& filtration) {
  std::int64_t L = 1;
  for (const auto& w : filtration.rates()) L = std::lcm(L, static_cast<std::int64_t>(numerator(w.p())));
  const int d = filtration.dim();
  std::vector<Exponent> gens;
  for (int i = 0; i < d; ++i) {
    const Rational v = Rational(L) / filtration.rates()[static_cast<std::size_t>(i)].p();
    if (denominator(v) != 1 || v > std::numeric_limits<int>::max() / 4)
      throw Error(ErrorCode::BudgetExceeded, "valuation limit body exponents overflow");
    Exponent e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = static_cast<int>(numerator(v));
    gens.push_back(std::move(e));
  }
  return {MonomialIdeal(d, gens), L};
}

}  // namespace

namespace {

BigInt stabilized_differences(const MonomialIdeal& ideal, int m_budget, const std::optional<BigInt>& expected) {
  if (!is_m_primary(ideal))
    throw Error(ErrorCode::NotMPrimary, "multiplicity of non-m-primary " + to_string(ideal));
  const int d = ideal.dim();
  if (ideal.is_unit()) return 0;
  // λ_m for m = 1, 2, ...; D_m = Δ^d λ at m uses λ_m .. λ_{m+d}.
  std::vector<BigInt> lambda{0};
  MonomialIdeal running = MonomialIdeal::unit(d);
  std::vector<BigInt> diffs;
  for (int m = 1; m <= m_budget; ++m) {
    running = product(running, ideal);
    lambda.emplace_back(colength(running));
    const int start = m - d;
    if (start < 1) continue;
    BigInt diff = 0;
    for (int k = 0; k <= d; ++k) {
      const BigInt c = binomial(d, k);
      if ((d - k) % 2 == 0) diff += c * lambda[static_cast<std::size_t>(start + k)];
      else diff -= c * lambda[static_cast<std::size_t>(start + k)];
    }
    diffs.push_back(diff);
    const std::size_t n = diffs.size();
    if (n >= 3 && diffs[n - 1] == diffs[n - 2] && diffs[n - 2] == diffs[n - 3] &&
        (!expected || diffs[n - 1] == *expected))
      return diffs[n - 1];
  }
  throw Error(ErrorCode::BudgetExceeded, "finite differences of the Hilbert–Samuel function did not stabilize by m = " +
                                             std::to_string(m_budget));
}

}  // namespace

BigInt hilbert_samuel_multiplicity(const MonomialIdeal& ideal, int m_budget) {
  std::optional<BigInt> expected;
  if (ideal.dim() <= 3 && is_m_primary(ideal) && !ideal.is_unit()) {
    const Rational e = Rational(factorial(static_cast<unsigned>(ideal.dim()))) * covolume(newton_region(ideal));
    expected = numerator(e);
  }
  return stabilized_differences(ideal, m_budget, expected);
}

BigInt finite_difference_multiplicity(const MonomialIdeal& ideal, int m_budget) {
  return stabilized_differences(ideal, m_budget, std::nullopt);
}

std::int64_t product_colength(std::span<const Filtration> filtrations, std::span<const std::int64_t> n) {
  const int d = common_dim(filtrations);
  require_arity(filtrations.size(), n.size());
  MonomialIdeal K = MonomialIdeal::unit(d);
  for (std::size_t j = 0; j < filtrations.size(); ++j) {
    if (n[j] > 0) K = product(K, filtrations[j].ideal_at(n[j]));
  }
  return colength(K);
}

ExactRoute exact_route(const Filtration& filtration, const LimitOptions& options) {
  const auto irrational = [](const std::vector<QuadraticIrrational>& rates) {
    return std::any_of(rates.begin(), rates.end(), [](const QuadraticIrrational& q) { return !q.is_rational(); });
  };
  switch (filtration.kind()) {
    case FiltrationKind::Power:
      return {filtration.base_ideal(), 1};
    case FiltrationKind::ShiftedPower:
      // I^{mn+s} and I^{mn} differ in colength by O(m^{d-1}): same limit function.
      return {filtration.base_ideal(), 1};
    case FiltrationKind::Truncated:
      return truncated_route(filtration);
    case FiltrationKind::Diagonal:
      if (irrational(filtration.rates())) break;
      if (filtration.dim() == 1) {
        const std::int64_t L = static_cast<std::int64_t>(denominator(filtration.rates()[0].p()));
        return {filtration.ideal_at(L), L};
      }
      break;
    case FiltrationKind::Valuation:
      if (irrational(filtration.rates())) break;
      return valuation_route(filtration);
    default:
      break;
  }
  auto scale = detect_noetherian_scale(filtration, options.scale_bound, options.scale_depth);
  if (!scale)
    throw Error(ErrorCode::NotNoetherian, "no Noetherian scale <= " + std::to_string(options.scale_bound) +
                                              " detected for a " + to_string(filtration.kind()) + " filtration");
  return {filtration.ideal_at(*scale), *scale};
}

LimitEstimate limit_normalized_colength(std::span<const Filtration> filtrations, std::span<const std::int64_t> n,
                                        const LimitOptions& options) {
  const int d = common_dim(filtrations);
  require_arity(filtrations.size(), n.size());
  for (auto v : n) {
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "indices must be nonnegative");
  }
  if (std::all_of(n.begin(), n.end(), [](std::int64_t v) { return v == 0; })) {
    LimitEstimate est = exact_estimate(Rational(0));
    est.strategy = to_string(options.strategy);
    return est;
  }
  if (options.strategy == Strategy::ExactNoetherian) {
    return exact_estimate(exact_limit_value(resolve_routes(filtrations, options), n, d, options.hs_budget));
  }
  return numeric_limit(d, options, [&](std::int64_t m) {
    std::vector<std::int64_t> scaled(n.begin(), n.end());
    for (auto& v : scaled) v *= m;
    return product_colength(filtrations, scaled);
  });
}

LimitEstimate limit_normalized_colength(const MultiFiltration& filtration, std::span<const std::int64_t> n,
                                        const LimitOptions& options) {
  require_arity(static_cast<std::size_t>(filtration.arity()), n.size());
  if (options.strategy == Strategy::ExactNoetherian && filtration.kind() == MultiFiltrationKind::Product)
    return limit_normalized_colength(filtration.factors(), n, options);
  if (options.strategy == Strategy::ExactNoetherian)
    throw Error(ErrorCode::NotNoetherian, "the exact route needs a product multifiltration");
  const int d = filtration.dim();
  return numeric_limit(d, options, [&](std::int64_t m) {
    std::vector<std::int64_t> scaled(n.begin(), n.end());
    for (auto& v : scaled) v *= m;
    return colength(filtration.ideal_at(scaled));
  });
}

std::vector<std::vector<int>> homogeneous_exponents(int r, int d) {
  if (r < 1 || d < 0) throw Error(ErrorCode::InvalidArgument, "need r >= 1 and d >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(r), 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == r - 1) {
      cur[static_cast<std::size_t>(j)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(j)] = v;
      self(self, j + 1, left - v);
    }
  };
  rec(rec, 0, d);
  return out;
}

SamplePoints sample_points(int r, int d, std::uint64_t seed, int max_retries) {
  if (r < 1 || d < 1) throw Error(ErrorCode::InvalidArgument, "sample_points needs r, d >= 1");
  const auto monomials = homogeneous_exponents(r, d);
  const std::size_t g = monomials.size();
  auto row_of = [&](const std::vector<std::int64_t>& p) {
    std::vector<Rational> row;
    row.reserve(g);
    for (const auto& e : monomials) row.push_back(monomial_value(p, e));
    return row;
  };

  SamplePoints out;
  if (seed == 0) {
    // Greedy: scan [1, N]^r by increasing max-norm, keep rows that raise the rank.
    std::vector<std::vector<Rational>> echelon;  // reduced rows with pivot columns
    std::vector<std::size_t> pivots;
    for (std::int64_t N = 1; out.points.size() < g; ++N) {
      std::vector<std::int64_t> p(static_cast<std::size_t>(r), 1);
      while (true) {
        if (*std::max_element(p.begin(), p.end()) == N) {
          auto row = row_of(p);
          auto reduced = row;
          for (std::size_t k = 0; k < echelon.size(); ++k) {
            if (reduced[pivots[k]] == 0) continue;
            const Rational f = reduced[pivots[k]] / echelon[k][pivots[k]];
            for (std::size_t c = 0; c < g; ++c) reduced[c] -= f * echelon[k][c];
          }
          auto nz = std::find_if(reduced.begin(), reduced.end(), [](const Rational& v) { return v != 0; });
          if (nz != reduced.end()) {
            pivots.push_back(static_cast<std::size_t>(nz - reduced.begin()));
            echelon.push_back(std::move(reduced));
            out.points.push_back(p);
            out.matrix.push_back(std::move(row));
            if (out.points.size() == g) break;
          }
        }
        int j = r - 1;
        while (j >= 0 && p[static_cast<std::size_t>(j)] == N) p[static_cast<std::size_t>(j--)] = 1;
        if (j < 0) break;
        ++p[static_cast<std::size_t>(j)];
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    const std::uint64_t span = 2 * g;
    bool found = false;
    for (int attempt = 0; attempt < max_retries && !found; ++attempt) {
      out.points.clear();
      out.matrix.clear();
      for (std::size_t k = 0; k < g; ++k) {
        std::vector<std::int64_t> p(static_cast<std::size_t>(r));
        for (auto& v : p) v = 1 + static_cast<std::int64_t>(rng() % span);
        out.matrix.push_back(row_of(p));
        out.points.push_back(std::move(p));
      }
      found = linalg::determinant(out.matrix) != 0;
    }
    if (!found)
      throw Error(ErrorCode::ExhaustedRetries, "no nonsingular sample set after " + std::to_string(max_retries) + " draws");
  }
  auto inv = linalg::inverse(out.matrix);
  if (!inv) throw Error(ErrorCode::ExhaustedRetries, "sample matrix is singular");
  out.inverse = std::move(*inv);
  return out;
}

const MixedEntry& MixedMultiplicityTable::entry(std::span<const int> type) const {
  for (const auto& e : entries) {
    if (std::equal(e.type.begin(), e.type.end(), type.begin(), type.end())) return e;
  }
  throw Error(ErrorCode::InvalidArgument, "no table entry of the requested type");
}

Rational MixedMultiplicityTable::evaluate_exact(std::span<const std::int64_t> n) const {
  if (!exact) throw Error(ErrorCode::InvalidArgument, "table is not exact");
  Rational total = 0;
  for (const auto& e : entries)
    total += *e.exact_value / Rational(type_factorial(e.type)) * monomial_value(n, e.type);
  return total;
}

double MixedMultiplicityTable::evaluate(std::span<const std::int64_t> n) const {
  if (exact) return to_double(evaluate_exact(n));
  double total = 0.0;
  for (const auto& e : entries)
    total += e.value / to_double(Rational(type_factorial(e.type))) * to_double(monomial_value(n, e.type));
  return total;
}

MixedMultiplicityTable mixed_multiplicity_table(std::span<const Filtration> filtrations, const LimitOptions& options,
                                                std::uint64_t seed) {
  const int d = common_dim(filtrations);
  const int r = static_cast<int>(filtrations.size());
  MixedMultiplicityTable table;
  table.d = d;
  table.r = r;
  table.strategy = to_string(options.strategy);
  table.witness = sample_points(r, d, seed);
  const auto monomials = homogeneous_exponents(r, d);
  const std::size_t g = monomials.size();

  if (options.strategy == Strategy::ExactNoetherian) {
    const auto routes = resolve_routes(filtrations, options);
    table.sample_values = parallel_map<LimitEstimate>(g, [&](std::size_t j) {
      return exact_estimate(exact_limit_value(routes, table.witness.points[j], d, options.hs_budget));
    });
  } else {
    table.sample_values = parallel_map<LimitEstimate>(
        g, [&](std::size_t j) { return limit_normalized_colength(filtrations, table.witness.points[j], options); });
  }
  table.exact = std::all_of(table.sample_values.begin(), table.sample_values.end(),
                            [](const LimitEstimate& e) { return e.exact; });

  for (std::size_t i = 0; i < g; ++i) {
    MixedEntry entry;
    entry.type = monomials[i];
    const Rational scale(type_factorial(monomials[i]));
    if (table.exact) {
      Rational coeff = 0;
      for (std::size_t j = 0; j < g; ++j) coeff += table.witness.inverse[i][j] * *table.sample_values[j].exact_value;
      entry.exact_value = coeff * scale;
      entry.value = to_double(*entry.exact_value);
    } else {
      double coeff = 0.0, error = 0.0;
      for (std::size_t j = 0; j < g; ++j) {
        const double w = to_double(table.witness.inverse[i][j]);
        coeff += w * table.sample_values[j].value;
        error += std::fabs(w) * table.sample_values[j].error_bound;
      }
      entry.value = coeff * to_double(scale);
      entry.error_bound = error * to_double(scale);
    }
    table.entries.push_back(std::move(entry));
  }
  return table;
}

TruncationConvergenceReport truncation_convergence(std::span<const Filtration> filtrations,
                                                   const std::vector<int>& schedule,
                                                   const std::vector<std::vector<int>>& targets,
                                                   const LimitOptions& options) {
  if (schedule.empty()) throw Error(ErrorCode::InvalidArgument, "truncation schedule is empty");
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (schedule[k] <= schedule[k - 1]) throw Error(ErrorCode::InvalidArgument, "truncation schedule must increase");
  }
  const int d = common_dim(filtrations);
  for (const auto& t : targets) {
    require_arity(filtrations.size(), t.size());
    if (std::accumulate(t.begin(), t.end(), 0) != d)
      throw Error(ErrorCode::InvalidArgument, "target type must sum to the dimension");
  }
  LimitOptions exact_options = options;
  exact_options.strategy = Strategy::ExactNoetherian;

  TruncationConvergenceReport report;
  report.schedule = schedule;
  report.targets = targets;
  report.values = parallel_map<std::vector<Rational>>(schedule.size(), [&](std::size_t k) {
    std::vector<Filtration> truncated;
    for (const auto& f : filtrations) truncated.push_back(truncate(f, schedule[k]));
    const auto table = mixed_multiplicity_table(truncated, exact_options);
    std::vector<Rational> row;
    for (const auto& t : targets) row.push_back(*table.entry(t).exact_value);
    return row;
  });
  for (std::size_t k = 0; k + 1 < schedule.size(); ++k) {
    std::vector<Rational> delta;
    for (std::size_t t = 0; t < targets.size(); ++t) delta.push_back(report.values[k + 1][t] - report.values[k][t]);
    report.deltas.push_back(std::move(delta));
  }
  return report;
}

}  // namespace filtmult
