#include "filtmult/verifier.hpp"

#include "filtmult/error.hpp"
#include "filtmult/newton.hpp"
#include "filtmult/parallel.hpp"

#include <Eigen/Dense>
#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace filtmult {

namespace {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval around(double v, double err) { return {v - err, v + err}; }

  friend Interval operator*(const Interval& a, const Interval& b) {
    const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
  }
  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
};

Interval ipow(Interval x, int k) {
  Interval r{1.0, 1.0};
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

Interval iroot(Interval x, int d) {
  return {std::pow(std::max(x.lo, 0.0), 1.0 / d), std::pow(std::max(x.hi, 0.0), 1.0 / d)};
}

// Rational with an interval attached: exact when `exact` is set.
struct Quantity {
  std::optional<Rational> exact;
  Interval range;
  double value = 0.0;

  static Quantity from_exact(Rational q) {
    const double v = to_double(q);
    return {std::move(q), {v, v}, v};
  }
  static Quantity from_numeric(double v, double err) { return {std::nullopt, Interval::around(v, err), v}; }
};

Quantity qmul(const Quantity& a, const Quantity& b) {
  if (a.exact && b.exact) return Quantity::from_exact(*a.exact * *b.exact);
  return {std::nullopt, a.range * b.range, a.value * b.value};
}

Quantity qpow(const Quantity& a, int k) {
  if (a.exact) return Quantity::from_exact(pow(*a.exact, static_cast<unsigned>(k)));
  return {std::nullopt, ipow(a.range, k), std::pow(a.value, k)};
}

InequalityRecord compare_records(std::string name, const Quantity& left, const Quantity& right, double tolerance) {
  InequalityRecord rec;
  rec.name = std::move(name);
  rec.left = left.value;
  rec.right = right.value;
  rec.slack = right.value - left.value;
  if (left.exact && right.exact) {
    rec.exact = true;
    rec.exact_slack = *right.exact - *left.exact;
    rec.slack = to_double(*rec.exact_slack);
    rec.equality = *rec.exact_slack == 0;
    rec.pass = *rec.exact_slack >= 0;
  } else {
    rec.pass = left.range.lo <= right.range.hi + tolerance;
  }
  return rec;
}

// Integer d-th root of a nonnegative BigInt: (floor, exact?).
std::pair<BigInt, bool> integer_root(const BigInt& x, int d) {
  BigInt r;
  const int exact = mpz_root(r.backend().data(), x.backend().data(), static_cast<unsigned long>(d));
  return {r, exact != 0};
}

std::optional<Rational> rational_root(const Rational& x, int d) {
  auto [n, n_exact] = integer_root(numerator(x), d);
  auto [m, m_exact] = integer_root(denominator(x), d);
  if (!n_exact || !m_exact) return std::nullopt;
  return Rational(n, m);
}

// [lo, hi] / 2^bits enclosing x^{1/d}.
std::pair<BigInt, BigInt> root_bracket(const Rational& x, int d, unsigned bits) {
  BigInt scaled = numerator(x) << (bits * static_cast<unsigned>(d));
  scaled /= denominator(x);
  auto [r, exact] = integer_root(scaled, d);
  return {r, r + 1};
}

std::string describe(const MonomialIdeal& I) { return to_string(I); }

Quantity multiplicity_of(std::span<const Filtration> fs, std::span<const std::int64_t> n, int d,
                         const LimitOptions& options) {
  const auto est = limit_normalized_colength(fs, n, options);
  const Rational df(factorial(static_cast<unsigned>(d)));
  if (est.exact) return Quantity::from_exact(*est.exact_value * df);
  const double f = to_double(df);
  return Quantity::from_numeric(est.value * f, est.error_bound * f);
}

Quantity entry_quantity(const MixedEntry& e) {
  if (e.exact_value) return Quantity::from_exact(*e.exact_value);
  return Quantity::from_numeric(e.value, e.error_bound);
}

}  // namespace

int compare_root_sum(const Rational& a, const Rational& b, const Rational& c, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "root degree must be positive");
  if (a < 0 || b < 0 || c < 0) throw Error(ErrorCode::InvalidArgument, "roots of negative numbers");
  auto sign = [](const Rational& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); };
  if (d == 1) return sign(a - b - c);
  if (b == 0) return sign(a - c);
  if (c == 0) return sign(a - b);
  if (d == 2) {
    // √a vs √b + √c  <=>  a - b - c vs 2√(bc)
    const Rational t = a - b - c;
    if (t < 0) return -1;
    return sign(t * t - 4 * b * c);
  }
  if (auto rho = rational_root(b / c, d)) {
    // b^{1/d} + c^{1/d} = c^{1/d}(1 + ρ)
    return sign(a - c * pow(1 + *rho, static_cast<unsigned>(d)));
  }
  // Not a d-th power ratio: the two sides differ, so refinement terminates.
  for (unsigned bits = 32; bits <= (1u << 16); bits *= 2) {
    const auto [alo, ahi] = root_bracket(a, d, bits);
    const auto [blo, bhi] = root_bracket(b, d, bits);
    const auto [clo, chi] = root_bracket(c, d, bits);
    if (ahi < blo + clo) return -1;
    if (alo > bhi + chi) return 1;
  }
  throw Error(ErrorCode::BudgetExceeded, "root comparison undecided at 65536 bits");
}

InequalityReport minkowski_report(const Filtration& f1, const Filtration& f2, const VerifierOptions& options) {
  if (f1.dim() != f2.dim()) throw Error(ErrorCode::DimensionMismatch, "filtrations live in different dimensions");
  const int d = f1.dim();
  const std::vector<Filtration> pair{f1, f2};
  const auto table = mixed_multiplicity_table(pair, options.limit);

  std::vector<Quantity> E;
  for (int i = 0; i <= d; ++i) E.push_back(entry_quantity(table.entry(std::vector<int>{i, d - i})));
  const std::vector<std::int64_t> one{1}, ones{1, 1};
  const Quantity e1 = multiplicity_of(std::span(pair).subspan(0, 1), one, d, options.limit);
  const Quantity e2 = multiplicity_of(std::span(pair).subspan(1, 1), one, d, options.limit);
  const Quantity e12 = multiplicity_of(pair, ones, d, options.limit);

  InequalityReport report;
  report.d = d;
  report.e1 = e1.value;
  report.e2 = e2.value;
  report.e12 = e12.value;
  report.e1_exact = e1.exact;
  report.e2_exact = e2.exact;
  report.e12_exact = e12.exact;
  for (const auto& q : E) report.mixed.push_back(q.value);
  report.exact = table.exact && e1.exact && e2.exact && e12.exact;
  if (report.exact) {
    for (const auto& q : E) report.mixed_exact.push_back(*q.exact);
  }
  const double tol = options.numeric_tolerance;

  for (int i = 1; i <= d - 1; ++i) {
    report.records.push_back(compare_records("log_convexity[" + std::to_string(i) + "]", qpow(E[static_cast<std::size_t>(i)], 2),
                                             qmul(E[static_cast<std::size_t>(i + 1)], E[static_cast<std::size_t>(i - 1)]), tol));
  }
  for (int i = 0; i <= d; ++i) {
    report.records.push_back(compare_records("product_bound[" + std::to_string(i) + "]",
                                             qmul(E[static_cast<std::size_t>(i)], E[static_cast<std::size_t>(d - i)]),
                                             qmul(e1, e2), tol));
  }
  for (int i = 0; i <= d; ++i) {
    report.records.push_back(compare_records("power_bound[" + std::to_string(i) + "]", qpow(E[static_cast<std::size_t>(d - i)], d),
                                             qmul(qpow(e1, d - i), qpow(e2, i)), tol));
  }

  InequalityRecord root;
  root.name = "root_subadditivity";
  root.left = std::pow(e12.value, 1.0 / d);
  root.right = std::pow(e1.value, 1.0 / d) + std::pow(e2.value, 1.0 / d);
  root.slack = root.right - root.left;
  if (e1.exact && e2.exact && e12.exact) {
    root.exact = true;
    const int cmp = compare_root_sum(*e12.exact, *e1.exact, *e2.exact, d);
    root.equality = cmp == 0;
    root.pass = cmp <= 0;
    if (root.equality) root.slack = 0.0;
  } else {
    const Interval left = iroot(e12.range, d);
    const Interval right = iroot(e1.range, d) + iroot(e2.range, d);
    root.pass = left.lo <= right.hi + tol;
  }
  report.records.push_back(std::move(root));
  report.pass = std::all_of(report.records.begin(), report.records.end(), [](const InequalityRecord& r) { return r.pass; });
  return report;
}

ReesReport rees_identity_check(const std::vector<Filtration>& filtrations, std::size_t slot,
                               const VerifierOptions& options) {
  if (slot >= filtrations.size()) throw Error(ErrorCode::InvalidArgument, "slot index out of range");
  const int d = filtrations.front().dim();
  const std::size_t r = filtrations.size();
  const auto table = mixed_multiplicity_table(filtrations, options.limit);

  ReesReport report;
  report.slot = slot;
  report.type.assign(r, 0);
  report.type[slot] = d;
  const auto& entry = table.entry(report.type);
  const std::vector<std::int64_t> one{1};
  const Quantity single = multiplicity_of(std::span(filtrations).subspan(slot, 1), one, d, options.limit);
  report.entry = entry.value;
  report.single = single.value;
  report.entry_exact = entry.exact_value;
  report.single_exact = single.exact;
  auto agree = [&](const Quantity& a, const Quantity& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    return std::fabs(a.value - b.value) <= (a.range.hi - a.range.lo) / 2 + (b.range.hi - b.range.lo) / 2 +
                                               options.numeric_tolerance;
  };
  report.concentrated_pass = agree(entry_quantity(entry), single);

  if (r >= 2) {
    std::vector<Filtration> rest;
    for (std::size_t j = 0; j < r; ++j) {
      if (j != slot) rest.push_back(filtrations[j]);
    }
    const auto reduced = mixed_multiplicity_table(rest, options.limit);
    for (const auto& e : table.entries) {
      if (e.type[slot] != 0) continue;
      std::vector<int> t;
      for (std::size_t j = 0; j < r; ++j) {
        if (j != slot) t.push_back(e.type[j]);
      }
      const auto& other = reduced.entry(t);
      ReesReport::Drop drop{e.type, e.value, other.value, agree(entry_quantity(e), entry_quantity(other))};
      report.drops.push_back(std::move(drop));
    }
  }
  report.pass = report.concentrated_pass &&
                std::all_of(report.drops.begin(), report.drops.end(), [](const ReesReport::Drop& x) { return x.pass; });
  return report;
}

IntegralityReport integrality_check(const MonomialIdeal& ideal, const VerifierOptions& options) {
  if (!is_m_primary(ideal)) throw Error(ErrorCode::NotMPrimary, "integrality check needs an m-primary ideal");
  const int d = ideal.dim();
  LimitOptions exact = options.limit;
  exact.strategy = Strategy::ExactNoetherian;
  const std::vector<std::int64_t> one{1};
  auto e_of = [&](const Filtration& f) {
    const std::vector<Filtration> single{f};
    return *multiplicity_of(single, one, d, exact).exact;
  };
  IntegralityReport report{ideal, integral_closure(ideal), 0, 0, true, 0, 0, false};
  report.e_ideal = e_of(Filtration::power(report.ideal));
  report.e_closure = e_of(Filtration::power(report.closure));
  report.pass = report.e_ideal == report.e_closure;

  const auto m = MonomialIdeal::maximal(d);
  const auto power = Filtration::power(m);
  const auto shifted = Filtration::shifted_power(m, 1);
  report.converse_e_power = e_of(power);
  report.converse_e_shifted = e_of(shifted);
  report.converse_filtrations_differ = !(power.ideal_at(1) == shifted.ideal_at(1));
  return report;
}

std::vector<std::vector<std::int64_t>> standard_witness_points() {
  return {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 4}, {2, 3}, {5, 12}};
}

NonPolynomialReport non_polynomial_witness(const MultiFiltration& filtration,
                                           const std::vector<std::vector<std::int64_t>>& points, int degree,
                                           const VerifierOptions& options, double threshold) {
  const int r = filtration.arity();
  const auto monomials = homogeneous_exponents(r, degree);
  if (points.size() < monomials.size() + 3)
    throw Error(ErrorCode::InvalidArgument, "need at least " + std::to_string(monomials.size() + 3) + " points");
  if (std::set(points.begin(), points.end()).size() != points.size())
    throw Error(ErrorCode::InvalidArgument, "witness points must be distinct");

  LimitOptions numeric = options.limit;
  numeric.strategy = Strategy::Numeric;
  NonPolynomialReport report;
  report.degree = degree;
  report.monomials = monomials;
  report.threshold = threshold;
  report.points = parallel_map<WitnessPoint>(points.size(), [&](std::size_t k) {
    WitnessPoint w;
    w.n = points[k];
    w.estimate = limit_normalized_colength(filtration, w.n, numeric);
    w.last_sample = w.estimate.samples.back().second;
    if (filtration.kind() == MultiFiltrationKind::CeilingNorm) {
      BigInt s = 0;
      for (std::size_t j = 0; j < w.n.size(); ++j) s += BigInt(filtration.norm_weights()[j]) * w.n[j] * w.n[j];
      w.sqrt_candidate = std::sqrt(s.convert_to<double>());
      auto [root, exact] = integer_root(s, 2);
      w.ceiling_candidate = exact ? root : root + 1;
    }
    return w;
  });

  Eigen::MatrixXd A(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(monomials.size()));
  Eigen::VectorXd b(static_cast<Eigen::Index>(points.size()));
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (std::size_t c = 0; c < monomials.size(); ++c) {
      double v = 1.0;
      for (std::size_t j = 0; j < monomials[c].size(); ++j) v *= std::pow(static_cast<double>(points[k][j]), monomials[c][j]);
      A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = v;
    }
    b(static_cast<Eigen::Index>(k)) = report.points[k].estimate.value;
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd fitted = A * x;
  report.coefficients.assign(x.data(), x.data() + x.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    auto& w = report.points[k];
    w.fitted = fitted(static_cast<Eigen::Index>(k));
    w.residual = w.estimate.value - w.fitted;
    report.max_residual = std::max(report.max_residual, std::fabs(w.residual));
  }
  report.non_polynomial = report.max_residual > threshold;
  return report;
}

MonomialIdeal random_primary_ideal(std::mt19937_64& rng, int d, int max_exponent) {
  if (d < 1 || max_exponent < 1) throw Error(ErrorCode::InvalidArgument, "need d >= 1 and max_exponent >= 1");
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  if (d == 2) {
    // Staircase corners of a monotone lattice path from (0, h) to (w, 0).
    const int w = uniform(1, max_exponent), h = uniform(1, max_exponent);
    const int corners = uniform(0, std::min(w, h) - 1);
    std::vector<int> xs, ys;
    for (int v = 1; v < w; ++v) xs.push_back(v);
    for (int v = 1; v < h; ++v) ys.push_back(v);
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    xs.resize(static_cast<std::size_t>(corners));
    ys.resize(static_cast<std::size_t>(corners));
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end(), std::greater<>());
    std::vector<Exponent> gens{{0, h}, {w, 0}};
    for (int k = 0; k < corners; ++k) gens.push_back({xs[static_cast<std::size_t>(k)], ys[static_cast<std::size_t>(k)]});
    return MonomialIdeal(2, gens);
  }
  std::vector<Exponent> gens;
  for (int i = 0; i < d; ++i) {
    Exponent e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = uniform(1, max_exponent);
    gens.push_back(std::move(e));
  }
  const int extra = d == 1 ? 0 : uniform(0, 3);
  for (int k = 0; k < extra; ++k) {
    Exponent e(static_cast<std::size_t>(d));
    for (auto& v : e) v = uniform(0, max_exponent);
    if (std::any_of(e.begin(), e.end(), [](int v) { return v > 0; })) gens.push_back(std::move(e));
  }
  return MonomialIdeal(d, gens);
}

std::vector<SuiteRecord> minkowski_suite(int count, int d, int max_exponent, std::uint64_t seed,
                                         const VerifierOptions& options) {
  return parallel_map<SuiteRecord>(static_cast<std::size_t>(count), [&](std::size_t k) {
    SuiteRecord rec;
    rec.seed = seed + k;
    std::mt19937_64 rng(rec.seed);
    const auto I = random_primary_ideal(rng, d, max_exponent);
    const auto J = random_primary_ideal(rng, d, max_exponent);
    rec.name = "minkowski " + describe(I) + " " + describe(J);
    const auto report = minkowski_report(Filtration::power(I), Filtration::power(J), options);
    rec.pass = report.pass;
    for (const auto& r : report.records) rec.slacks.push_back(r.slack);
    return rec;
  });
}

std::vector<SuiteRecord> rees_suite(int count, int d, int max_exponent, std::uint64_t seed,
                                    const VerifierOptions& options) {
  return parallel_map<SuiteRecord>(static_cast<std::size_t>(count), [&](std::size_t k) {
    SuiteRecord rec;
    rec.seed = seed + k;
    std::mt19937_64 rng(rec.seed);
    const auto I = random_primary_ideal(rng, d, max_exponent);
    const auto J = random_primary_ideal(rng, d, max_exponent);
    rec.name = "rees " + describe(I) + " " + describe(J);
    const std::vector<Filtration> fs{Filtration::power(I), Filtration::power(J)};
    for (std::size_t slot = 0; slot < 2; ++slot) {
      const auto report = rees_identity_check(fs, slot, options);
      rec.pass = rec.pass && report.pass;
      rec.slacks.push_back(report.single - report.entry);
    }
    return rec;
  });
}

std::vector<SuiteRecord> integrality_suite(int count, int max_dim, int max_exponent, std::uint64_t seed,
                                           const VerifierOptions& options) {
  return parallel_map<SuiteRecord>(static_cast<std::size_t>(count), [&](std::size_t k) {
    SuiteRecord rec;
    rec.seed = seed + k;
    std::mt19937_64 rng(rec.seed);
    const int d = 1 + static_cast<int>(k % static_cast<std::size_t>(max_dim));
    const auto I = random_primary_ideal(rng, d, max_exponent);
    const auto report = integrality_check(I, options);
    rec.name = "integrality " + describe(I);
    rec.pass = report.pass;
    rec.slacks.push_back(to_double(report.e_closure - report.e_ideal));
    std::ostringstream detail;
    detail << "e=" << to_fraction_string(report.e_ideal) << " closure=" << describe(report.closure);
    rec.detail = detail.str();
    return rec;
  });
}

std::vector<SuiteRecord> cross_oracle_suite(int count, int max_dim, int max_exponent, std::uint64_t seed) {
  return parallel_map<SuiteRecord>(static_cast<std::size_t>(count), [&](std::size_t k) {
    SuiteRecord rec;
    rec.seed = seed + k;
    std::mt19937_64 rng(rec.seed);
    const int d = 1 + static_cast<int>(k % static_cast<std::size_t>(max_dim));
    const auto I = random_primary_ideal(rng, d, max_exponent);
    const Rational e(finite_difference_multiplicity(I));
    const Rational v = Rational(factorial(static_cast<unsigned>(d))) * covolume(newton_region(I));
    rec.name = "cross_oracle " + describe(I);
    rec.pass = e == v;
    rec.slacks.push_back(to_double(v - e));
    rec.detail = "e=" + to_fraction_string(e) + " scaled_covolume=" + to_fraction_string(v);
    return rec;
  });
}

}  // namespace filtmult
