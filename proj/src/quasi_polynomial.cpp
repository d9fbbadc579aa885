#include "filtmult/quasi_polynomial.hpp"

#include "filtmult/error.hpp"
#include "filtmult/linalg.hpp"
#include "filtmult/multiplicity.hpp"

#include <algorithm>
#include <numeric>

namespace filtmult {

namespace {

std::vector<std::vector<int>> monomials_up_to(int r, int degree) {
  std::vector<std::vector<int>> out;
  for (int t = 0; t <= degree; ++t) {
    for (auto& e : homogeneous_exponents(r, t)) out.push_back(std::move(e));
  }
  return out;
}

std::vector<Rational> monomial_row(const std::vector<std::vector<int>>& monomials, std::span<const std::int64_t> n) {
  std::vector<Rational> row;
  row.reserve(monomials.size());
  for (const auto& e : monomials) {
    BigInt v = 1;
    for (std::size_t j = 0; j < e.size(); ++j) {
      for (int p = 0; p < e[j]; ++p) v *= n[j];
    }
    row.emplace_back(v);
  }
  return row;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Offsets t ∈ ℕ^r with |t| <= degree: a unisolvent set for that degree.
std::vector<std::vector<std::int64_t>> simplex_nodes(int r, int degree) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& e : monomials_up_to(r, degree)) out.emplace_back(e.begin(), e.end());
  return out;
}

class ClassFitter {
 public:
  ClassFitter(std::span<const Filtration> filtrations, std::int64_t period, std::vector<std::int64_t> residue,
              int degree)
      : filtrations_(filtrations),
        period_(period),
        residue_(std::move(residue)),
        monomials_(monomials_up_to(static_cast<int>(residue_.size()), degree)),
        nodes_(simplex_nodes(static_cast<int>(residue_.size()), degree)) {}

  const std::vector<std::vector<int>>& monomials() const { return monomials_; }

  std::vector<std::int64_t> point(std::int64_t base, std::span<const std::int64_t> t) const {
    std::vector<std::int64_t> n(residue_.size());
    for (std::size_t j = 0; j < n.size(); ++j) n[j] = period_ * (base + t[j]) + residue_[j];
    return n;
  }

  Rational lambda(std::span<const std::int64_t> n) const { return Rational(BigInt(product_colength(filtrations_, n))); }

  std::vector<Rational> fit(std::int64_t base) const {
    linalg::Matrix B;
    std::vector<Rational> b;
    for (const auto& t : nodes_) {
      const auto n = point(base, t);
      B.push_back(monomial_row(monomials_, n));
      b.push_back(lambda(n));
    }
    auto coeffs = linalg::solve(B, b);
    if (!coeffs) throw Error(ErrorCode::InvalidArgument, "interpolation nodes are not unisolvent");
    return *coeffs;
  }

  bool agrees(const std::vector<Rational>& coeffs, std::span<const std::int64_t> n) const {
    return dot(coeffs, monomial_row(monomials_, n)) == lambda(n);
  }

 private:
  std::span<const Filtration> filtrations_;
  std::int64_t period_;
  std::vector<std::int64_t> residue_;
  std::vector<std::vector<int>> monomials_;
  std::vector<std::vector<std::int64_t>> nodes_;
};

}  // namespace

Rational QuasiPolynomial::evaluate(std::span<const std::int64_t> n) const {
  if (static_cast<int>(n.size()) != arity) throw Error(ErrorCode::ArityMismatch, "quasi-polynomial arity mismatch");
  std::vector<std::int64_t> residue(n.size());
  for (std::size_t j = 0; j < n.size(); ++j) residue[j] = ((n[j] % period) + period) % period;
  return dot(classes.at(residue), monomial_row(monomials, n));
}

std::vector<Rational> QuasiPolynomial::top_coefficients(std::span<const std::int64_t> residue) const {
  const auto& coeffs = classes.at(std::vector<std::int64_t>(residue.begin(), residue.end()));
  std::vector<Rational> top;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (std::accumulate(monomials[i].begin(), monomials[i].end(), 0) == degree) top.push_back(coeffs[i]);
  }
  return top;
}

QuasiPolynomial fit_quasi_polynomial(std::span<const Filtration> filtrations, std::int64_t period,
                                     const QuasiPolynomialOptions& options) {
  if (filtrations.empty()) throw Error(ErrorCode::InvalidArgument, "at least one filtration is required");
  if (period < 1) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  const int d = filtrations.front().dim();
  const int r = static_cast<int>(filtrations.size());
  for (const auto& f : filtrations) {
    if (f.dim() != d) throw Error(ErrorCode::DimensionMismatch, "filtrations live in different dimensions");
    const auto scale = detect_noetherian_scale(f, static_cast<int>(period), options.scale_depth);
    if (!scale || period % *scale != 0)
      throw Error(ErrorCode::NotNoetherian,
                  "no Noetherian scale dividing the period " + std::to_string(period) + " for a " + to_string(f.kind()) +
                      " filtration");
  }
  // One degree of headroom so that a wrong degree shows up as a coefficient.
  const int fit_degree = d + 1;

  QuasiPolynomial q;
  q.arity = r;
  q.period = period;
  q.degree = d;
  q.monomials = monomials_up_to(r, fit_degree);

  std::vector<std::vector<std::int64_t>> residues;
  {
    std::vector<std::int64_t> b(static_cast<std::size_t>(r), 0);
    while (true) {
      residues.push_back(b);
      int j = r - 1;
      while (j >= 0 && b[static_cast<std::size_t>(j)] == period - 1) b[static_cast<std::size_t>(j--)] = 0;
      if (j < 0) break;
      ++b[static_cast<std::size_t>(j)];
    }
  }

  std::int64_t threshold = 0;
  for (const auto& residue : residues) {
    const ClassFitter fitter(filtrations, period, residue, fit_degree);
    std::vector<std::int64_t> far(static_cast<std::size_t>(r), 0), edge(static_cast<std::size_t>(r), 0);
    far[0] = fit_degree + 1;
    std::fill(edge.begin(), edge.end(), fit_degree);
    std::optional<std::vector<Rational>> found;
    std::int64_t base = 0;
    for (; base <= options.k_budget && !found; ++base) {
      auto coeffs = fitter.fit(base);
      if (!fitter.agrees(coeffs, fitter.point(base, far)) || !fitter.agrees(coeffs, fitter.point(base, edge))) continue;
      if (fitter.fit(base + options.window) != coeffs) continue;
      found = std::move(coeffs);
    }
    if (!found)
      throw Error(ErrorCode::BudgetExceeded,
                  "no stable quasi-polynomial fit within " + std::to_string(options.k_budget) + " periods");
    const std::int64_t start = base - 1;
    // Five fresh points beyond the refit window.
    for (int s = 0; s < 5; ++s) {
      std::vector<std::int64_t> t(static_cast<std::size_t>(r));
      for (int j = 0; j < r; ++j) t[static_cast<std::size_t>(j)] = options.window + fit_degree + 1 + (s * (j + 2)) % 7 + s;
      if (!fitter.agrees(*found, fitter.point(start, t)))
        throw Error(ErrorCode::BudgetExceeded, "quasi-polynomial fit failed validation at a fresh point");
    }
    threshold = std::max(threshold, period * start);
    q.classes.emplace(residue, std::move(*found));
  }

  // Degree check, then drop the headroom column block.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < q.monomials.size(); ++i) {
    const int total = std::accumulate(q.monomials[i].begin(), q.monomials[i].end(), 0);
    if (total <= d) {
      keep.push_back(i);
      continue;
    }
    for (const auto& [residue, coeffs] : q.classes) {
      if (coeffs[i] != 0) throw Error(ErrorCode::DegreeMismatch, "fitted total degree exceeds the dimension");
    }
  }
  for (auto& [residue, coeffs] : q.classes) {
    std::vector<Rational> trimmed;
    for (auto i : keep) trimmed.push_back(coeffs[i]);
    coeffs = std::move(trimmed);
  }
  std::vector<std::vector<int>> kept;
  for (auto i : keep) kept.push_back(q.monomials[i]);
  q.monomials = std::move(kept);
  q.threshold = threshold;

  const auto reference = q.top_coefficients(residues.front());
  if (std::all_of(reference.begin(), reference.end(), [](const Rational& v) { return v == 0; }))
    throw Error(ErrorCode::DegreeMismatch, "fitted total degree is below the dimension");
  for (const auto& residue : residues) {
    if (q.top_coefficients(residue) != reference)
      throw Error(ErrorCode::TopCoefficientDrift, "top-degree coefficients differ between residue classes");
  }
  return q;
}

}  // namespace filtmult
