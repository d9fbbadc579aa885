#include "filtmult/monomial_ideal.hpp"

#include "filtmult/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace filtmult {

namespace {

using Flat = std::vector<int>;

void require_same_dim(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "ideals live in different dimensions (" +
                                                  std::to_string(a.dim()) + " vs " +
                                                  std::to_string(b.dim()) + ")");
}

// Lexicographically sorted copy with duplicates removed.
Flat sorted_unique(int dim, const Flat& flat) {
  const std::size_t n = flat.size() / static_cast<std::size_t>(dim);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return flat.begin() + static_cast<std::ptrdiff_t>(i * dim); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + dim, row(b), row(b) + dim);
  });
  Flat out;
  out.reserve(flat.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto r = row(order[k]);
    if (k > 0 && std::equal(r, r + dim, row(order[k - 1]))) continue;
    out.insert(out.end(), r, r + dim);
  }
  return out;
}

// Fenwick tree holding prefix minima.
class PrefixMin {
 public:
  explicit PrefixMin(std::size_t n) : tree_(n + 1, std::numeric_limits<int>::max()) {}
  void update(std::size_t pos, int value) {
    for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] = std::min(tree_[i], value);
  }
  int query(std::size_t pos) const {
    int best = std::numeric_limits<int>::max();
    for (std::size_t i = pos + 1; i > 0; i -= i & (~i + 1)) best = std::min(best, tree_[i]);
    return best;
  }

 private:
  std::vector<int> tree_;
};

// Keeps the componentwise-minimal rows. Every dominator of a row precedes it
// in lexicographic order, so one forward pass suffices.
Flat minimal_rows(int dim, const Flat& flat) {
  Flat s = sorted_unique(dim, flat);
  const std::size_t n = s.size() / static_cast<std::size_t>(dim);
  Flat out;
  if (n == 0) return out;
  if (dim == 1) return Flat{s[0]};
  if (dim == 2) {
    int min_y = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < n; ++i) {
      if (s[2 * i + 1] < min_y) {
        min_y = s[2 * i + 1];
        out.push_back(s[2 * i]);
        out.push_back(s[2 * i + 1]);
      }
    }
    return out;
  }
  if (dim == 3) {
    int max_y = 0;
    for (std::size_t i = 0; i < n; ++i) max_y = std::max(max_y, s[3 * i + 1]);
    PrefixMin kept(static_cast<std::size_t>(max_y) + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const int y = s[3 * i + 1];
      const int z = s[3 * i + 2];
      if (kept.query(static_cast<std::size_t>(y)) <= z) continue;
      kept.update(static_cast<std::size_t>(y), z);
      out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(3 * i),
                 s.begin() + static_cast<std::ptrdiff_t>(3 * i + 3));
    }
    return out;
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    const int* p = s.data() + i * dim;
    bool dominated = false;
    for (std::size_t k : kept) {
      const int* q = s.data() + k * dim;
      bool le = true;
      for (int j = 0; j < dim && le; ++j) le = q[j] <= p[j];
      if (le) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      kept.push_back(i);
      out.insert(out.end(), p, p + dim);
    }
  }
  return out;
}

bool dominated_by_any(const MonomialIdeal& ideal, const int* a) {
  const int dim = ideal.dim();
  const int* g = ideal.flat().data();
  for (std::size_t i = 0; i < ideal.size(); ++i, g += dim) {
    bool le = true;
    for (int j = 0; j < dim && le; ++j) le = g[j] <= a[j];
    if (le) return true;
  }
  return false;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorCode::BudgetExceeded, "colength exceeds 64-bit range");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorCode::BudgetExceeded, "colength exceeds 64-bit range");
  return out;
}

// Colength of a minimal, m-primary, lexicographically sorted generator set.
std::int64_t colength_rows(int dim, const Flat& s);

std::int64_t colength_2d(const Flat& s) {
  // x strictly increasing, y strictly decreasing; first x is 0 and last y is 0.
  const std::size_t n = s.size() / 2;
  std::int64_t total = 0;
  for (std::size_t k = 0; k + 1 < n; ++k)
    total = checked_add(total, checked_mul(s[2 * (k + 1)] - s[2 * k], s[2 * k + 1]));
  return total;
}

constexpr std::int64_t kDenseCellBudget = 16'000'000;

std::int64_t colength_3d(const Flat& s) {
  const std::size_t n = s.size() / 3;
  int cx = -1, cy = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (s[3 * i + 1] == 0 && s[3 * i + 2] == 0) cx = s[3 * i];
    if (s[3 * i] == 0 && s[3 * i + 2] == 0) cy = s[3 * i + 1];
  }
  if (static_cast<std::int64_t>(cx) * cy <= kDenseCellBudget) {
    // height[x][y] = least z with (x,y,z) in the ideal
    const int inf = std::numeric_limits<int>::max();
    std::vector<int> height(static_cast<std::size_t>(cx) * cy, inf);
    for (std::size_t i = 0; i < n; ++i) {
      const int x = s[3 * i], y = s[3 * i + 1], z = s[3 * i + 2];
      if (x < cx && y < cy) {
        int& cell = height[static_cast<std::size_t>(x) * cy + y];
        cell = std::min(cell, z);
      }
    }
    std::int64_t total = 0;
    for (int x = 0; x < cx; ++x) {
      for (int y = 0; y < cy; ++y) {
        int& cell = height[static_cast<std::size_t>(x) * cy + y];
        if (x > 0) cell = std::min(cell, height[static_cast<std::size_t>(x - 1) * cy + y]);
        if (y > 0) cell = std::min(cell, height[static_cast<std::size_t>(x) * cy + y - 1]);
        total = checked_add(total, cell);
      }
    }
    return total;
  }
  // Sweep the first coordinate when the dense table would be too large.
  std::int64_t total = 0;
  Flat slice;
  for (std::size_t i = 0; i < n;) {
    const int x = s[3 * i];
    for (; i < n && s[3 * i] == x; ++i) {
      slice.push_back(s[3 * i + 1]);
      slice.push_back(s[3 * i + 2]);
    }
    slice = minimal_rows(2, slice);
    const int next = i < n ? s[3 * i] : x;
    if (next > x) total = checked_add(total, checked_mul(next - x, colength_2d(slice)));
  }
  return total;
}

std::int64_t colength_rows(int dim, const Flat& s) {
  if (dim == 1) return s[0];
  if (dim == 2) return colength_2d(s);
  if (dim == 3) return colength_3d(s);
  // Slabs along the first coordinate: on [t_k, t_{k+1}) the slice ideal is
  // generated by projections of generators with first coordinate <= t_k.
  const std::size_t n = s.size() / static_cast<std::size_t>(dim);
  std::int64_t total = 0;
  Flat slice;
  for (std::size_t i = 0; i < n;) {
    const int x = s[i * dim];
    for (; i < n && s[i * dim] == x; ++i)
      slice.insert(slice.end(), s.begin() + static_cast<std::ptrdiff_t>(i * dim + 1),
                   s.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
    slice = minimal_rows(dim - 1, slice);
    const int next = i < n ? s[i * dim] : x;
    if (next > x) total = checked_add(total, checked_mul(next - x, colength_rows(dim - 1, slice)));
  }
  return total;
}

}  // namespace

MonomialIdeal::MonomialIdeal(int dim, const std::vector<Exponent>& raw) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
  if (raw.empty()) throw Error(ErrorCode::EmptyGenerators, "a monomial ideal needs at least one generator");
  Flat flat;
  flat.reserve(raw.size() * static_cast<std::size_t>(dim));
  for (const auto& e : raw) {
    if (static_cast<int>(e.size()) != dim)
      throw Error(ErrorCode::DimensionMismatch, "exponent of length " + std::to_string(e.size()) +
                                                    " in dimension " + std::to_string(dim));
    for (int v : e) {
      if (v < 0) throw Error(ErrorCode::InvalidArgument, "exponents must be nonnegative");
      flat.push_back(v);
    }
  }
  data_ = minimal_rows(dim, flat);
}

MonomialIdeal MonomialIdeal::from_flat(int dim, std::vector<int> flat) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
  if (flat.empty() || flat.size() % static_cast<std::size_t>(dim) != 0)
    throw Error(ErrorCode::EmptyGenerators, "malformed flat generator buffer");
  return MonomialIdeal(dim, minimal_rows(dim, flat), true);
}

MonomialIdeal MonomialIdeal::unit(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
  return MonomialIdeal(dim, Flat(static_cast<std::size_t>(dim), 0), true);
}

MonomialIdeal MonomialIdeal::maximal(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
  Flat flat(static_cast<std::size_t>(dim) * dim, 0);
  for (int i = 0; i < dim; ++i) flat[static_cast<std::size_t>(i) * dim + (dim - 1 - i)] = 1;
  return MonomialIdeal(dim, flat, true);
}

std::vector<Exponent> MonomialIdeal::generators() const {
  std::vector<Exponent> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto g = generator(i);
    out.emplace_back(g.begin(), g.end());
  }
  return out;
}

bool MonomialIdeal::is_unit() const noexcept {
  return size() == 1 && std::all_of(data_.begin(), data_.end(), [](int v) { return v == 0; });
}

MonomialIdeal minimalize(const std::vector<Exponent>& raw, int dim) { return MonomialIdeal(dim, raw); }

MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a, b);
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  const std::uint64_t pairs = static_cast<std::uint64_t>(a.size()) * b.size();
  if (pairs > kProductPairBudget)
    throw Error(ErrorCode::BudgetExceeded,
                "product would form " + std::to_string(pairs) + " generator sums");
  const int dim = a.dim();
  Flat flat;
  flat.reserve(pairs * static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto g = a.generator(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto h = b.generator(j);
      for (int k = 0; k < dim; ++k) flat.push_back(g[k] + h[k]);
    }
  }
  return MonomialIdeal::from_flat(dim, std::move(flat));
}

MonomialIdeal power(const MonomialIdeal& a, unsigned k) {
  MonomialIdeal out = MonomialIdeal::unit(a.dim());
  MonomialIdeal base = a;
  while (k > 0) {
    if (k & 1u) out = product(out, base);
    k >>= 1u;
    if (k > 0) base = product(base, base);
  }
  return out;
}

MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a, b);
  Flat flat = a.flat();
  flat.insert(flat.end(), b.flat().begin(), b.flat().end());
  return MonomialIdeal::from_flat(a.dim(), std::move(flat));
}

bool contains(const MonomialIdeal& ideal, std::span<const int> a) {
  if (static_cast<int>(a.size()) != ideal.dim())
    throw Error(ErrorCode::DimensionMismatch, "exponent length does not match ideal dimension");
  return dominated_by_any(ideal, a.data());
}

bool is_subset(const MonomialIdeal& inner, const MonomialIdeal& outer) {
  require_same_dim(inner, outer);
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!dominated_by_any(outer, inner.generator(i).data())) return false;
  }
  return true;
}

std::vector<int> pure_power_exponents(const MonomialIdeal& ideal) {
  const int dim = ideal.dim();
  std::vector<int> out(static_cast<std::size_t>(dim), -1);
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    auto g = ideal.generator(i);
    int support = -1, count = 0;
    for (int j = 0; j < dim; ++j) {
      if (g[j] != 0) {
        support = j;
        ++count;
      }
    }
    if (count == 0) return std::vector<int>(static_cast<std::size_t>(dim), 0);
    if (count == 1) {
      int& c = out[static_cast<std::size_t>(support)];
      if (c < 0 || g[support] < c) c = g[support];
    }
  }
  return out;
}

bool is_m_primary(const MonomialIdeal& ideal) {
  auto c = pure_power_exponents(ideal);
  return std::all_of(c.begin(), c.end(), [](int v) { return v >= 0; });
}

int maximal_ideal_power_inside(const MonomialIdeal& ideal) {
  if (!is_m_primary(ideal)) throw Error(ErrorCode::NotMPrimary, "ideal " + to_string(ideal) + " is not m-primary");
  if (ideal.is_unit()) return 0;
  // m^c ⊆ I iff every generator x^a of m^c lies in I; test degrees upward.
  // A standard monomial has degree < sum(c_i) so the loop terminates.
  const int dim = ideal.dim();
  auto c = pure_power_exponents(ideal);
  int bound = 0;
  for (int v : c) bound += v;
  for (int deg = 1; deg <= bound; ++deg) {
    bool all_inside = true;
    // Enumerate compositions of deg into dim parts.
    std::vector<int> parts(static_cast<std::size_t>(dim), 0);
    parts[0] = deg;
    while (true) {
      if (!dominated_by_any(ideal, parts.data())) {
        all_inside = false;
        break;
      }
      // next composition (reverse-lex)
      int j = dim - 2;
      while (j >= 0 && parts[static_cast<std::size_t>(j)] == 0) --j;
      if (j < 0) break;
      parts[static_cast<std::size_t>(j)] -= 1;
      const int rest = parts[static_cast<std::size_t>(dim - 1)] + 1;
      parts[static_cast<std::size_t>(dim - 1)] = 0;
      parts[static_cast<std::size_t>(j + 1)] = rest;
    }
    if (all_inside) return deg;
  }
  return bound;
}

std::int64_t colength(const MonomialIdeal& ideal) {
  if (!is_m_primary(ideal))
    throw Error(ErrorCode::NotMPrimary, "colength of " + to_string(ideal) + " is infinite");
  if (ideal.is_unit()) return 0;
  return colength_rows(ideal.dim(), ideal.flat());
}

std::string to_string(const MonomialIdeal& ideal) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    if (i) os << ", ";
    os << '[';
    auto g = ideal.generator(i);
    for (std::size_t j = 0; j < g.size(); ++j) os << (j ? "," : "") << g[j];
    os << ']';
  }
  os << ')';
  return os.str();
}

}  // namespace filtmult
