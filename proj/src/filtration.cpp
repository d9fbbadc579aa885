#include "filtmult/filtration.hpp"

#include "filtmult/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace filtmult {

std::string to_string(FiltrationKind kind) {
  switch (kind) {
    case FiltrationKind::Power: return "power";
    case FiltrationKind::ShiftedPower: return "shifted_power";
    case FiltrationKind::Diagonal: return "diagonal";
    case FiltrationKind::Valuation: return "valuation";
    case FiltrationKind::Truncated: return "truncated";
    case FiltrationKind::Table: return "table";
  }
  return "unknown";
}

namespace detail {

class FiltrationNode {
 public:
  FiltrationKind kind;
  int dim = 0;
  std::optional<MonomialIdeal> base_ideal;
  int shift = 0;
  std::vector<QuadraticIrrational> rates;
  std::optional<Filtration> base;
  int level = 0;
  std::vector<MonomialIdeal> table;

  explicit FiltrationNode(FiltrationKind k) : kind(k) {}

  MonomialIdeal ideal_at(std::int64_t n) const {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "filtration index must be nonnegative");
    if (n == 0) return MonomialIdeal::unit(dim);
    if (auto hit = lookup(n)) return *hit;
    MonomialIdeal computed = compute(n);
    return store(n, std::move(computed));
  }

 private:
  std::optional<MonomialIdeal> lookup(std::int64_t n) const {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(n);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
  }

  // Concurrent fills of one index compute equal ideals; the first one wins.
  MonomialIdeal store(std::int64_t n, MonomialIdeal ideal) const {
    std::unique_lock lock(mutex_);
    return cache_.try_emplace(n, std::move(ideal)).first->second;
  }

  MonomialIdeal compute(std::int64_t n) const {
    switch (kind) {
      case FiltrationKind::Power:
        if (n == 1) return *base_ideal;
        if (n % 2 == 0) {
          MonomialIdeal half = ideal_at(n / 2);
          return product(half, half);
        }
        return product(ideal_at(n - 1), *base_ideal);
      case FiltrationKind::ShiftedPower:
        return power_node()->ideal_at(n + shift);
      case FiltrationKind::Diagonal: {
        std::vector<int> flat(static_cast<std::size_t>(dim) * dim, 0);
        for (int i = 0; i < dim; ++i) {
          flat[static_cast<std::size_t>(i) * dim + i] =
              rates[static_cast<std::size_t>(i)].ceil_multiple(n).convert_to<int>();
        }
        return MonomialIdeal::from_flat(dim, std::move(flat));
      }
      case FiltrationKind::Valuation:
        return valuation_ideal(n);
      case FiltrationKind::Truncated:
        return truncated_ideal(n);
      case FiltrationKind::Table:
        if (n > static_cast<std::int64_t>(table.size()))
          throw Error(ErrorCode::IndexOutOfTable, "index " + std::to_string(n) + " is past the table of length " +
                                                      std::to_string(table.size()));
        return table[static_cast<std::size_t>(n - 1)];
    }
    throw Error(ErrorCode::InvalidArgument, "unknown filtration kind");
  }

  const FiltrationNode* power_node() const {
    std::call_once(power_once_, [this] {
      power_ = std::make_shared<FiltrationNode>(FiltrationKind::Power);
      power_->dim = dim;
      power_->base_ideal = base_ideal;
    });
    return power_.get();
  }

  // Minimal a with Σ a_i w_i >= n: enumerate the first d-1 coordinates and
  // solve exactly for the last one.
  MonomialIdeal valuation_ideal(std::int64_t n) const {
    const Rational target(n);
    std::vector<int> flat;
    std::vector<int> prefix(static_cast<std::size_t>(dim), 0);
    const QuadraticIrrational& last = rates.back();
    auto emit_last = [&](const QuadraticIrrational& partial) {
      const QuadraticIrrational need = QuadraticIrrational::rational(target) - partial;
      int a_last = 0;
      if (need.sign() > 0) {
        // need / last, rationalized: need * conj(last) / norm(last)
        const QuadraticIrrational conj(last.p(), -last.q(), last.s());
        const Rational norm = last.p() * last.p() - last.q() * last.q() * last.s();
        a_last = (need * conj * (Rational(1) / norm)).ceil().convert_to<int>();
      }
      prefix.back() = a_last;
      flat.insert(flat.end(), prefix.begin(), prefix.end());
    };
    // depth-first over coordinates 0..dim-2
    auto rec = [&](auto&& self, int coord, const QuadraticIrrational& partial) -> void {
      if (coord == dim - 1) {
        emit_last(partial);
        return;
      }
      const QuadraticIrrational& w = rates[static_cast<std::size_t>(coord)];
      QuadraticIrrational running = partial;
      for (int a = 0;; ++a) {
        prefix[static_cast<std::size_t>(coord)] = a;
        if (running.compare(target) >= 0) {
          // every later coordinate can stay 0
          std::fill(prefix.begin() + coord + 1, prefix.end(), 0);
          flat.insert(flat.end(), prefix.begin(), prefix.end());
          break;
        }
        self(self, coord + 1, running);
        running = running + w;
      }
      prefix[static_cast<std::size_t>(coord)] = 0;
    };
    rec(rec, 0, QuadraticIrrational::rational(0));
    return MonomialIdeal::from_flat(dim, std::move(flat));
  }

  MonomialIdeal truncated_ideal(std::int64_t n) const {
    if (n <= level) return base->ideal_at(n);
    // Fill a+1..n in order so each step only needs cached smaller indices.
    std::int64_t start = level + 1;
    for (std::int64_t k = n - 1; k > level; --k) {
      if (lookup(k)) {
        start = k + 1;
        break;
      }
    }
    for (std::int64_t k = start; k < n; ++k) store(k, truncated_step(k));
    return truncated_step(n);
  }

  MonomialIdeal truncated_step(std::int64_t k) const {
    std::optional<MonomialIdeal> acc;
    for (std::int64_t i = 1; i <= std::min<std::int64_t>(level, k - 1); ++i) {
      MonomialIdeal term = product(ideal_at(i), ideal_at(k - i));
      acc = acc ? sum(*acc, term) : term;
    }
    return *acc;
  }

  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::int64_t, MonomialIdeal> cache_;
  mutable std::once_flag power_once_;
  mutable std::shared_ptr<FiltrationNode> power_;
};

class MultiFiltrationNode {
 public:
  MultiFiltrationKind kind;
  int dim = 0;
  int arity = 0;
  std::vector<Filtration> factors;
  std::vector<std::int64_t> weights;
  std::optional<MultiFiltration> base;
  int level = 0;

  explicit MultiFiltrationNode(MultiFiltrationKind k) : kind(k) {}

  MonomialIdeal ideal_at(const std::vector<std::int64_t>& n) const {
    switch (kind) {
      case MultiFiltrationKind::Product: {
        MonomialIdeal acc = MonomialIdeal::unit(dim);
        for (std::size_t j = 0; j < factors.size(); ++j) acc = product(acc, factors[j].ideal_at(n[j]));
        return acc;
      }
      case MultiFiltrationKind::CeilingNorm: {
        BigInt square = 0;
        for (std::size_t j = 0; j < n.size(); ++j) square += BigInt(weights[j]) * n[j] * n[j];
        BigInt root = boost::multiprecision::sqrt(square);
        if (root * root < square) root += 1;
        return MonomialIdeal::from_flat(1, {root.convert_to<int>()});
      }
      case MultiFiltrationKind::TruncatedMulti:
        return truncated_ideal(n);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown multifiltration kind");
  }

 private:
  MonomialIdeal truncated_ideal(const std::vector<std::int64_t>& n) const {
    std::int64_t total = 0;
    for (auto v : n) total += v;
    if (total <= level) return base->ideal_at(n);
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    }
    // Σ over parts 0 < |i| <= a with i <= n of I_{a,i} I_{a,n-i}.
    std::optional<MonomialIdeal> acc;
    std::vector<std::int64_t> part(n.size(), 0);
    std::vector<std::int64_t> rest(n);
    auto rec = [&](auto&& self, std::size_t j, std::int64_t used) -> void {
      if (j == n.size()) {
        if (used == 0) return;
        for (std::size_t k = 0; k < n.size(); ++k) rest[k] = n[k] - part[k];
        MonomialIdeal term = product(truncated_or_base(part), truncated_ideal(rest));
        acc = acc ? sum(*acc, term) : term;
        return;
      }
      for (std::int64_t v = 0; v <= n[j] && used + v <= level; ++v) {
        part[j] = v;
        self(self, j + 1, used + v);
      }
      part[j] = 0;
    };
    rec(rec, 0, 0);
    std::unique_lock lock(mutex_);
    return cache_.try_emplace(n, std::move(*acc)).first->second;
  }

  MonomialIdeal truncated_or_base(const std::vector<std::int64_t>& n) const { return base->ideal_at(n); }

  mutable std::shared_mutex mutex_;
  mutable std::map<std::vector<std::int64_t>, MonomialIdeal> cache_;
};

}  // namespace detail

namespace {

void require_positive_rates(const std::vector<QuadraticIrrational>& rates, const char* what) {
  if (rates.empty()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " list is empty");
  for (const auto& r : rates) {
    if (r.sign() <= 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
  }
}

}  // namespace

Filtration Filtration::power(MonomialIdeal base) {
  if (!is_m_primary(base)) throw Error(ErrorCode::NotMPrimary, "power filtration of non-m-primary " + to_string(base));
  auto node = std::make_shared<detail::FiltrationNode>(FiltrationKind::Power);
  node->dim = base.dim();
  node->base_ideal = std::move(base);
  return Filtration(node);
}

Filtration Filtration::shifted_power(MonomialIdeal base, int shift) {
  if (shift < 0) throw Error(ErrorCode::InvalidArgument, "shift must be nonnegative");
  if (!is_m_primary(base)) throw Error(ErrorCode::NotMPrimary, "shifted power filtration of non-m-primary " + to_string(base));
  auto node = std::make_shared<detail::FiltrationNode>(FiltrationKind::ShiftedPower);
  node->dim = base.dim();
  node->base_ideal = std::move(base);
  node->shift = shift;
  return Filtration(node);
}

Filtration Filtration::diagonal(std::vector<QuadraticIrrational> rates) {
  require_positive_rates(rates, "diagonal rates");
  auto node = std::make_shared<detail::FiltrationNode>(FiltrationKind::Diagonal);
  node->dim = static_cast<int>(rates.size());
  node->rates = std::move(rates);
  return Filtration(node);
}

Filtration Filtration::valuation(std::vector<QuadraticIrrational> weights) {
  require_positive_rates(weights, "valuation weights");
  std::int64_t s = 1;
  for (const auto& w : weights) s = common_radicand(QuadraticIrrational(0, 1, s), w);
  auto node = std::make_shared<detail::FiltrationNode>(FiltrationKind::Valuation);
  node->dim = static_cast<int>(weights.size());
  node->rates = std::move(weights);
  return Filtration(node);
}

Filtration Filtration::table(std::vector<MonomialIdeal> ideals) {
  if (ideals.empty()) throw Error(ErrorCode::InvalidArgument, "table filtration needs at least one ideal");
  const int dim = ideals.front().dim();
  for (const auto& I : ideals) {
    if (I.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "table ideals have different dimensions");
    if (!is_m_primary(I)) throw Error(ErrorCode::NotMPrimary, "table ideal " + to_string(I) + " is not m-primary");
  }
  auto node = std::make_shared<detail::FiltrationNode>(FiltrationKind::Table);
  node->dim = dim;
  node->table = std::move(ideals);
  return Filtration(node);
}

Filtration truncate(const Filtration& filtration, int a) {
  if (a < 1) throw Error(ErrorCode::InvalidArgument, "truncation level must be positive");
  auto node = std::make_shared<detail::FiltrationNode>(FiltrationKind::Truncated);
  node->dim = filtration.dim();
  node->base = filtration;
  node->level = a;
  return Filtration(node);
}

int Filtration::dim() const { return node_->dim; }
FiltrationKind Filtration::kind() const { return node_->kind; }
MonomialIdeal Filtration::ideal_at(std::int64_t n) const { return node_->ideal_at(n); }

const MonomialIdeal& Filtration::base_ideal() const {
  if (!node_->base_ideal) throw Error(ErrorCode::InvalidArgument, "filtration has no base ideal");
  return *node_->base_ideal;
}
int Filtration::shift() const { return node_->shift; }
const std::vector<QuadraticIrrational>& Filtration::rates() const { return node_->rates; }
const Filtration& Filtration::base() const {
  if (!node_->base) throw Error(ErrorCode::InvalidArgument, "filtration is not a truncation");
  return *node_->base;
}
int Filtration::truncation_level() const { return node_->level; }
const std::vector<MonomialIdeal>& Filtration::table_ideals() const { return node_->table; }

FiltrationReport verify_filtration(const Filtration& filtration, std::int64_t N) {
  FiltrationReport report;
  auto index_ok = [&](std::int64_t n) {
    return filtration.kind() != FiltrationKind::Table ||
           n <= static_cast<std::int64_t>(filtration.table_ideals().size());
  };
  for (std::int64_t n = 0; n < N && index_ok(n + 1); ++n) {
    if (!is_subset(filtration.ideal_at(n + 1), filtration.ideal_at(n))) {
      report.pass = false;
      report.violation = "descending";
      report.i = n;
      report.j = n + 1;
      return report;
    }
  }
  for (std::int64_t s = 2; s <= N && index_ok(s); ++s) {
    const MonomialIdeal target = filtration.ideal_at(s);
    for (std::int64_t i = 1; i <= s / 2; ++i) {
      if (!is_subset(product(filtration.ideal_at(i), filtration.ideal_at(s - i)), target)) {
        report.pass = false;
        report.violation = "multiplicative";
        report.i = i;
        report.j = s - i;
        return report;
      }
    }
  }
  return report;
}

std::optional<int> detect_noetherian_scale(const Filtration& filtration, int bound, int depth) {
  if (filtration.kind() == FiltrationKind::Diagonal || filtration.kind() == FiltrationKind::Valuation) {
    // An irrational rate puts an irrational vertex on the limit body, which a
    // Noetherian filtration cannot have.
    const auto& rates = filtration.rates();
    if (std::any_of(rates.begin(), rates.end(), [](const QuadraticIrrational& q) { return !q.is_rational(); }))
      return std::nullopt;
  }
  const bool bounded = filtration.kind() == FiltrationKind::Table;
  const auto table_size = static_cast<std::int64_t>(filtration.table_ideals().size());
  for (int a = 1; a <= bound; ++a) {
    if (bounded && static_cast<std::int64_t>(a) * depth > table_size) break;
    const MonomialIdeal base = filtration.ideal_at(a);
    MonomialIdeal running = base;
    bool ok = true;
    for (int i = 2; i <= depth && ok; ++i) {
      running = product(running, base);
      ok = running == filtration.ideal_at(static_cast<std::int64_t>(a) * i);
    }
    if (ok) return a;
  }
  return std::nullopt;
}

MultiFiltration MultiFiltration::product(std::vector<Filtration> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "product multifiltration needs factors");
  const int dim = factors.front().dim();
  for (const auto& f : factors) {
    if (f.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "factor filtrations have different dimensions");
  }
  auto node = std::make_shared<detail::MultiFiltrationNode>(MultiFiltrationKind::Product);
  node->dim = dim;
  node->arity = static_cast<int>(factors.size());
  node->factors = std::move(factors);
  return MultiFiltration(node);
}

MultiFiltration MultiFiltration::ceiling_norm(std::vector<std::int64_t> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "ceiling norm needs at least one weight");
  for (auto w : weights) {
    if (w <= 0) throw Error(ErrorCode::InvalidArgument, "ceiling norm weights must be positive");
  }
  auto node = std::make_shared<detail::MultiFiltrationNode>(MultiFiltrationKind::CeilingNorm);
  node->dim = 1;
  node->arity = static_cast<int>(weights.size());
  node->weights = std::move(weights);
  return MultiFiltration(node);
}

MultiFiltration MultiFiltration::truncated(MultiFiltration base, int a) {
  if (a < 1) throw Error(ErrorCode::InvalidArgument, "truncation level must be positive");
  auto node = std::make_shared<detail::MultiFiltrationNode>(MultiFiltrationKind::TruncatedMulti);
  node->dim = base.dim();
  node->arity = base.arity();
  node->base = std::move(base);
  node->level = a;
  return MultiFiltration(node);
}

int MultiFiltration::dim() const { return node_->dim; }
int MultiFiltration::arity() const { return node_->arity; }
MultiFiltrationKind MultiFiltration::kind() const { return node_->kind; }

MonomialIdeal MultiFiltration::ideal_at(std::span<const std::int64_t> n) const {
  if (static_cast<int>(n.size()) != arity())
    throw Error(ErrorCode::ArityMismatch, "index of length " + std::to_string(n.size()) + " for arity " +
                                              std::to_string(arity()));
  for (auto v : n) {
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "multifiltration index must be nonnegative");
  }
  return node_->ideal_at(std::vector<std::int64_t>(n.begin(), n.end()));
}

const std::vector<Filtration>& MultiFiltration::factors() const { return node_->factors; }
const std::vector<std::int64_t>& MultiFiltration::norm_weights() const { return node_->weights; }
const MultiFiltration& MultiFiltration::base() const {
  if (!node_->base) throw Error(ErrorCode::InvalidArgument, "multifiltration is not a truncation");
  return *node_->base;
}
int MultiFiltration::truncation_level() const { return node_->level; }

}  // namespace filtmult
