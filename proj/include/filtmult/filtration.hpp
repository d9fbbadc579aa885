#pragma once

#include "filtmult/monomial_ideal.hpp"
#include "filtmult/quadratic_irrational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace filtmult {

enum class FiltrationKind { Power, ShiftedPower, Diagonal, Valuation, Truncated, Table };

std::string to_string(FiltrationKind kind);

namespace detail {
class FiltrationNode;
class MultiFiltrationNode;
}  // namespace detail

/// A filtration I_0 = R ⊇ I_1 ⊇ I_2 ⊇ ... of m-primary monomial ideals with
/// I_i I_j ⊆ I_{i+j}.
///
/// Filtration is a cheap handle onto an immutable description. Computed ideals
/// are memoized per description; ideal_at may be called from several threads.
class Filtration {
 public:
  /// I_n = I^n.
  static Filtration power(MonomialIdeal base);
  /// I_0 = R and I_n = I^{n+shift} for n >= 1.
  static Filtration shifted_power(MonomialIdeal base, int shift);
  /// I_n = (x_1^{⌈nθ_1⌉}, ..., x_d^{⌈nθ_d⌉}); every θ_i > 0.
  static Filtration diagonal(std::vector<QuadraticIrrational> rates);
  /// I_n spanned by the x^a with Σ a_i w_i >= n; every w_i > 0 and all weights
  /// share one radicand.
  static Filtration valuation(std::vector<QuadraticIrrational> weights);
  /// I_1, ..., I_N given explicitly; I_0 = R.
  static Filtration table(std::vector<MonomialIdeal> ideals);

  int dim() const;
  FiltrationKind kind() const;

  /// Throws IndexOutOfTable past the end of a Table filtration.
  MonomialIdeal ideal_at(std::int64_t n) const;

  /// Power and ShiftedPower.
  const MonomialIdeal& base_ideal() const;
  int shift() const;
  /// Diagonal rates or valuation weights.
  const std::vector<QuadraticIrrational>& rates() const;
  /// Truncated.
  const Filtration& base() const;
  int truncation_level() const;
  /// Table.
  const std::vector<MonomialIdeal>& table_ideals() const;

  bool same_as(const Filtration& other) const noexcept { return node_ == other.node_; }

 private:
  explicit Filtration(std::shared_ptr<const detail::FiltrationNode> node) : node_(std::move(node)) {}
  friend Filtration truncate(const Filtration& filtration, int a);

  std::shared_ptr<const detail::FiltrationNode> node_;
};

/// The a-th truncation: I_{a,n} = I_n for n <= a and, beyond a, the sum of the
/// products I_{a,i} I_{a,n-i} over 0 < i < n. Evaluated with parts i <= a,
/// which yields the same ideals.
Filtration truncate(const Filtration& filtration, int a);

struct FiltrationReport {
  bool pass = true;
  /// "descending" (I_{i+1} ⊄ I_i, j = i + 1) or "multiplicative" (I_i I_j ⊄ I_{i+j}).
  std::string violation;
  std::int64_t i = 0;
  std::int64_t j = 0;
};

/// Checks I_{n+1} ⊆ I_n for n < N and I_i I_j ⊆ I_{i+j} for i + j <= N.
FiltrationReport verify_filtration(const Filtration& filtration, std::int64_t N);

/// Smallest a <= bound with I_{a i} = (I_a)^i for 2 <= i <= depth. Evidence,
/// not proof, of Noetherianity; absent when no candidate passes.
std::optional<int> detect_noetherian_scale(const Filtration& filtration, int bound, int depth);

enum class MultiFiltrationKind { Product, CeilingNorm, TruncatedMulti };

/// Multigraded filtration {I_{n_1,...,n_r}} with I_a I_b ⊆ I_{a+b}.
class MultiFiltration {
 public:
  /// I_n = I(1)_{n_1} ··· I(r)_{n_r}.
  static MultiFiltration product(std::vector<Filtration> factors);
  /// d = 1: I_n = (x^{⌈√(Σ w_j n_j²)⌉}); the arity is weights.size().
  static MultiFiltration ceiling_norm(std::vector<std::int64_t> weights);
  /// Multigraded truncation at total degree a.
  static MultiFiltration truncated(MultiFiltration base, int a);

  int dim() const;
  int arity() const;
  MultiFiltrationKind kind() const;

  /// Throws ArityMismatch when n.size() != arity().
  MonomialIdeal ideal_at(std::span<const std::int64_t> n) const;

  const std::vector<Filtration>& factors() const;
  const std::vector<std::int64_t>& norm_weights() const;
  const MultiFiltration& base() const;
  int truncation_level() const;

 private:
  explicit MultiFiltration(std::shared_ptr<const detail::MultiFiltrationNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::MultiFiltrationNode> node_;
};

}  // namespace filtmult
