#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace filtmult {

/// Exponent vector of a monomial x^a in k[[x_1,...,x_d]].
using Exponent = std::vector<int>;

/// A monomial ideal stored as its minimal generating antichain, sorted
/// lexicographically. The zero ideal is not representable; the unit ideal is
/// the single generator (0,...,0).
class MonomialIdeal {
 public:
  /// Minimalizes `raw`; throws on an empty set, a dimension mismatch or a
  /// negative exponent.
  MonomialIdeal(int dim, const std::vector<Exponent>& raw);

  static MonomialIdeal unit(int dim);
  /// The maximal ideal (x_1, ..., x_d).
  static MonomialIdeal maximal(int dim);
  /// Builds from a flat row-major buffer of exponents (not necessarily minimal).
  static MonomialIdeal from_flat(int dim, std::vector<int> flat);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size() / static_cast<std::size_t>(dim_); }
  std::span<const int> generator(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::vector<Exponent> generators() const;
  const std::vector<int>& flat() const noexcept { return data_; }

  bool is_unit() const noexcept;

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.dim_ == b.dim_ && a.data_ == b.data_;
  }

 private:
  MonomialIdeal(int dim, std::vector<int> minimal_sorted, bool /*tag*/)
      : dim_(dim), data_(std::move(minimal_sorted)) {}

  int dim_;
  std::vector<int> data_;
};

/// Antichain of the componentwise-minimal elements of `raw`.
MonomialIdeal minimalize(const std::vector<Exponent>& raw, int dim);

MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal power(const MonomialIdeal& a, unsigned k);
MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b);

bool contains(const MonomialIdeal& ideal, std::span<const int> a);
/// I ⊆ J.
bool is_subset(const MonomialIdeal& inner, const MonomialIdeal& outer);

bool is_m_primary(const MonomialIdeal& ideal);

/// Exponent c_i of the pure power x_i^{c_i} among the generators, or -1.
std::vector<int> pure_power_exponents(const MonomialIdeal& ideal);

/// Smallest c with (x_1,...,x_d)^c ⊆ I. Throws NotMPrimary.
int maximal_ideal_power_inside(const MonomialIdeal& ideal);

/// λ(R/I): number of monomials outside I. Throws NotMPrimary or BudgetExceeded.
std::int64_t colength(const MonomialIdeal& ideal);

std::string to_string(const MonomialIdeal& ideal);

/// Upper bound on the number of generator sums formed by a single product.
inline constexpr std::uint64_t kProductPairBudget = 200'000'000;

}  // namespace filtmult
