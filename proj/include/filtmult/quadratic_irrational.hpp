#pragma once

#include "filtmult/rational.hpp"

#include <cstdint>
#include <string>

namespace filtmult {

/// θ = p + q·√s with rational p, q and a squarefree s >= 1. All comparisons are
/// exact; ⌈nθ⌉ is computed with integer arithmetic only.
class QuadraticIrrational {
 public:
  QuadraticIrrational() = default;
  QuadraticIrrational(Rational p, Rational q, std::int64_t s);
  /// The rational number p.
  static QuadraticIrrational rational(Rational p) { return QuadraticIrrational(std::move(p), 0, 1); }
  /// √s.
  static QuadraticIrrational sqrt(std::int64_t s) { return QuadraticIrrational(0, 1, s); }

  const Rational& p() const noexcept { return p_; }
  const Rational& q() const noexcept { return q_; }
  std::int64_t s() const noexcept { return s_; }
  bool is_rational() const noexcept { return q_ == 0 || s_ == 1; }

  /// -1, 0 or +1.
  int sign() const;
  int compare(const Rational& r) const;
  int compare(const QuadraticIrrational& other) const;

  /// Smallest integer k with k >= n·θ.
  BigInt ceil_multiple(std::int64_t n) const;
  BigInt ceil() const { return ceil_multiple(1); }

  double to_double() const;
  std::string to_string() const;

  /// Field operations within Q(√s); throws InvalidArgument when the radicands differ.
  friend QuadraticIrrational operator+(const QuadraticIrrational& a, const QuadraticIrrational& b);
  friend QuadraticIrrational operator-(const QuadraticIrrational& a, const QuadraticIrrational& b);
  friend QuadraticIrrational operator*(const QuadraticIrrational& a, const Rational& k);
  friend QuadraticIrrational operator*(const QuadraticIrrational& a, const QuadraticIrrational& b);
  QuadraticIrrational operator-() const { return QuadraticIrrational(-p_, -q_, s_); }

  friend bool operator==(const QuadraticIrrational& a, const QuadraticIrrational& b) {
    return a.compare(b) == 0;
  }

 private:
  void normalize();

  Rational p_ = 0;
  Rational q_ = 0;
  std::int64_t s_ = 1;
};

/// Common radicand of two values (1 if both are rational). Throws if incompatible.
std::int64_t common_radicand(const QuadraticIrrational& a, const QuadraticIrrational& b);

}  // namespace filtmult
