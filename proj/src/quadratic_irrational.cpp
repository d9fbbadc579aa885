#include "filtmult/quadratic_irrational.hpp"

#include "filtmult/error.hpp"

#include <cmath>

namespace filtmult {

namespace {

bool is_squarefree(std::int64_t s) {
  for (std::int64_t f = 2; f * f <= s; ++f) {
    if (s % (f * f) == 0) return false;
  }
  return true;
}

int sign_of(const Rational& r) { return r.sign(); }

}  // namespace

QuadraticIrrational::QuadraticIrrational(Rational p, Rational q, std::int64_t s)
    : p_(std::move(p)), q_(std::move(q)), s_(s) {
  if (s < 1 || !is_squarefree(s))
    throw Error(ErrorCode::InvalidArgument, "radicand must be a squarefree positive integer, got " + std::to_string(s));
  normalize();
}

void QuadraticIrrational::normalize() {
  if (s_ == 1) {
    p_ += q_;
    q_ = 0;
  }
  if (q_ == 0) s_ = 1;
}

int QuadraticIrrational::sign() const {
  const int sp = sign_of(p_);
  const int sq = sign_of(q_);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // p and q√s have opposite signs: compare p^2 with q^2 s.
  const Rational lhs = p_ * p_;
  const Rational rhs = q_ * q_ * s_;
  if (lhs == rhs) return 0;  // only possible when s is a square, excluded by normalize
  return lhs > rhs ? sp : sq;
}

int QuadraticIrrational::compare(const Rational& r) const {
  return QuadraticIrrational(p_ - r, q_, s_).sign();
}

int QuadraticIrrational::compare(const QuadraticIrrational& other) const { return (*this - other).sign(); }

BigInt QuadraticIrrational::ceil_multiple(std::int64_t n) const {
  const QuadraticIrrational x = *this * Rational(n);
  // Start from a floating estimate and correct with exact comparisons.
  BigInt k(static_cast<long long>(std::ceil(x.to_double())));
  while (x.compare(Rational(k)) > 0) k += 1;
  while (x.compare(Rational(k - 1)) <= 0) k -= 1;
  return k;
}

double QuadraticIrrational::to_double() const {
  return filtmult::to_double(p_) + filtmult::to_double(q_) * std::sqrt(static_cast<double>(s_));
}

std::string QuadraticIrrational::to_string() const {
  if (is_rational()) return to_fraction_string(p_);
  return to_fraction_string(p_) + " + " + to_fraction_string(q_) + "*sqrt(" + std::to_string(s_) + ")";
}

std::int64_t common_radicand(const QuadraticIrrational& a, const QuadraticIrrational& b) {
  if (a.is_rational()) return b.s();
  if (b.is_rational() || a.s() == b.s()) return a.s();
  throw Error(ErrorCode::InvalidArgument,
              "values in Q(sqrt(" + std::to_string(a.s()) + ")) and Q(sqrt(" + std::to_string(b.s()) +
                  ")) cannot be combined exactly");
}

QuadraticIrrational operator+(const QuadraticIrrational& a, const QuadraticIrrational& b) {
  const std::int64_t s = common_radicand(a, b);
  return QuadraticIrrational(a.p_ + b.p_, a.q_ + b.q_, s);
}

QuadraticIrrational operator-(const QuadraticIrrational& a, const QuadraticIrrational& b) { return a + (-b); }

QuadraticIrrational operator*(const QuadraticIrrational& a, const Rational& k) {
  return QuadraticIrrational(a.p_ * k, a.q_ * k, a.s_);
}

QuadraticIrrational operator*(const QuadraticIrrational& a, const QuadraticIrrational& b) {
  const std::int64_t s = common_radicand(a, b);
  return QuadraticIrrational(a.p_ * b.p_ + a.q_ * b.q_ * s, a.p_ * b.q_ + a.q_ * b.p_, s);
}

}  // namespace filtmult
