#pragma once

#include "vdf/poly.hpp"

#include <string>

namespace vdf {

/// Element of Q(s), kept as num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(Poly num, Poly den);
  RatFunc(const Poly& p) : RatFunc(p, Poly(1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : RatFunc(Poly(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static RatFunc s() { return RatFunc(Poly::var()); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }

  /// f(s + k)
  RatFunc shift(long k) const { return RatFunc(num_.shift(Rational(k)), den_.shift(Rational(k))); }
  RatFunc inverse() const;

  RatFunc& operator+=(const RatFunc& o) { return *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
  RatFunc& operator-=(const RatFunc& o) { return *this = RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
  RatFunc& operator*=(const RatFunc& o) { return *this = RatFunc(num_ * o.num_, den_ * o.den_); }
  RatFunc& operator/=(const RatFunc& o) { return *this *= o.inverse(); }
  RatFunc operator-() const { return RatFunc(-num_, den_); }

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

  std::string str() const;

 private:
  Poly num_;
  Poly den_;
};

}  // namespace vdf
