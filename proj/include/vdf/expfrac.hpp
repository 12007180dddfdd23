#pragma once

#include "vdf/rational.hpp"

#include <map>
#include <string>

namespace vdf {

/// Finite sum sum_i q_i E^{r_i} in the group algebra Q[E^Q] (E stands for e).
using ExpPoly = std::map<Rational, Rational>;

/// Element of the fraction field of Q[E^Q]. Normal form: gcd(num, den) = 1,
/// den has smallest exponent 0 and leading (largest-exponent) coefficient 1.
class ExpFrac {
 public:
  ExpFrac() : den_{{Rational(0), Rational(1)}} {}
  ExpFrac(ExpPoly num, ExpPoly den);
  ExpFrac(const Rational& c);  // NOLINT(google-explicit-constructor)
  ExpFrac(long c) : ExpFrac(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  /// c * E^r
  static ExpFrac exp(const Rational& r, const Rational& c = 1);

  const ExpPoly& num() const noexcept { return num_; }
  const ExpPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.empty(); }
  /// True for plain rationals.
  bool is_rational() const noexcept;

  ExpFrac inverse() const;

  ExpFrac& operator+=(const ExpFrac& o);
  ExpFrac& operator-=(const ExpFrac& o);
  ExpFrac& operator*=(const ExpFrac& o);
  ExpFrac& operator/=(const ExpFrac& o) { return *this *= o.inverse(); }
  ExpFrac operator-() const;

  friend ExpFrac operator+(ExpFrac a, const ExpFrac& b) { return a += b; }
  friend ExpFrac operator-(ExpFrac a, const ExpFrac& b) { return a -= b; }
  friend ExpFrac operator*(ExpFrac a, const ExpFrac& b) { return a *= b; }
  friend ExpFrac operator/(ExpFrac a, const ExpFrac& b) { return a /= b; }
  friend bool operator==(const ExpFrac& a, const ExpFrac& b) = default;

  std::string str() const;

 private:
  ExpPoly num_;
  ExpPoly den_;
};

std::string to_string(const ExpPoly& p);

}  // namespace vdf
