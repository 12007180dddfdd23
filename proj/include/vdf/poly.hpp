#pragma once

#include "vdf/rational.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vdf {

/// Dense univariate polynomial over Q; coeffs()[k] multiplies var^k. The zero
/// polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly monomial(const Rational& c, std::size_t degree);
  /// The variable itself.
  static Poly var() { return monomial(1, 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  /// p(var + h)
  Poly shift(const Rational& h) const;
  Poly derivative() const;
  Poly monic() const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend bool operator==(const Poly& a, const Poly& b) = default;

  /// Euclidean division; throws ZeroDivision for a zero divisor.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  /// Monic gcd (zero when both inputs are zero).
  friend Poly gcd(Poly a, Poly b);

  std::string str(std::string_view var = "s") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace vdf
