#include "vdf/ratfunc.hpp"

#include "vdf/error.hpp"

namespace vdf {

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDivision, "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly{};
    den_ = Poly(1);
    return;
  }
  Poly g = gcd(num, den);
  num = divmod(num, g).first;
  den = divmod(den, g).first;
  const Rational lc = den.leading();
  num_ = num * Poly(Rational(1 / lc));
  den_ = den.monic();
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ZeroDivision, "inverse of zero in Q(s)");
  return RatFunc(den_, num_);
}

std::string RatFunc::str() const {
  if (den_.degree() == 0) return num_.str("s");
  auto wrap = [](const Poly& p) {
    std::string s = p.str("s");
    std::size_t nonzero = 0;
    for (const auto& c : p.coeffs()) nonzero += c != 0;
    const bool atomic = nonzero == 1;
    return atomic && s.front() != '-' ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

}  // namespace vdf
