#include "vdf/expfrac.hpp"

#include "vdf/error.hpp"
#include "vdf/poly.hpp"

namespace vdf {

namespace {

ExpPoly add(const ExpPoly& a, const ExpPoly& b, bool negate_b) {
  ExpPoly out = a;
  for (const auto& [e, c] : b) {
    Rational& slot = out[e];
    slot += negate_b ? Rational(-c) : c;
    if (slot == 0) out.erase(e);
  }
  return out;
}

ExpPoly mul(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Rational e = ea + eb;
      Rational& slot = out[e];
      slot += ca * cb;
      if (slot == 0) out.erase(e);
    }
  return out;
}

// Laurent polynomials in u = E^{1/N}, shifted to start at u^0.
Poly to_poly(const ExpPoly& p, const Integer& n, const Rational& shift) {
  std::vector<Rational> coeffs;
  for (const auto& [e, c] : p) {
    Rational k = (e - shift) * Rational(n);
    const std::size_t idx = k.get_num().get_ui();
    if (coeffs.size() <= idx) coeffs.resize(idx + 1, Rational(0));
    coeffs[idx] = c;
  }
  return Poly(std::move(coeffs));
}

ExpPoly from_poly(const Poly& p, const Integer& n, const Rational& shift) {
  ExpPoly out;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k)
    if (p.coeffs()[k] != 0) {
      Rational e(Integer(static_cast<unsigned long>(k)), n);
      e.canonicalize();
      out[e + shift] = p.coeffs()[k];
    }
  return out;
}

}  // namespace

ExpFrac::ExpFrac(ExpPoly num, ExpPoly den) {
  std::erase_if(num, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(den, [](const auto& kv) { return kv.second == 0; });
  if (den.empty()) throw Error(ErrorKind::ZeroDivision, "exponential fraction with zero denominator");
  if (num.empty()) {
    den_ = {{Rational(0), Rational(1)}};
    return;
  }
  Integer n = 1;
  for (const ExpPoly* p : {&num, &den})
    for (const auto& kv : *p) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), kv.first.get_den_mpz_t());
  const Rational num_shift = num.begin()->first;
  const Rational den_shift = den.begin()->first;
  Poly pn = to_poly(num, n, num_shift);
  Poly pd = to_poly(den, n, den_shift);
  Poly g = gcd(pn, pd);
  pn = divmod(pn, g).first;
  pd = divmod(pd, g).first;
  const Rational lc = pd.leading();
  pn = pn * Poly(Rational(1 / lc));
  pd = pd.monic();
  // Unit factor E^{num_shift - den_shift} goes into the numerator.
  num_ = from_poly(pn, n, num_shift - den_shift);
  den_ = from_poly(pd, n, Rational(0));
}

ExpFrac::ExpFrac(const Rational& c) : den_{{Rational(0), Rational(1)}} {
  if (c != 0) num_[Rational(0)] = c;
}

ExpFrac ExpFrac::exp(const Rational& r, const Rational& c) {
  return ExpFrac(ExpPoly{{r, c}}, ExpPoly{{Rational(0), Rational(1)}});
}

bool ExpFrac::is_rational() const noexcept {
  return den_.size() == 1 && (num_.empty() || (num_.size() == 1 && num_.begin()->first == 0));
}

ExpFrac ExpFrac::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ZeroDivision, "inverse of zero in Q[E^Q]");
  return ExpFrac(den_, num_);
}

ExpFrac& ExpFrac::operator+=(const ExpFrac& o) {
  if (den_ == o.den_) return *this = ExpFrac(add(num_, o.num_, false), den_);
  return *this = ExpFrac(add(mul(num_, o.den_), mul(o.num_, den_), false), mul(den_, o.den_));
}

ExpFrac& ExpFrac::operator-=(const ExpFrac& o) {
  if (den_ == o.den_) return *this = ExpFrac(add(num_, o.num_, true), den_);
  return *this = ExpFrac(add(mul(num_, o.den_), mul(o.num_, den_), true), mul(den_, o.den_));
}

ExpFrac& ExpFrac::operator*=(const ExpFrac& o) { return *this = ExpFrac(mul(num_, o.num_), mul(den_, o.den_)); }

ExpFrac ExpFrac::operator-() const {
  ExpFrac out = *this;
  for (auto& kv : out.num_) kv.second = -kv.second;
  return out;
}

std::string to_string(const ExpPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (e == 0) {
      out += to_string(mag);
      continue;
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += "E^(" + to_string(e) + ")";
  }
  return out;
}

std::string ExpFrac::str() const {
  const bool unit_den = den_.size() == 1 && den_.begin()->first == 0;
  if (unit_den) return to_string(num_);
  auto wrap = [](const ExpPoly& p) {
    std::string s = to_string(p);
    return p.size() == 1 && s.front() != '-' ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

}  // namespace vdf
