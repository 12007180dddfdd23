#include "vdf/rational.hpp"

#include "vdf/error.hpp"

#include <cctype>

namespace vdf {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::IncompatibleInstances: return "incompatible-instances";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::ZeroDivision: return "zero-division";
    case ErrorKind::Precision: return "precision";
    case ErrorKind::Indeterminate: return "indeterminate";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::NotTropicalZero: return "not-tropical-zero";
    case ErrorKind::LogarithmNeeded: return "logarithm-needed";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return (!s.empty() && s.front() == '+') ? s.substr(1) : s;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-')
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  Integer n(std::string(strip_plus(num)));
  Integer d(std::string(strip_plus(den)));
  if (d == 0) throw Error(ErrorKind::ZeroDivision, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational binomial(const Rational& a, unsigned long k) {
  Rational result = 1;
  for (unsigned long i = 0; i < k; ++i) {
    result *= a - Rational(static_cast<long>(i));
    result /= Rational(static_cast<long>(i + 1));
  }
  return result;
}

Rational factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational pow(const Rational& a, long n) {
  if (n < 0) {
    if (a == 0) throw Error(ErrorKind::ZeroDivision, "negative power of zero");
    return pow(Rational(1 / a), -n);
  }
  Rational result = 1;
  Rational base = a;
  for (unsigned long e = static_cast<unsigned long>(n); e != 0; e >>= 1) {
    if (e & 1) result *= base;
    base *= base;
  }
  return result;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace vdf
