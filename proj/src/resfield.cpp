#include "vdf/resfield.hpp"

#include <algorithm>

namespace vdf {

namespace {

// Solves M z = rhs over Q (rows x cols); free variables are set to zero.
std::optional<std::vector<Rational>> solve_system(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs,
                                                  std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(rhs[p], rhs[r]);
    const Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rational> z(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) z[pivot_col[i]] = rhs[i];
  return z;
}

// Polynomial solutions z of A z(s+1) + B z(s) = C.
std::optional<Poly> polynomial_solution(const Poly& a, const Poly& b, const Poly& c) {
  if (c.is_zero()) return Poly{};
  const Poly p = a + b;
  const long da = a.degree();
  const long dc = c.degree();
  long bound = -1;
  if (p.is_zero()) {
    bound = dc - da + 1;
  } else if (p.degree() > da - 1) {
    bound = dc - p.degree();
  } else if (p.degree() < da - 1) {
    bound = dc - da + 1;
  } else {
    bound = dc - p.degree();
    // lc(P) + d lc(A) = 0 admits a homogeneous leading degree d.
    Rational d = -p.leading() / a.leading();
    if (is_integer(d) && d >= 0 && d.get_num().fits_slong_p()) bound = std::max(bound, d.get_num().get_si());
  }
  if (bound < 0) return std::nullopt;
  const std::size_t cols = static_cast<std::size_t>(bound) + 1;
  std::vector<Poly> images;
  images.reserve(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    Poly basis = Poly::monomial(1, j);
    images.push_back(a * basis.shift(1) + b * basis);
  }
  std::size_t rows = static_cast<std::size_t>(std::max<long>(c.degree(), 0)) + 1;
  for (const auto& img : images) rows = std::max(rows, static_cast<std::size_t>(std::max<long>(img.degree(), 0)) + 1);
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, Rational(0)));
  std::vector<Rational> rhs(rows, Rational(0));
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < images[j].coeffs().size(); ++i) m[i][j] = images[j].coeffs()[i];
  for (std::size_t i = 0; i < c.coeffs().size(); ++i) rhs[i] = c.coeffs()[i];
  auto z = solve_system(std::move(m), std::move(rhs), cols);
  if (!z) return std::nullopt;
  return Poly(std::move(*z));
}

Rational cauchy_bound(const Poly& p) {
  Rational m = 0;
  for (std::size_t k = 0; k + 1 < p.coeffs().size(); ++k) m = std::max(m, Rational(abs(p.coeffs()[k] / p.leading())));
  return m + 1;
}

// Abramov's universal denominator for a1(s) y(s+1) + a0(s) y(s) = c.
Poly universal_denominator(const Poly& a1, const Poly& a0) {
  Poly a = a1.shift(-1);
  Poly b = a0;
  if (a.degree() <= 0 || b.degree() <= 0) return Poly(1);
  const Integer hmax = ceil(Rational(cauchy_bound(a) + cauchy_bound(b)));
  std::vector<long> dispersion;
  for (long h = hmax.get_si(); h >= 0; --h)
    if (gcd(a, b.shift(Rational(h))).degree() > 0) dispersion.push_back(h);
  Poly u(1);
  for (long h : dispersion) {
    Poly g = gcd(a, b.shift(Rational(h)));
    if (g.degree() <= 0) continue;
    a = divmod(a, g).first;
    b = divmod(b, g.shift(Rational(-h))).first;
    for (long i = 0; i <= h; ++i) u *= g.shift(Rational(-i));
  }
  return u;
}

constexpr unsigned long kTrialDivisionLimit = 1000000;

std::optional<std::vector<Integer>> positive_divisors(Integer n) {
  n = abs(n);
  if (n == 0) return std::vector<Integer>{};
  std::vector<Integer> small;
  std::vector<Integer> large;
  for (unsigned long d = 1;; ++d) {
    Integer dd(d);
    if (dd * dd > n) break;
    if (d > kTrialDivisionLimit) return std::nullopt;
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      small.push_back(dd);
      Integer q = n / dd;
      if (q != dd) large.push_back(q);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalField

Rational RationalField::inv(const Rational& a) const {
  if (a == 0) throw Error(ErrorKind::ZeroDivision, "inverse of zero in Q");
  return 1 / a;
}

Rational RationalField::find_nonvanishing(std::span<const ResPoly<Rational>> polys) const {
  for (const auto& p : polys)
    if (collapses_to_zero(*this, p))
      throw Error(ErrorKind::Unsupported, "axiom-1-unsupported: polynomial vanishes identically on Q");
  return search_nonvanishing(*this, polys, [](std::size_t n) { return Rational(static_cast<long>(n + 1)); });
}

std::optional<Rational> RationalField::solve_linear(std::span<const Rational> alpha) const {
  const std::size_t order = linear_order(*this, alpha);
  if (order > axiom2_max_order()) return std::nullopt;
  return Rational(-1 / alpha[0]);
}

std::optional<Rational> RationalField::find_root(std::span<const Rational> coeffs) const {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0) --deg;
  if (deg < 2) throw Error(ErrorKind::DomainError, "find_root on a constant polynomial");
  if (coeffs[0] == 0) return Rational(0);
  Integer l = 1;
  for (std::size_t k = 0; k < deg; ++k) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), coeffs[k].get_den_mpz_t());
  std::vector<Integer> ints(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    Rational scaled = coeffs[k] * Rational(l);
    ints[k] = scaled.get_num();
  }
  auto ps = positive_divisors(ints[0]);
  auto qs = positive_divisors(ints[deg - 1]);
  if (!ps || !qs) return std::nullopt;
  std::vector<Rational> poly(coeffs.begin(), coeffs.begin() + static_cast<long>(deg));
  for (const auto& q : *qs)
    for (const auto& p : *ps) {
      if (gcd(p, q) != 1) continue;
      for (int sign : {1, -1}) {
        Rational r(sign * p, q);
        if (eval_dense(*this, std::span<const Rational>(poly), r) == 0) return r;
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// RatShiftField

RatFunc RatShiftField::find_nonvanishing(std::span<const ResPoly<RatFunc>> polys) const {
  return search_nonvanishing(*this, polys, [](std::size_t n) {
    if (n == 0) return RatFunc(1);
    return RatFunc(Poly({Rational(static_cast<long>(n - 1)), Rational(1)}));
  });
}

std::optional<RatFunc> solve_first_order_rational(const Poly& a1, const Poly& a0, const Poly& c) {
  if (a1.is_zero()) {
    if (a0.is_zero()) return std::nullopt;
    return RatFunc(c, a0);
  }
  if (a0.is_zero()) return RatFunc(c, a1).shift(-1);
  const Poly u = universal_denominator(a1, a0);
  const Poly a = a1 * u;
  const Poly b = a0 * u.shift(1);
  const Poly rhs = c * u * u.shift(1);
  auto z = polynomial_solution(a, b, rhs);
  if (!z) return std::nullopt;
  return RatFunc(*z, u);
}

std::optional<RatFunc> RatShiftField::solve_linear(std::span<const RatFunc> alpha) const {
  const std::size_t order = linear_order(*this, alpha);
  if (order > axiom2_max_order()) return std::nullopt;
  std::optional<RatFunc> x;
  if (order == 0) {
    x = RatFunc(-1) / alpha[0];
  } else {
    // alpha1 y(s+1) + alpha0 y(s) = -1 with denominators cleared.
    const RatFunc& al0 = alpha[0];
    const RatFunc& al1 = alpha[1];
    const Poly l = divmod(al0.den() * al1.den(), gcd(al0.den(), al1.den())).first;
    const Poly a1 = al1.num() * divmod(l, al1.den()).first;
    const Poly a0 = al0.num() * divmod(l, al0.den()).first;
    x = solve_first_order_rational(a1, a0, -l);
  }
  if (x && !linear_residual(*this, alpha, *x).is_zero()) return std::nullopt;
  return x;
}

std::optional<RatFunc> RatShiftField::find_root(std::span<const RatFunc> coeffs) const {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1].is_zero()) --deg;
  if (deg < 2) throw Error(ErrorKind::DomainError, "find_root on a constant polynomial");
  if (coeffs[0].is_zero()) return RatFunc{};
  if (deg == 2) return -coeffs[0] / coeffs[1];
  // Constant coefficients: defer to rational roots.
  std::vector<Rational> rational;
  for (std::size_t k = 0; k < deg; ++k) {
    if (!coeffs[k].is_constant()) return std::nullopt;
    rational.push_back(coeffs[k].num().coeff(0));
  }
  auto r = RationalField{}.find_root(rational);
  if (!r) return std::nullopt;
  return RatFunc(*r);
}

// ---------------------------------------------------------------------------
// ExpGroupField

ExpFrac ExpGroupField::find_nonvanishing(std::span<const ResPoly<ExpFrac>> polys) const {
  for (const auto& p : polys)
    if (collapses_to_zero(*this, p))
      throw Error(ErrorKind::Unsupported, "axiom-1-unsupported: polynomial vanishes identically");
  return search_nonvanishing(*this, polys, [](std::size_t n) { return ExpFrac(Rational(static_cast<long>(n + 1))); });
}

std::optional<ExpFrac> ExpGroupField::solve_linear(std::span<const ExpFrac> alpha) const {
  const std::size_t order = linear_order(*this, alpha);
  if (order > axiom2_max_order()) return std::nullopt;
  return ExpFrac(-1) / alpha[0];
}

std::optional<ExpFrac> ExpGroupField::find_root(std::span<const ExpFrac> coeffs) const {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1].is_zero()) --deg;
  if (deg < 2) throw Error(ErrorKind::DomainError, "find_root on a constant polynomial");
  if (coeffs[0].is_zero()) return ExpFrac{};
  if (deg == 2) return -coeffs[0] / coeffs[1];
  return std::nullopt;
}

}  // namespace vdf
