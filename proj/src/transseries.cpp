#include "vdf/transseries.hpp"

#include <algorithm>
#include <map>

namespace vdf {

bool Transmonomial::is_flat() const {
  return std::all_of(epart.begin(), epart.end(), [](const Rational& c) { return c == 0; });
}

std::size_t Transmonomial::epart_degree() const {
  for (std::size_t k = epart.size(); k-- > 0;)
    if (epart[k] != 0) return k + 1;
  return 0;
}

Rational Transmonomial::epart_at(const Rational& h) const {
  Rational acc = 0;
  for (std::size_t k = epart.size(); k-- > 0;) acc = (acc + epart[k]) * h;
  return acc;
}

GroupElem Transmonomial::value() const {
  std::vector<Rational> c;
  c.reserve(epart.size() + 1);
  for (std::size_t k = epart.size(); k-- > 0;) c.push_back(-epart[k]);
  c.push_back(-xpow);
  return GroupElem(std::move(c));
}

Transmonomial Transmonomial::from_value(const GroupElem& gamma) {
  const std::size_t d = gamma.dim() - 1;
  std::vector<Rational> q(d);
  for (std::size_t k = 0; k < d; ++k) q[k] = -gamma[d - 1 - k];
  return {-gamma[d], std::move(q)};
}

Transmonomial Transmonomial::operator*(const Transmonomial& o) const {
  if (o.depth() != depth()) throw Error(ErrorKind::DimensionMismatch, "transmonomials of different depth");
  Transmonomial out = *this;
  out.xpow += o.xpow;
  for (std::size_t k = 0; k < epart.size(); ++k) out.epart[k] += o.epart[k];
  return out;
}

std::string epart_str(const std::vector<Rational>& q) {
  std::string out;
  for (std::size_t k = q.size(); k-- > 0;) {
    if (q[k] == 0) continue;
    const Rational mag = abs(q[k]);
    if (!out.empty()) out += q[k] < 0 ? " - " : " + ";
    else if (q[k] < 0) out += "-";
    if (mag != 1) out += to_string(mag) + "*";
    out += "x";
    if (k > 0) out += "^" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

std::string Transmonomial::str() const {
  std::string out;
  if (xpow == 1) out = "x";
  else if (xpow != 0) out = "x^(" + to_string(xpow) + ")";
  if (!is_flat()) {
    if (!out.empty()) out += "*";
    out += "e^(" + epart_str(epart) + ")";
  }
  return out.empty() ? "1" : out;
}

ContextPtr<ExpGroupField> trans_context(std::size_t depth) {
  return make_context<ExpGroupField>(GroupAut::identity(depth + 1));
}

// ---------------------------------------------------------------------------
// Transseries

Transseries::Transseries(Series s) : series_(std::move(s)) {
  if (!series_.context()) throw Error(ErrorKind::IncompatibleInstances, "transseries without a context");
}

Transseries Transseries::zero(std::size_t depth, std::optional<Transmonomial> prec) {
  Precision p = prec ? Precision(prec->value()) : std::nullopt;
  return Transseries(Series::zero(trans_context(depth), std::move(p)));
}

Transseries Transseries::monomial(std::size_t depth, ExpFrac coef, const Transmonomial& m,
                                  std::optional<Transmonomial> prec) {
  if (m.depth() != depth) throw Error(ErrorKind::DimensionMismatch, "monomial of wrong depth");
  Precision p = prec ? Precision(prec->value()) : std::nullopt;
  return Transseries(Series::monomial(trans_context(depth), std::move(coef), m.value(), std::move(p)));
}

Transseries Transseries::constant(std::size_t depth, const Rational& q) {
  return monomial(depth, ExpFrac(q), Transmonomial::x_power(depth, 0));
}

Transseries Transseries::x_power(std::size_t depth, const Rational& a, const Rational& coef) {
  return monomial(depth, ExpFrac(coef), Transmonomial::x_power(depth, a));
}

std::vector<Transseries::Term> Transseries::terms() const {
  std::vector<Term> out;
  for (const auto& t : series_.terms()) out.push_back({t.coef, Transmonomial::from_value(t.gamma)});
  return out;
}

std::optional<Transmonomial> Transseries::prec() const {
  if (!series_.prec()) return std::nullopt;
  return Transmonomial::from_value(*series_.prec());
}

bool Transseries::is_flat() const {
  for (const auto& t : series_.terms())
    for (std::size_t k = 0; k + 1 < t.gamma.dim(); ++k)
      if (t.gamma[k] != 0) return false;
  return true;
}

Transmonomial Transseries::dominant() const {
  if (series_.is_zero()) throw Error(ErrorKind::Indeterminate, "dominant monomial of a series without terms");
  return Transmonomial::from_value(*series_.valuation());
}

Transseries Transseries::truncate(const std::optional<Transmonomial>& p) const {
  return Transseries(series_.truncate(p ? Precision(p->value()) : std::nullopt));
}

Transseries Transseries::exact_part() const {
  std::vector<Series::Term> t(series_.terms().begin(), series_.terms().end());
  return Transseries(Series(series_.context(), std::move(t)));
}

Transseries Transseries::invert(const std::optional<Transmonomial>& cap) const {
  return Transseries(series_.invert(cap ? Precision(cap->value()) : std::nullopt));
}

std::string Transseries::str() const {
  std::string out;
  for (const auto& [coef, mono] : terms()) {
    std::string c = coef.str();
    bool negative = false;
    const bool atomic = c.find(' ') == std::string::npos;
    if (atomic && c.size() > 1 && c.front() == '-') {
      negative = true;
      c = c.substr(1);
    }
    const std::string m = mono.str();
    std::string body;
    const std::string cc = atomic ? c : "(" + c + ")";
    if (m == "1") body = cc;
    else if (c == "1") body = m;
    else body = cc + "*" + m;
    if (out.empty()) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
  }
  if (auto p = prec()) out += (out.empty() ? "" : " + ") + std::string("O(") + p->str() + ")";
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Calculus

namespace {

Transseries from_terms(std::size_t depth, std::vector<Transseries::Series::Term> terms,
                       const std::optional<Transmonomial>& prec) {
  Precision p = prec ? Precision(prec->value()) : std::nullopt;
  return Transseries(Transseries::Series(trans_context(depth), std::move(terms), std::move(p)));
}

}  // namespace

Transseries derive(const Transseries& f) {
  const std::size_t depth = f.depth();
  std::vector<Transseries::Series::Term> out;
  for (const auto& [c, m] : f.terms()) {
    if (m.xpow != 0) {
      Transmonomial d = m;
      d.xpow -= 1;
      out.push_back({d.value(), c * ExpFrac(m.xpow)});
    }
    // q'(x) = sum_k k q_k x^{k-1}.
    for (std::size_t k = 0; k < m.epart.size(); ++k) {
      if (m.epart[k] == 0) continue;
      Transmonomial d = m;
      d.xpow += Rational(static_cast<long>(k));
      out.push_back({d.value(), c * ExpFrac(m.epart[k] * Rational(static_cast<long>(k + 1)))});
    }
  }
  std::optional<Transmonomial> prec = f.prec();
  if (prec) {
    const std::size_t d = prec->epart_degree();
    prec->xpow += d == 0 ? Rational(-1) : Rational(static_cast<long>(d) - 1);
  }
  return from_terms(depth, std::move(out), prec);
}

Transseries integrate_flat(const Transseries& f) {
  if (!f.is_flat()) throw Error(ErrorKind::DomainError, "integrate_flat needs a flat transseries");
  std::optional<Transmonomial> prec = f.prec();
  if (prec) {
    bool dominant_epart = false;
    for (std::size_t k = prec->epart.size(); k-- > 0;)
      if (prec->epart[k] != 0) {
        dominant_epart = prec->epart[k] > 0;
        break;
      }
    if (dominant_epart)
      throw Error(ErrorKind::Precision, "precision admits unknown flat terms of every order");
    prec->xpow += 1;
  }
  std::vector<Transseries::Series::Term> out;
  for (const auto& [c, m] : f.terms()) {
    if (m.xpow == -1) throw Error(ErrorKind::LogarithmNeeded, "logarithm-needed: integral of x^(-1)");
    Transmonomial d = m;
    d.xpow += 1;
    out.push_back({d.value(), c / ExpFrac(d.xpow)});
  }
  return from_terms(f.depth(), std::move(out), prec);
}

namespace {

// q(x + k) - q(k) as an e-part.
std::vector<Rational> shift_epart(const std::vector<Rational>& q, const Rational& k) {
  std::vector<Rational> out(q.size(), Rational(0));
  // (x + k)^m = sum_j C(m, j) k^{m-j} x^j.
  for (std::size_t m = 1; m <= q.size(); ++m) {
    if (q[m - 1] == 0) continue;
    for (std::size_t j = 1; j <= m; ++j)
      out[j - 1] += q[m - 1] * binomial(Rational(static_cast<long>(m)), j) * pow(k, static_cast<long>(m - j));
  }
  return out;
}

}  // namespace

Transseries compose_shift(const Transseries& f, long k, const std::optional<Transmonomial>& cap) {
  if (k == 0) return f;
  const std::size_t depth = f.depth();
  const Rational kk(k);
  std::optional<Transmonomial> prec;
  if (auto p = f.prec()) prec = Transmonomial(p->xpow, shift_epart(p->epart, kk));
  if (cap) prec = !prec || cap->value() < prec->value() ? cap : prec;
  const Precision pv = prec ? Precision(prec->value()) : std::nullopt;
  std::vector<Transseries::Series::Term> out;
  for (const auto& [c, m] : f.terms()) {
    const auto q = shift_epart(m.epart, kk);
    const ExpFrac factor = c * ExpFrac::exp(m.epart_at(kk));
    const bool terminates = is_integer(m.xpow) && m.xpow >= 0;
    for (unsigned long n = 0;; ++n) {
      if (terminates && Rational(static_cast<long>(n)) > m.xpow) break;
      Transmonomial mono(m.xpow - Rational(static_cast<long>(n)), q);
      GroupElem v = mono.value();
      if (!below(v, pv)) break;
      if (n == 0 && !terminates) {
        if (!pv)
          throw Error(ErrorKind::Precision,
                      "shift of x^(" + to_string(m.xpow) + ") has infinite support; supply a cap");
        // Only a term sharing the cap's e-part runs into the cap as the x-power drops.
        for (std::size_t i = 0; i + 1 < v.dim(); ++i)
          if (v[i] != (*pv)[i])
            throw Error(ErrorKind::Precision, "shift expansion does not reach the precision cap");
      }
      const Rational b = binomial(m.xpow, n) * pow(kk, static_cast<long>(n));
      if (b != 0) out.push_back({std::move(v), factor * ExpFrac(b)});
    }
  }
  return from_terms(depth, std::move(out), prec);
}

CoarseW coarse_w(const Transseries& f) {
  if (f.is_zero()) throw Error(ErrorKind::DomainError, "coarse residue of a series without terms");
  const auto dom = f.dominant();
  const Transmonomial unit(0, dom.epart);
  const std::size_t depth = f.depth();
  std::vector<Transseries::Series::Term> out;
  for (const auto& [c, m] : f.terms()) {
    if (m.epart != dom.epart) continue;
    out.push_back({Transmonomial::x_power(depth, m.xpow).value(), c});
  }
  std::optional<Transmonomial> prec;
  if (auto p = f.prec(); p && p->epart == dom.epart) prec = Transmonomial::x_power(depth, p->xpow);
  return {dom.epart, from_terms(depth, std::move(out), prec)};
}

Transseries apply_difference(std::span<const Transseries> h, const Transseries& f,
                             const std::optional<Transmonomial>& cap) {
  if (h.empty()) throw Error(ErrorKind::DomainError, "difference operator without coefficients");
  Transseries acc = Transseries::zero(f.depth());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].is_zero() && h[i].is_exact()) continue;
    acc += h[i] * compose_shift(f, static_cast<long>(i), cap);
  }
  return acc;
}

namespace {

Transseries nth_derivative(Transseries f, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) f = derive(f);
  return f;
}

Rational leading_xpow(const Transseries& f) { return f.dominant().xpow; }

constexpr std::size_t kMaxFixedPointRounds = 10000;

}  // namespace

Transseries solve_linear_difference(std::span<const Transseries> h, const Transseries& rhs, std::size_t order) {
  if (h.empty()) throw Error(ErrorKind::DomainError, "difference operator without coefficients");
  const std::size_t depth = rhs.depth();
  bool any = false;
  Rational hmax = 0;
  for (const auto& hi : h) {
    if (!hi.is_flat() || (hi.prec() && !hi.prec()->is_flat()))
      throw Error(ErrorKind::DomainError, "operator coefficients must be flat");
    if (hi.is_zero()) continue;
    hmax = any ? std::max(hmax, leading_xpow(hi)) : leading_xpow(hi);
    any = true;
  }
  if (!any) throw Error(ErrorKind::DomainError, "all operator coefficients are zero");
  if (!rhs.is_flat()) throw Error(ErrorKind::DomainError, "right-hand side must be flat");

  // l_m = sum_i h_i i^m / m!.
  std::vector<Transseries> ell;
  for (std::size_t m = 0; m <= order; ++m) {
    Transseries lm = Transseries::zero(depth);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Rational w = pow(Rational(static_cast<long>(i)), static_cast<long>(m)) / factorial(m);
      if (w != 0) lm += h[i].scale(ExpFrac(w));
    }
    ell.push_back(std::move(lm));
  }
  std::size_t k = 0;
  while (k <= order && ell[k].is_zero()) ++k;
  if (k > order)
    throw Error(ErrorKind::DomainError, "operator vanishes to order " + std::to_string(order) + "; raise the order");
  if (rhs.is_zero() && rhs.is_exact()) return Transseries::zero(depth);
  if (rhs.is_zero()) throw Error(ErrorKind::Indeterminate, "right-hand side is zero modulo its precision");

  const std::vector<Transseries> a(ell.begin() + static_cast<long>(k), ell.end());
  const Rational a0 = leading_xpow(a[0]);
  for (std::size_t j = 1; j < a.size(); ++j)
    if (!a[j].is_zero() && !(leading_xpow(a[j]) - Rational(static_cast<long>(j)) < a0))
      throw Error(ErrorKind::Unsupported, "operator is not contracting: the coefficient of D^" + std::to_string(j + k) +
                                              " is too large for fixed-point inversion");

  // Dropped terms l_m D^m, m > order, perturb g by at most
  // x^{hmax + lead(g) - (order - k + 1) - lead(A_0)}.
  const Rational lead_g = leading_xpow(rhs) - a0;
  const Rational err = hmax + lead_g - Rational(static_cast<long>(order - k + 1)) - a0;
  const auto cap = Transmonomial::x_power(depth, err);
  const Precision cap_value = cap.value();

  auto divide_a0 = [&](const Transseries& x) { return Transseries(divide(x.series(), a[0].series(), cap_value)); };
  Transseries g = divide_a0(rhs);
  for (std::size_t round = 0;; ++round) {
    if (round == kMaxFixedPointRounds) throw Error(ErrorKind::Precision, "operator inversion did not stabilize");
    Transseries r = rhs;
    for (std::size_t j = 1; j < a.size(); ++j)
      if (!a[j].is_zero()) r -= a[j] * nth_derivative(g, j);
    Transseries next = divide_a0(r);
    if (next == g) break;
    g = std::move(next);
  }
  for (std::size_t j = 0; j < k; ++j) g = integrate_flat(g);
  return g;
}

// ---------------------------------------------------------------------------
// FlatField

Transseries FlatField::find_nonvanishing(std::span<const ResPoly<Transseries>> polys) const {
  return search_nonvanishing(*this, polys, [this](std::size_t n) {
    return Transseries::x_power(depth_, Rational(static_cast<long>(n)));
  });
}

std::optional<Transseries> FlatField::solve_linear(std::span<const Transseries> alpha) const {
  const std::size_t ord = linear_order(*this, alpha);
  if (ord > order_) return std::nullopt;
  for (const auto& a : alpha)
    if (!a.is_flat()) return std::nullopt;
  try {
    const std::vector<Transseries> h(alpha.begin(), alpha.begin() + static_cast<long>(ord + 1));
    return solve_linear_difference(h, Transseries::constant(depth_, -1), order_);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Unsupported || e.kind() == ErrorKind::LogarithmNeeded ||
        e.kind() == ErrorKind::Precision || e.kind() == ErrorKind::DomainError)
      return std::nullopt;
    throw;
  }
}

std::optional<Transseries> FlatField::find_root(std::span<const Transseries> coeffs) const {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1].is_zero()) --deg;
  if (deg < 2) throw Error(ErrorKind::DomainError, "find_root on a constant polynomial");
  if (coeffs[0].is_zero()) return zero();
  if (deg == 2) return -(coeffs[0] * inv(coeffs[1]));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Coarsening

ContextPtr<FlatField> coarse_context(const FlatField& field) {
  const std::size_t d = field.depth();
  // Coordinates (-q_D, ..., -q_1); q_j picks up C(m, j) q_m from every m >= j.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c <= r; ++c) {
      const std::size_t j = d - r;      // row holds q_j
      const std::size_t from = d - c;   // column holds q_from
      m[r][c] = binomial(Rational(static_cast<long>(from)), j);
    }
  auto twist = [depth = d](const GroupElem& gamma) {
    Rational q1 = 0;
    for (const auto& c : gamma.coords()) q1 -= c;
    return Transseries::monomial(depth, ExpFrac::exp(q1), Transmonomial::x_power(depth, 0));
  };
  return make_context<FlatField>(GroupAut(std::move(m)), field, twist);
}

HahnSeries<FlatField> to_coarse(const Transseries& f, const ContextPtr<FlatField>& ctx) {
  const std::size_t depth = f.depth();
  std::map<GroupElem, std::vector<Transseries::Series::Term>> groups;
  auto wvalue = [](const std::vector<Rational>& q) {
    std::vector<Rational> c;
    for (std::size_t k = q.size(); k-- > 0;) c.push_back(-q[k]);
    return GroupElem(std::move(c));
  };
  for (const auto& [c, m] : f.terms())
    groups[wvalue(m.epart)].push_back({Transmonomial::x_power(depth, m.xpow).value(), c});
  Precision prec;
  if (auto p = f.prec()) prec = wvalue(p->epart);
  std::vector<HahnSeries<FlatField>::Term> terms;
  for (auto& [w, ts] : groups)
    terms.push_back({w, Transseries(Transseries::Series(trans_context(depth), std::move(ts)))});
  return HahnSeries<FlatField>(ctx, std::move(terms), prec);
}

}  // namespace vdf
