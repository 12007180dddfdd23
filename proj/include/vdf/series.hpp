#pragma once

#include "vdf/error.hpp"
#include "vdf/ordgroup.hpp"
#include "vdf/resfield.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vdf {

/// Absolute precision cap of a truncated series; nullopt stands for infinity
/// (the series is exact).
using Precision = std::optional<GroupElem>;

inline Precision prec_min(const Precision& a, const Precision& b) {
  if (!a) return b;
  if (!b) return a;
  return *a <= *b ? a : b;
}

inline Precision prec_add(const Precision& a, const Precision& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

/// gamma < p, with p = infinity allowed.
inline bool below(const GroupElem& gamma, const Precision& p) { return !p || gamma < *p; }

inline std::string prec_str(const Precision& p) { return p ? p->str() : std::string("inf"); }

/// The valued difference field k((t^Gamma)): value group with its automorphism,
/// residue field, and an optional twist making sigma(t^g) = twist(g) t^{sigma(g)}.
/// The twist must be a group homomorphism Gamma -> k^x; it is empty for the
/// plain Hahn difference field.
template <ResidueField F>
struct HahnContext {
  GroupAut sigma;
  F field;
  std::function<typename F::Element(const GroupElem&)> twist;

  std::size_t dim() const noexcept { return sigma.dim(); }
};

template <ResidueField F>
using ContextPtr = std::shared_ptr<const HahnContext<F>>;

template <ResidueField F>
ContextPtr<F> make_context(GroupAut sigma, F field = {},
                           std::function<typename F::Element(const GroupElem&)> twist = {}) {
  return std::make_shared<const HahnContext<F>>(HahnContext<F>{std::move(sigma), std::move(field), std::move(twist)});
}

/// Truncated Hahn series sum a_g t^g: finitely many terms with strictly
/// increasing values, all below the precision cap. The series stands for every
/// element that agrees with it below prec().
template <ResidueField F>
class HahnSeries {
 public:
  using Element = typename F::Element;

  struct Term {
    GroupElem gamma;
    Element coef;
  };

  HahnSeries() = default;

  HahnSeries(ContextPtr<F> ctx, std::vector<Term> terms, Precision prec = std::nullopt)
      : ctx_(std::move(ctx)), prec_(std::move(prec)) {
    if (!ctx_) throw Error(ErrorKind::IncompatibleInstances, "series without a context");
    if (prec_ && prec_->dim() != ctx_->dim())
      throw Error(ErrorKind::DimensionMismatch, "precision of wrong dimension");
    std::map<GroupElem, Element> acc;
    for (auto& t : terms) {
      if (t.gamma.dim() != ctx_->dim()) throw Error(ErrorKind::DimensionMismatch, "term value of wrong dimension");
      accumulate(acc, std::move(t.gamma), std::move(t.coef));
    }
    assign(std::move(acc));
  }

  static HahnSeries zero(ContextPtr<F> ctx, Precision prec = std::nullopt) {
    return HahnSeries(std::move(ctx), {}, std::move(prec));
  }
  static HahnSeries monomial(ContextPtr<F> ctx, Element coef, GroupElem gamma, Precision prec = std::nullopt) {
    std::vector<Term> terms;
    terms.push_back({std::move(gamma), std::move(coef)});
    return HahnSeries(std::move(ctx), std::move(terms), std::move(prec));
  }
  static HahnSeries constant(ContextPtr<F> ctx, Element coef, Precision prec = std::nullopt) {
    const auto d = ctx->dim();
    return monomial(std::move(ctx), std::move(coef), GroupElem::zero(d), std::move(prec));
  }
  static HahnSeries from_rational(ContextPtr<F> ctx, const Rational& q, Precision prec = std::nullopt) {
    auto c = ctx->field.from_rational(q);
    return constant(std::move(ctx), std::move(c), std::move(prec));
  }
  static HahnSeries one(ContextPtr<F> ctx) { return from_rational(std::move(ctx), 1); }
  /// Cross-section c(gamma) = t^gamma.
  static HahnSeries t_power(ContextPtr<F> ctx, GroupElem gamma) {
    auto c = ctx->field.one();
    return monomial(std::move(ctx), std::move(c), std::move(gamma));
  }

  const ContextPtr<F>& context() const noexcept { return ctx_; }
  const F& field() const { return ctx_->field; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Precision& prec() const noexcept { return prec_; }
  bool is_exact() const noexcept { return !prec_.has_value(); }
  /// No terms below the precision cap (exact zero when is_exact()).
  bool is_zero() const noexcept { return terms_.empty(); }

  /// v(a); nullopt when no term is known below the precision cap.
  std::optional<GroupElem> valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().gamma;
  }
  /// Largest certified lower bound of v(a): v(a) itself, or the cap when no
  /// term is known (infinity for exact zero).
  Precision value_bound() const {
    if (!terms_.empty()) return terms_.front().gamma;
    return prec_;
  }
  const Element& leading_coef() const {
    if (terms_.empty()) throw Error(ErrorKind::Indeterminate, "leading coefficient of a series without terms");
    return terms_.front().coef;
  }

  Element coefficient(const GroupElem& gamma) const {
    if (!below(gamma, prec_))
      throw Error(ErrorKind::Precision, "coefficient at " + gamma.str() + " lies beyond the precision cap");
    for (const auto& t : terms_)
      if (t.gamma == gamma) return t.coef;
    return ctx_->field.zero();
  }

  /// Residue map: the coefficient at 0; requires v(a) >= 0.
  Element residue() const {
    const auto zero = GroupElem::zero(ctx_->dim());
    if (!terms_.empty() && terms_.front().gamma < zero)
      throw Error(ErrorKind::DomainError, "residue of a series with negative value");
    return coefficient(zero);
  }

  HahnSeries truncate(const Precision& p) const {
    HahnSeries out = *this;
    out.prec_ = prec_min(prec_, p);
    out.drop_beyond_prec();
    return out;
  }

  HahnSeries operator-() const {
    HahnSeries out = *this;
    for (auto& t : out.terms_) t.coef = ctx_->field.neg(t.coef);
    return out;
  }

  friend HahnSeries operator+(const HahnSeries& a, const HahnSeries& b) { return combine(a, b, false); }
  friend HahnSeries operator-(const HahnSeries& a, const HahnSeries& b) { return combine(a, b, true); }

  friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
    check_compatible(a, b);
    const Precision p = prec_min(prec_add(a.prec_, b.value_bound()), prec_add(b.prec_, a.value_bound()));
    const auto& f = a.ctx_->field;
    std::map<GroupElem, Element> acc;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        GroupElem g = ta.gamma + tb.gamma;
        if (!below(g, p)) continue;
        accumulate(acc, std::move(g), f.mul(ta.coef, tb.coef), f);
      }
    HahnSeries out;
    out.ctx_ = a.ctx_;
    out.prec_ = p;
    out.assign(std::move(acc));
    return out;
  }

  HahnSeries& operator+=(const HahnSeries& o) { return *this = *this + o; }
  HahnSeries& operator-=(const HahnSeries& o) { return *this = *this - o; }
  HahnSeries& operator*=(const HahnSeries& o) { return *this = *this * o; }

  /// c * a for a residue element c.
  HahnSeries scale(const Element& c) const {
    const auto& f = ctx_->field;
    if (f.is_zero(c)) return zero(ctx_);
    HahnSeries out = *this;
    for (auto& t : out.terms_) t.coef = f.mul(t.coef, c);
    return out;
  }

  /// t^gamma * a.
  HahnSeries shift(const GroupElem& gamma) const {
    HahnSeries out = *this;
    for (auto& t : out.terms_) t.gamma += gamma;
    if (out.prec_) *out.prec_ += gamma;
    return out;
  }

  /// sigma^k applied termwise: sum sigma-bar^k(a_g) sigma^k(t^g).
  HahnSeries sigma(long k = 1) const {
    if (k == 0) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      auto [coef, gamma] = sigma_monomial(*ctx_, t.coef, t.gamma, k);
      out.push_back({std::move(gamma), std::move(coef)});
    }
    Precision p = prec_ ? Precision(ctx_->sigma.apply(*prec_, k)) : std::nullopt;
    return HahnSeries(ctx_, std::move(out), std::move(p));
  }

  /// Multiplicative inverse. An optional absolute cap bounds the result when
  /// the exact inverse has infinite support.
  HahnSeries invert(const Precision& cap = std::nullopt) const {
    if (terms_.empty()) {
      if (is_exact()) throw Error(ErrorKind::ZeroDivision, "inverse of zero series");
      throw Error(ErrorKind::Indeterminate, "inverse of a series that is zero modulo its precision");
    }
    const auto& f = ctx_->field;
    const GroupElem gamma = terms_.front().gamma;
    const Element lc_inv = f.inv(terms_.front().coef);
    // a = lc t^gamma (1 + eps), v(eps) > 0.
    Precision rel = prec_ ? Precision(*prec_ - gamma) : std::nullopt;
    if (cap) rel = prec_min(rel, Precision(*cap + gamma));
    std::vector<Term> eps_terms;
    for (std::size_t i = 1; i < terms_.size(); ++i)
      eps_terms.push_back({terms_[i].gamma - gamma, f.mul(terms_[i].coef, lc_inv)});
    HahnSeries eps(ctx_, std::move(eps_terms), rel);
    HahnSeries sum = one(ctx_).truncate(rel);
    if (!eps.is_zero()) {
      if (!rel)
        throw Error(ErrorKind::Precision, "inverse has infinite support; supply a precision cap");
      auto steps = steps_to_reach(*eps.valuation(), *rel);
      if (!steps)
        throw Error(ErrorKind::Precision,
                    "inverse cannot be truncated at " + prec_str(rel) + ": correction value " +
                        eps.valuation()->str() + " never reaches the cap");
      HahnSeries power = one(ctx_).truncate(rel);
      const HahnSeries neg_eps = -eps;
      for (unsigned long k = 1; k < *steps; ++k) {
        power = power * neg_eps;
        sum = sum + power;
      }
    }
    return sum.scale(lc_inv).shift(-gamma);
  }

  friend bool operator==(const HahnSeries& a, const HahnSeries& b) {
    if (a.prec_ != b.prec_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].gamma != b.terms_[i].gamma || !a.ctx_->field.equal(a.terms_[i].coef, b.terms_[i].coef))
        return false;
    return true;
  }

  /// True when both agree on every term below min(prec_a, prec_b, cap).
  friend bool agree_below(const HahnSeries& a, const HahnSeries& b, const Precision& cap = std::nullopt) {
    return (a - b).truncate(cap).is_zero();
  }

  std::string str() const {
    const auto& f = ctx_->field;
    std::string out;
    for (const auto& t : terms_) {
      std::string c = f.str(t.coef);
      bool negative = false;
      if (c.size() > 1 && c.front() == '-' && !needs_parens(c.substr(1))) {
        negative = true;
        c = c.substr(1);
      }
      std::string body;
      const bool at_zero = t.gamma.is_zero();
      if (at_zero) body = needs_parens(c) ? "(" + c + ")" : c;
      else if (c == "1") body = "t^" + gamma_str(t.gamma);
      else body = (needs_parens(c) ? "(" + c + ")" : c) + "*t^" + gamma_str(t.gamma);
      if (out.empty()) out = negative ? "-" + body : body;
      else out += (negative ? " - " : " + ") + body;
    }
    if (prec_) out += (out.empty() ? "" : " + ") + std::string("O(t^") + gamma_str(*prec_) + ")";
    return out.empty() ? "0" : out;
  }

  static std::string gamma_str(const GroupElem& g) { return g.str(); }

 private:
  static bool needs_parens(const std::string& c) {
    if (c.find(' ') != std::string::npos) return true;
    if (c.find('/') == std::string::npos) return false;
    try {
      parse_rational(c);
      return false;
    } catch (const Error&) {
      return true;
    }
  }

  static void check_compatible(const HahnSeries& a, const HahnSeries& b) {
    if (!a.ctx_ || !b.ctx_) throw Error(ErrorKind::IncompatibleInstances, "series without a context");
    if (a.ctx_ != b.ctx_ &&
        !(a.ctx_->sigma == b.ctx_->sigma && a.ctx_->field == b.ctx_->field && !a.ctx_->twist && !b.ctx_->twist))
      throw Error(ErrorKind::IncompatibleInstances, "series over different valued difference fields");
  }

  static HahnSeries combine(const HahnSeries& a, const HahnSeries& b, bool subtract) {
    check_compatible(a, b);
    const auto& f = a.ctx_->field;
    const Precision p = prec_min(a.prec_, b.prec_);
    std::map<GroupElem, Element> acc;
    for (const auto& t : a.terms_)
      if (below(t.gamma, p)) accumulate(acc, t.gamma, t.coef, f);
    for (const auto& t : b.terms_)
      if (below(t.gamma, p)) accumulate(acc, t.gamma, subtract ? f.neg(t.coef) : t.coef, f);
    HahnSeries out;
    out.ctx_ = a.ctx_;
    out.prec_ = p;
    out.assign(std::move(acc));
    return out;
  }

  void accumulate(std::map<GroupElem, Element>& acc, GroupElem gamma, Element coef) const {
    accumulate(acc, std::move(gamma), std::move(coef), ctx_->field);
  }

  static void accumulate(std::map<GroupElem, Element>& acc, GroupElem gamma, Element coef, const F& f) {
    auto it = acc.find(gamma);
    if (it == acc.end()) acc.emplace(std::move(gamma), std::move(coef));
    else it->second = f.add(it->second, coef);
  }

  void assign(std::map<GroupElem, Element>&& acc) {
    const auto& f = ctx_->field;
    terms_.clear();
    terms_.reserve(acc.size());
    for (auto& [g, c] : acc)
      if (!f.is_zero(c) && below(g, prec_)) terms_.push_back({g, std::move(c)});
  }

  void drop_beyond_prec() {
    std::erase_if(terms_, [this](const Term& t) { return !below(t.gamma, prec_); });
  }

  ContextPtr<F> ctx_;
  std::vector<Term> terms_;
  Precision prec_;

 public:
  /// sigma^k(c t^gamma) = (coefficient, value) including the twist.
  static std::pair<Element, GroupElem> sigma_monomial(const HahnContext<F>& ctx, Element coef, GroupElem gamma,
                                                      long k) {
    const auto& f = ctx.field;
    for (long step = 0; step < k; ++step) {
      coef = f.sigma(coef, 1);
      if (ctx.twist) coef = f.mul(coef, ctx.twist(gamma));
      gamma = ctx.sigma.apply(gamma, 1);
    }
    for (long step = 0; step > k; --step) {
      // sigma^{-1}(t^g) = sigma-bar^{-1}(twist(sigma^{-1} g))^{-1} t^{sigma^{-1} g}
      gamma = ctx.sigma.apply(gamma, -1);
      coef = f.sigma(coef, -1);
      if (ctx.twist) coef = f.mul(coef, f.sigma(f.inv(ctx.twist(gamma)), -1));
    }
    return {std::move(coef), std::move(gamma)};
  }
};

/// a / b; the optional absolute cap bounds the quotient when the inverse of b
/// has infinite support.
template <ResidueField F>
HahnSeries<F> divide(const HahnSeries<F>& a, const HahnSeries<F>& b, const Precision& cap = std::nullopt) {
  if (a.is_zero() && a.is_exact()) return a;
  Precision inv_cap = std::nullopt;
  if (cap) inv_cap = *cap - *a.value_bound();
  return (a * b.invert(inv_cap)).truncate(cap);
}

/// Element of RV = K^x / (1 + m): infinity, or (value, nonzero residue coefficient).
template <ResidueField F>
struct RVElem {
  std::optional<GroupElem> gamma;  // nullopt is infinity
  typename F::Element coef{};

  bool is_infinite() const noexcept { return !gamma.has_value(); }
};

template <ResidueField F>
RVElem<F> rv_of(const HahnSeries<F>& a) {
  if (a.is_zero()) {
    if (!a.is_exact()) throw Error(ErrorKind::Indeterminate, "rv of a series that is zero modulo its precision");
    return {};
  }
  return {a.valuation(), a.leading_coef()};
}

template <ResidueField F>
bool rv_equal(const F& field, const RVElem<F>& r, const RVElem<F>& u) {
  if (r.is_infinite() || u.is_infinite()) return r.is_infinite() == u.is_infinite();
  return *r.gamma == *u.gamma && field.equal(r.coef, u.coef);
}

/// The partial addition of RV: smaller value wins; equal values add
/// coefficients, and cancellation gives infinity.
template <ResidueField F>
RVElem<F> rv_add(const F& field, const RVElem<F>& r, const RVElem<F>& u) {
  if (r.is_infinite()) return u;
  if (u.is_infinite()) return r;
  if (*r.gamma < *u.gamma) return r;
  if (*u.gamma < *r.gamma) return u;
  auto c = field.add(r.coef, u.coef);
  if (field.is_zero(c)) return {};
  return {r.gamma, std::move(c)};
}

template <ResidueField F>
RVElem<F> rv_mul(const F& field, const RVElem<F>& r, const RVElem<F>& u) {
  if (r.is_infinite() || u.is_infinite()) return {};
  return {*r.gamma + *u.gamma, field.mul(r.coef, u.coef)};
}

template <ResidueField F>
RVElem<F> rv_sigma(const HahnContext<F>& ctx, const RVElem<F>& r, long k = 1) {
  if (r.is_infinite()) return r;
  auto [coef, gamma] = HahnSeries<F>::sigma_monomial(ctx, r.coef, *r.gamma, k);
  return {std::move(gamma), std::move(coef)};
}

}  // namespace vdf
