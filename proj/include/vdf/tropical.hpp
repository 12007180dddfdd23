#pragma once

#include "vdf/error.hpp"
#include "vdf/sigmapoly.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vdf {

struct TropValue {
  GroupElem value;
  std::vector<MultiIndex> minimizers;  // sorted lexicographically
};

/// sum_pos i_pos sigma^k(gamma_var) for the monomial sigma(x)^i.
inline GroupElem monomial_shift(const GroupAut& sigma, const IndexShape& shape, const MultiIndex& i,
                                std::span<const GroupElem> gamma) {
  GroupElem out = GroupElem::zero(sigma.dim());
  for (std::size_t p = 0; p < i.size(); ++p)
    if (i[p]) out += sigma.apply(gamma[shape.var_of(p)], static_cast<long>(shape.shift_of(p))) * Rational(i[p]);
  return out;
}

/// F_v(gamma) = min_i (v(a_i) + sigma^i(gamma)) and the indices attaining it.
template <ResidueField F>
TropValue trop_val(const SigmaPoly<F>& f, std::span<const GroupElem> gamma) {
  if (f.is_zero()) throw Error(ErrorKind::DomainError, "tropicalization of the zero polynomial");
  if (gamma.size() != f.nvars()) throw Error(ErrorKind::DimensionMismatch, "value tuple of wrong arity");
  const auto& sigma = f.context()->sigma;
  std::optional<GroupElem> best;
  std::vector<MultiIndex> arg;
  for (const auto& [idx, c] : f.coeffs()) {
    auto v = c.valuation();
    if (!v)
      throw Error(ErrorKind::Indeterminate,
                  "coefficient of " + index_str(idx) + " is zero modulo its precision " + prec_str(c.prec()));
    GroupElem w = *v + monomial_shift(sigma, f.shape(), idx, gamma);
    if (!best || w < *best) {
      best = w;
      arg.assign(1, idx);
    } else if (w == *best) {
      arg.push_back(idx);
    }
  }
  std::sort(arg.begin(), arg.end());
  return {*best, std::move(arg)};
}

template <ResidueField F>
TropValue trop_val(const SigmaPoly<F>& f, const GroupElem& gamma) {
  return trop_val(f, std::span<const GroupElem>(&gamma, 1));
}

template <ResidueField F>
bool is_tropical_zero(const SigmaPoly<F>& f, std::span<const GroupElem> gamma) {
  return trop_val(f, gamma).minimizers.size() >= 2;
}

template <ResidueField F>
bool is_tropical_zero(const SigmaPoly<F>& f, const GroupElem& gamma) {
  return is_tropical_zero(f, std::span<const GroupElem>(&gamma, 1));
}

/// Whether v(F(a)) = F_v(v(a)) for the tuple a. Throws Indeterminate when the
/// working precision cannot decide.
template <ResidueField F>
bool is_regular(std::span<const HahnSeries<F>> a, const SigmaPoly<F>& f) {
  if (f.is_zero()) throw Error(ErrorKind::DomainError, "regularity for the zero polynomial");
  std::vector<GroupElem> gamma;
  for (const auto& ai : a) {
    if (ai.is_zero()) {
      if (!ai.is_exact()) throw Error(ErrorKind::Indeterminate, "point is zero modulo its precision");
      if (a.size() == 1) return f.constant_term().is_zero();
      throw Error(ErrorKind::DomainError, "regular tuples need nonzero entries");
    }
    gamma.push_back(*ai.valuation());
  }
  const GroupElem fv = trop_val(f, std::span<const GroupElem>(gamma)).value;
  const auto value = f.eval(a);
  if (value.is_zero()) {
    if (value.is_exact() || fv < *value.prec()) return false;
    throw Error(ErrorKind::Indeterminate,
                "F(a) vanishes below " + prec_str(value.prec()) + ", which does not exceed F_v = " + fv.str());
  }
  if (*value.valuation() < fv) throw Error(ErrorKind::DomainError, "value below the tropical bound");
  return *value.valuation() == fv;
}

template <ResidueField F>
bool is_regular(const HahnSeries<F>& a, const SigmaPoly<F>& f) {
  return is_regular(std::span<const HahnSeries<F>>(&a, 1), f);
}

/// Reduction of F(bx) / (a_j sigma(b)^j) for a minimizing index j, computed
/// from leading terms only.
template <ResidueField F>
ResPoly<typename F::Element> reduced_at(const SigmaPoly<F>& f, std::span<const HahnSeries<F>> b) {
  const auto& field = f.context()->field;
  std::vector<GroupElem> gamma;
  for (const auto& bi : b) gamma.push_back(*bi.valuation());
  const auto tv = trop_val(f, std::span<const GroupElem>(gamma));
  const auto& shape = f.shape();
  // Leading coefficient of sigma^k(b_var).
  std::vector<typename F::Element> lead(shape.width());
  for (std::size_t p = 0; p < shape.width(); ++p)
    lead[p] = b[shape.var_of(p)].sigma(static_cast<long>(shape.shift_of(p))).leading_coef();
  auto lc_of = [&](const MultiIndex& i) {
    auto c = f.coefficient(i).leading_coef();
    for (std::size_t p = 0; p < i.size(); ++p)
      if (i[p]) c = field.mul(c, power(field, lead[p], i[p]));
    return c;
  };
  const auto d_inv = field.inv(lc_of(tv.minimizers.front()));
  ResPoly<typename F::Element> out{shape, {}};
  for (const auto& i : tv.minimizers) out.terms.emplace(i, field.mul(lc_of(i), d_inv));
  return out;
}

/// An element of value gamma regular for every polynomial in fs: b alpha with
/// b = t^gamma and alpha a nonvanishing point of all reduced polynomials.
template <ResidueField F>
HahnSeries<F> make_regular(std::span<const SigmaPoly<F>> fs, const GroupElem& gamma) {
  if (fs.empty()) throw Error(ErrorKind::DomainError, "make_regular needs at least one polynomial");
  const auto& ctx = fs.front().context();
  const auto b = HahnSeries<F>::t_power(ctx, gamma);
  std::vector<ResPoly<typename F::Element>> reduced;
  for (const auto& f : fs) {
    if (f.nvars() != 1) throw Error(ErrorKind::DimensionMismatch, "make_regular expects one-variable polynomials");
    reduced.push_back(reduced_at(f, std::span<const HahnSeries<F>>(&b, 1)));
  }
  auto alpha = ctx->field.find_nonvanishing(std::span<const ResPoly<typename F::Element>>(reduced));
  return b.scale(alpha);
}

template <ResidueField F>
HahnSeries<F> make_regular(const SigmaPoly<F>& f, const GroupElem& gamma) {
  return make_regular(std::span<const SigmaPoly<F>>(&f, 1), gamma);
}

struct TropicalZero {
  GroupElem gamma;
  unsigned multiplicity;

  friend bool operator==(const TropicalZero&, const TropicalZero&) = default;
};

/// Slopes of the lower Newton polygon of an ordinary one-variable polynomial,
/// ascending, with multiplicity the horizontal length of each edge.
template <ResidueField F>
std::vector<TropicalZero> tropical_zeros_uni(const SigmaPoly<F>& f) {
  if (f.nvars() != 1 || f.order() != 0)
    throw Error(ErrorKind::DomainError, "tropical_zeros_uni expects an ordinary one-variable polynomial");
  if (f.is_zero()) throw Error(ErrorKind::DomainError, "tropical zeros of the zero polynomial");
  struct Pt {
    unsigned i;
    GroupElem v;
  };
  std::vector<Pt> pts;
  for (const auto& [idx, c] : f.coeffs()) {
    auto v = c.valuation();
    if (!v) throw Error(ErrorKind::Indeterminate, "coefficient zero modulo its precision");
    pts.push_back({idx[0], *v});
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.i < b.i; });
  std::vector<Pt> hull;
  for (const auto& p : pts) {
    // Drop the last hull point while it lies on or above the chord to p.
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& m = hull.back();
      const GroupElem lhs = (m.v - a.v) * Rational(p.i - a.i);
      const GroupElem rhs = (p.v - a.v) * Rational(m.i - a.i);
      if (lhs >= rhs) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<TropicalZero> out;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const unsigned len = hull[k + 1].i - hull[k].i;
    out.push_back({(hull[k].v - hull[k + 1].v) / Rational(len), len});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// Finite window of a pseudo-Cauchy sequence with gammas[r] = v(a_{r+1} - a_r).
template <ResidueField F>
struct PcTrace {
  std::vector<HahnSeries<F>> entries;
  std::vector<GroupElem> gammas;
};

/// Computes the gammas and checks they strictly increase.
template <ResidueField F>
PcTrace<F> make_trace(std::vector<HahnSeries<F>> entries) {
  PcTrace<F> out;
  for (std::size_t r = 0; r + 1 < entries.size(); ++r) {
    const auto d = entries[r + 1] - entries[r];
    if (d.is_zero()) throw Error(ErrorKind::Indeterminate, "consecutive trace entries agree to precision");
    out.gammas.push_back(*d.valuation());
    if (r > 0 && !(out.gammas[r - 1] < out.gammas[r]))
      throw Error(ErrorKind::DomainError, "trace values v(a_{r+1} - a_r) are not strictly increasing");
  }
  out.entries = std::move(entries);
  return out;
}

/// Whether the last ceil(N/2) entries of xs strictly increase.
inline bool eventually_increasing(const std::vector<GroupElem>& xs) {
  const std::size_t start = xs.size() / 2;
  for (std::size_t k = start + 1; k < xs.size(); ++k)
    if (!(xs[k - 1] < xs[k])) return false;
  return true;
}

/// Adjusts a trace pseudo-converging to a so that F(b_r) pseudo-converges to
/// F(a) for each nonconstant F: b_r = a_{r+1} + c_r with c_r regular of value
/// gamma_r for every G(x) = F(a + x) - F(a).
template <ResidueField F>
PcTrace<F> adjust_pc(const PcTrace<F>& trace, const HahnSeries<F>& a, std::span<const SigmaPoly<F>> sigma_set) {
  if (trace.entries.size() < 3) throw Error(ErrorKind::DomainError, "trace too short: need at least 3 entries");
  std::vector<SigmaPoly<F>> gs;
  for (const auto& f : sigma_set)
    if (!f.is_constant()) gs.push_back(f.shifted(a));
  if (gs.empty()) gs.push_back(SigmaPoly<F>::variable(a.context(), IndexShape{1, 0}));
  for (std::size_t r = 0; r < trace.gammas.size(); ++r) {
    const auto d = a - trace.entries[r];
    if (d.is_zero() || *d.valuation() != trace.gammas[r])
      throw Error(ErrorKind::DomainError, "trace does not pseudo-converge to the given limit at entry " +
                                              std::to_string(r));
  }
  std::vector<HahnSeries<F>> out;
  for (std::size_t r = 0; r < trace.gammas.size(); ++r) {
    auto c = make_regular(std::span<const SigmaPoly<F>>(gs), trace.gammas[r]);
    out.push_back(trace.entries[r + 1] + c);
  }
  return make_trace(std::move(out));
}

}  // namespace vdf
