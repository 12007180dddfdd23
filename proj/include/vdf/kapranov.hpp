#pragma once

#include "vdf/error.hpp"
#include "vdf/sigmapoly.hpp"
#include "vdf/tropical.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vdf {

template <ResidueField F>
struct LiftResult {
  std::vector<HahnSeries<F>> root;
  /// Lower bound for v(F(root)); infinity when the root is exact.
  Precision residual;
  /// v(F^a(b_k)) along the last-variable iteration, strictly increasing.
  std::vector<GroupElem> progress;
};

inline constexpr std::size_t kDefaultLiftIterations = 256;

namespace detail {

// Nonzero residue root of sum_k c_k x^k after removing the factor x^min.
template <ResidueField F>
std::optional<typename F::Element> nonzero_residue_root(const F& field, std::vector<typename F::Element> c) {
  std::size_t lo = 0;
  while (lo < c.size() && field.is_zero(c[lo])) ++lo;
  c.erase(c.begin(), c.begin() + static_cast<long>(lo));
  std::size_t nonzero = 0;
  for (const auto& x : c)
    if (!field.is_zero(x)) ++nonzero;
  if (nonzero < 2) return std::nullopt;
  return field.find_root(std::span<const typename F::Element>(c));
}

// Dense coefficient list of an ordinary one-variable polynomial.
template <ResidueField F>
std::vector<HahnSeries<F>> dense_coeffs(const SigmaPoly<F>& f) {
  std::vector<HahnSeries<F>> out(f.total_degree() + 1, HahnSeries<F>::zero(f.context()));
  for (const auto& [idx, c] : f.coeffs()) out[idx[0]] = c;
  return out;
}

template <ResidueField F>
SigmaPoly<F> from_dense(const ContextPtr<F>& ctx, const std::vector<HahnSeries<F>>& c) {
  typename SigmaPoly<F>::Coeffs m;
  for (unsigned k = 0; k < c.size(); ++k)
    if (!c[k].is_zero() || !c[k].is_exact()) m.emplace(MultiIndex{k}, c[k]);
  return SigmaPoly<F>(ctx, IndexShape{1, 0}, std::move(m));
}

// Newton iteration on an ordinary one-variable polynomial from an irregular b.
template <ResidueField F>
LiftResult<F> lift_univariate(const SigmaPoly<F>& f, HahnSeries<F> b, const GroupElem& cap, std::size_t max_iter) {
  const auto& field = f.context()->field;
  const GroupElem gamma = *b.valuation();
  LiftResult<F> out;
  for (std::size_t it = 0;; ++it) {
    const auto r = f.eval(b);
    if (r.is_zero() || !(*r.valuation() < cap)) {
      out.residual = r.value_bound();
      break;
    }
    const GroupElem target = *r.valuation();
    if (!out.progress.empty() && !(out.progress.back() < target))
      throw Error(ErrorKind::DomainError, "lifting made no progress at " + target.str());
    out.progress.push_back(target);
    if (it == max_iter) throw Error(ErrorKind::Precision, "lifting did not reach the cap within the iteration limit");
    const auto taylor = f.taylor(b);
    std::optional<GroupElem> delta;
    for (const auto& [i, g] : taylor) {
      if (i[0] == 0) continue;
      if (g.is_zero()) {
        if (g.is_exact()) continue;
        throw Error(ErrorKind::Precision, "derivative vanishes modulo its precision");
      }
      GroupElem d = (target - *g.valuation()) / Rational(i[0]);
      if (!delta || *delta < d) delta = d;
    }
    if (!(gamma < *delta)) throw Error(ErrorKind::DomainError, "correction would change the value of the root");
    std::vector<typename F::Element> h(f.total_degree() + 1, field.zero());
    h[0] = field.one();
    const auto inv_lead = field.inv(r.leading_coef());
    for (const auto& [i, g] : taylor) {
      if (i[0] == 0 || g.is_zero()) continue;
      if (*g.valuation() + *delta * Rational(i[0]) == target) h[i[0]] = field.mul(g.leading_coef(), inv_lead);
    }
    auto c = field.find_root(std::span<const typename F::Element>(h));
    if (!c) throw Error(ErrorKind::Unsupported, "residue-root-unsupported: no residue root of H + 1");
    b = b + HahnSeries<F>::monomial(f.context(), *c, *delta);
  }
  out.root.push_back(std::move(b));
  return out;
}

// Candidate residue values for fixing leading variables.
inline std::vector<Rational> search_values() { return {1, -1, 2, -2, Rational(1, 2), Rational(-1, 2), 3, -3}; }

}  // namespace detail

/// Root of the ordinary polynomial F with value tuple gamma, accurate until
/// v(F(root)) reaches cap.
template <ResidueField F>
LiftResult<F> lift_root(const SigmaPoly<F>& f, std::span<const GroupElem> gamma, const GroupElem& cap,
                        std::size_t max_iter = kDefaultLiftIterations) {
  if (f.order() != 0) throw Error(ErrorKind::DomainError, "lift_root expects an ordinary polynomial");
  if (gamma.size() != f.nvars()) throw Error(ErrorKind::DimensionMismatch, "value tuple of wrong arity");
  if (!is_tropical_zero(f, gamma))
    throw Error(ErrorKind::NotTropicalZero, "the value tuple is not a tropical zero of F");
  const auto& ctx = f.context();
  const auto& field = ctx->field;
  const IndexShape& shape = f.shape();
  const std::size_t n = f.nvars();
  std::vector<HahnSeries<F>> a;
  for (const auto& g : gamma) a.push_back(HahnSeries<F>::t_power(ctx, g));
  const auto reduced = reduced_at(f, std::span<const HahnSeries<F>>(a));

  // Residue point y-bar with all entries nonzero and reduced(y-bar) = 0.
  std::vector<typename F::Element> ybar(n, field.one());
  if (!field.is_zero(eval(field, reduced, std::span<const typename F::Element>(ybar)))) {
    bool found = false;
    std::vector<std::size_t> choice(n - 1, 0);
    const auto values = detail::search_values();
    while (!found) {
      for (std::size_t v = 0; v + 1 < n; ++v) ybar[v] = field.from_rational(values[choice[v]]);
      std::vector<typename F::Element> uni(f.total_degree() + 1, field.zero());
      for (const auto& [idx, c] : reduced.terms) {
        auto term = c;
        for (std::size_t v = 0; v + 1 < n; ++v) term = field.mul(term, power(field, ybar[v], idx[v]));
        uni[idx[n - 1]] = field.add(uni[idx[n - 1]], term);
      }
      if (auto r = detail::nonzero_residue_root(field, uni)) {
        ybar[n - 1] = *r;
        found = true;
        break;
      }
      std::size_t p = 0;
      while (p + 1 < n && choice[p] + 1 == values.size()) choice[p++] = 0;
      if (p + 1 >= n) break;
      ++choice[p];
    }
    if (!found) throw Error(ErrorKind::Unsupported, "residue-root-unsupported: reduced polynomial has no residue zero");
  }

  // F^a(y) = F(a_1 y_1, ..., a_{n-1} y_{n-1}, y).
  std::vector<HahnSeries<F>> fixed;
  for (std::size_t v = 0; v + 1 < n; ++v) fixed.push_back(a[v].scale(ybar[v]));
  typename SigmaPoly<F>::Coeffs uni;
  for (const auto& [idx, c] : f.coeffs()) {
    auto term = c;
    for (std::size_t v = 0; v + 1 < n; ++v)
      for (unsigned e = 0; e < idx[shape.position(v, 0)]; ++e) term = term * fixed[v];
    MultiIndex key{idx[shape.position(n - 1, 0)]};
    auto it = uni.find(key);
    if (it == uni.end()) uni.emplace(key, term);
    else it->second += term;
  }
  const SigmaPoly<F> fa(ctx, IndexShape{1, 0}, std::move(uni));
  auto out = detail::lift_univariate(fa, a[n - 1].scale(ybar[n - 1]), cap, max_iter);
  fixed.push_back(out.root.front());
  out.root = std::move(fixed);
  return out;
}

template <ResidueField F>
LiftResult<F> lift_root(const SigmaPoly<F>& f, const GroupElem& gamma, const GroupElem& cap,
                        std::size_t max_iter = kDefaultLiftIterations) {
  return lift_root(f, std::span<const GroupElem>(&gamma, 1), cap, max_iter);
}

template <ResidueField F>
struct PuiseuxRoot {
  HahnSeries<F> root;
  unsigned multiplicity;
};

namespace detail {

struct HullEdge {
  unsigned lo;
  unsigned hi;
  GroupElem slope;  // the root value
};

template <ResidueField F>
std::vector<HullEdge> newton_edges(const std::vector<HahnSeries<F>>& c) {
  std::vector<std::pair<unsigned, GroupElem>> hull;
  for (unsigned k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    const GroupElem v = *c[k].valuation();
    while (hull.size() >= 2) {
      const auto& [ia, va] = hull[hull.size() - 2];
      const auto& [im, vm] = hull.back();
      if ((vm - va) * Rational(k - ia) >= (v - va) * Rational(im - ia)) hull.pop_back();
      else break;
    }
    hull.emplace_back(k, v);
  }
  std::vector<HullEdge> out;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e)
    out.push_back({hull[e].first, hull[e + 1].first,
                   (hull[e].second - hull[e + 1].second) / Rational(hull[e + 1].first - hull[e].first)});
  return out;
}

inline constexpr std::size_t kMaxPuiseuxDepth = 4096;

// Roots y of sum_k c_k y^k with v(y) > floor (all roots when floor is empty),
// with repetition, each modulo t^cap.
template <ResidueField F>
std::vector<HahnSeries<F>> puiseux_expand(const ContextPtr<F>& ctx, const std::vector<HahnSeries<F>>& c,
                                          const std::optional<GroupElem>& floor, const GroupElem& cap,
                                          std::size_t depth) {
  if (depth > kMaxPuiseuxDepth) throw Error(ErrorKind::Precision, "Newton-Puiseux recursion too deep");
  const auto& field = ctx->field;
  std::vector<HahnSeries<F>> out;
  unsigned zeros = 0;
  while (zeros < c.size() && c[zeros].is_zero()) ++zeros;
  for (unsigned k = 0; k < zeros; ++k) out.push_back(HahnSeries<F>::zero(ctx));
  for (const auto& e : newton_edges(c)) {
    if (floor && !(*floor < e.slope)) continue;
    const unsigned mult = e.hi - e.lo;
    if (!(e.slope < cap)) {
      for (unsigned k = 0; k < mult; ++k) out.push_back(HahnSeries<F>::zero(ctx, cap));
      continue;
    }
    const GroupElem base = *c[e.lo].valuation() + e.slope * Rational(e.lo);
    std::vector<typename F::Element> phi(mult + 1, field.zero());
    for (unsigned k = e.lo; k <= e.hi; ++k)
      if (!c[k].is_zero() && *c[k].valuation() + e.slope * Rational(k) == base) phi[k - e.lo] = c[k].leading_coef();
    unsigned found = 0;
    while (phi.size() > 1) {
      auto r = field.find_root(std::span<const typename F::Element>(phi));
      if (!r) throw Error(ErrorKind::Unsupported, "residue-root-unsupported: edge polynomial has no residue root");
      unsigned mu = 0;
      // Deflate by (z - r) while it divides.
      while (phi.size() > 1 && field.is_zero(eval_dense(field, std::span<const typename F::Element>(phi), *r))) {
        std::vector<typename F::Element> q(phi.size() - 1, field.zero());
        auto carry = field.zero();
        for (std::size_t k = phi.size(); k-- > 1;) {
          carry = field.add(phi[k], field.mul(carry, *r));
          q[k - 1] = carry;
        }
        phi = std::move(q);
        ++mu;
      }
      found += mu;
      const auto point = HahnSeries<F>::monomial(ctx, *r, e.slope);
      const auto f = from_dense(ctx, c);
      const auto taylor = f.taylor(point);
      std::vector<HahnSeries<F>> next(c.size(), HahnSeries<F>::zero(ctx));
      for (const auto& [i, g] : taylor) next[i[0]] = g.shift(e.slope * Rational(i[0]) - base);
      const auto sub = puiseux_expand(ctx, next, GroupElem::zero(ctx->dim()), cap - e.slope, depth + 1);
      if (sub.size() != mu) throw Error(ErrorKind::DomainError, "Newton-Puiseux multiplicity mismatch");
      for (const auto& y : sub) out.push_back(point + y.shift(e.slope));
    }
    if (found != mult) throw Error(ErrorKind::DomainError, "edge polynomial degree mismatch");
  }
  return out;
}

}  // namespace detail

/// All roots of an ordinary one-variable polynomial by classical
/// Newton-Puiseux expansion, each modulo t^cap, with multiplicities.
template <ResidueField F>
std::vector<PuiseuxRoot<F>> np_all_roots(const SigmaPoly<F>& f, const GroupElem& cap) {
  if (f.nvars() != 1 || f.order() != 0)
    throw Error(ErrorKind::DomainError, "np_all_roots expects an ordinary one-variable polynomial");
  if (f.is_constant()) throw Error(ErrorKind::DomainError, "np_all_roots of a constant polynomial");
  const auto roots = detail::puiseux_expand(f.context(), detail::dense_coeffs(f), std::nullopt, cap, 0);
  std::vector<PuiseuxRoot<F>> out;
  for (const auto& r : roots) {
    auto it = std::find_if(out.begin(), out.end(), [&](const PuiseuxRoot<F>& p) { return p.root == r; });
    if (it == out.end()) out.push_back({r, 1});
    else ++it->multiplicity;
  }
  return out;
}

}  // namespace vdf
