#pragma once

// Fixed-seed generators and small constructors shared by the test binaries.

#include "vdf/io.hpp"
#include "vdf/series.hpp"
#include "vdf/sigmapoly.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace vdf::testing {

using Rng = std::mt19937_64;
inline constexpr std::uint64_t kSeed = 20260915;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

inline Rational rand_rational(Rng& rng, long range = 5, long den_max = 3, bool nonzero = false) {
  while (true) {
    Rational q(uniform(rng, -range, range), uniform(rng, 1, den_max));
    q.canonicalize();
    if (!nonzero || q != 0) return q;
  }
}

inline GroupElem rand_gamma(Rng& rng, std::size_t dim, long range = 4, long den_max = 3) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < dim; ++i) c.push_back(rand_rational(rng, range, den_max));
  return GroupElem(std::move(c));
}

inline GroupElem rand_positive_gamma(Rng& rng, std::size_t dim, long range = 4, long den_max = 3) {
  while (true) {
    auto g = rand_gamma(rng, dim, range, den_max);
    if (g > GroupElem::zero(dim)) return g;
  }
}

template <class F>
typename F::Element rand_coef(Rng& rng, const F& field) {
  return field.from_rational(rand_rational(rng, 5, 3, true));
}

template <>
inline RatFunc rand_coef<RatShiftField>(Rng& rng, const RatShiftField&) {
  switch (uniform(rng, 0, 3)) {
    case 0: return RatFunc(rand_rational(rng, 5, 3, true));
    case 1: return RatFunc::s() + RatFunc(rand_rational(rng, 3, 1));
    case 2: return RatFunc(rand_rational(rng, 3, 2, true)) * RatFunc::s();
    default: return (RatFunc::s() + RatFunc(uniform(rng, 1, 3))).inverse();
  }
}

/// Random series with value exactly v (when terms > 0) and the given precision.
template <ResidueField F>
HahnSeries<F> rand_series(Rng& rng, const ContextPtr<F>& ctx, const GroupElem& v, std::size_t terms,
                          const Precision& prec = std::nullopt) {
  using S = HahnSeries<F>;
  S out = S::zero(ctx);
  GroupElem g = v;
  for (std::size_t k = 0; k < terms; ++k) {
    out = out + S::monomial(ctx, rand_coef(rng, ctx->field), g);
    g = g + rand_positive_gamma(rng, ctx->dim(), 2, 2);
  }
  return out.truncate(prec);
}

template <ResidueField F>
HahnSeries<F> series(const ContextPtr<F>& ctx, const std::string& text, const Precision& cap = std::nullopt) {
  return parse_series(text, ctx, cap);
}

template <ResidueField F>
SigmaPoly<F> poly(const ContextPtr<F>& ctx, const std::string& text, const Precision& cap = std::nullopt) {
  return parse_sigmapoly(text, ctx, cap).poly;
}

inline GroupElem g1(const Rational& q) { return GroupElem{q}; }

/// G(x) = G0(x - a0) with G0 = c t^delta + sum_k u_k sigma^k(x) + sum_k w_k sigma^k(x)^2,
/// delta > 0, units u_k (u_0 always present) and v(w_k) >= 0, squares only where
/// the linear term is present so that no nonzero derivative vanishes at a0.
/// (G, a0) is then in configuration with gamma = delta when sigma(delta) >= delta.
template <ResidueField F>
SigmaPoly<F> rand_config_poly(Rng& rng, const ContextPtr<F>& ctx, std::size_t order, const GroupElem& delta,
                              const HahnSeries<F>& a0) {
  using S = HahnSeries<F>;
  using P = SigmaPoly<F>;
  const IndexShape shape{1, order};
  const auto zero = GroupElem::zero(ctx->dim());
  P g0 = P::constant(ctx, shape, S::monomial(ctx, rand_coef(rng, ctx->field), delta));
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0 && coin(rng)) continue;
    const auto xk = P::variable(ctx, shape, 0, k);
    g0 = g0 + rand_series(rng, ctx, zero, 2) * xk;
    if (coin(rng))
      g0 = g0 + rand_series(rng, ctx, coin(rng) ? zero : rand_positive_gamma(rng, ctx->dim(), 2, 2), 2) * xk * xk;
  }
  // G0(x - a0) = G0.shifted(-a0)(x) + G0(-a0)
  return g0.shifted(-a0) + P::constant(ctx, shape, g0.eval(-a0));
}

}  // namespace vdf::testing
