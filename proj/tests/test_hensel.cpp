#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vdf/hensel.hpp"

using namespace vdf;
using namespace vdf::testing;

namespace {

const auto Q = make_context<RationalField>(GroupAut::identity(1));
const auto RS = make_context<RatShiftField>(GroupAut::identity(1));

using SQ = HahnSeries<RationalField>;
using SR = HahnSeries<RatShiftField>;

// Binomial series of (1 + t)^(1/2) through t^(n-1).
SQ sqrt_one_plus_t(long n) {
  std::vector<SQ::Term> terms;
  for (long k = 0; k < n; ++k) terms.push_back({g1(k), binomial(Rational(1, 2), static_cast<unsigned long>(k))});
  return SQ(Q, std::move(terms));
}

template <ResidueField F>
HahnSeries<F> terms_only(const HahnSeries<F>& a) {
  return HahnSeries<F>(a.context(), a.terms());
}

}  // namespace

TEST_CASE("configuration") {
  {
    const auto cfg = config(poly(Q, "x^2 - (1+t)"), series(Q, "1"));
    REQUIRE(cfg);
    CHECK(cfg->gamma == g1(1));
    CHECK(cfg->witness == MultiIndex{1});
    CHECK_FALSE(cfg->diagnostics.empty());
  }
  {
    const auto cfg = config(poly(Q, "x"), series(Q, "1"));
    REQUIRE(cfg);
    CHECK(cfg->gamma == g1(0));
  }
  CHECK_FALSE(config(poly(Q, "x^2 - 4"), series(Q, "2")).has_value());
  try {
    (void)config(poly(Q, "1 + t"), series(Q, "1"));
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
  // x^2 - t at 0: v(G(0)) = 1 while G'(0) = 0, so no linear term attains the minimum.
  CHECK_FALSE(config(poly(Q, "x^2 - t"), SQ::zero(Q)).has_value());
}

TEST_CASE("refinement step") {
  {
    const auto g = poly(Q, "x^2 - (1+t)");
    const auto a = series(Q, "1");
    const auto b = refine_step(g, a, *config(g, a));
    CHECK(b == series(Q, "1 + 1/2*t"));
    CHECK(*g.eval(b).valuation() == g1(2));
  }
  {
    const auto g = poly(RS, "s1(x) - x - 1");
    const auto a = SR::zero(RS);
    const auto cfg = config(g, a);
    REQUIRE(cfg);
    CHECK(cfg->gamma == g1(0));
    const auto b = refine_step(g, a, *cfg);
    CHECK(b == series(RS, "s"));
    CHECK(g.eval(b).is_zero());
  }
  {
    const auto g = poly(Q, "x - t");
    const auto b = refine_step(g, SQ::zero(Q), *config(g, SQ::zero(Q)));
    CHECK(b == series(Q, "t"));
    CHECK(g.eval(b).is_zero());
    CHECK(g.eval(b).is_exact());
  }
}

TEST_CASE("iterated solver") {
  {
    const auto g = poly(Q, "x^2 - (1+t)");
    const auto r = solve(g, series(Q, "1", g1(5)));
    CHECK(r.outcome == HenselOutcome::RootFound);
    CHECK_FALSE(r.exact_root);
    // Iterates follow the binomial series term by term.
    for (std::size_t k = 0; k < r.iterates.size(); ++k)
      CHECK(terms_only(r.iterates[k].a) == sqrt_one_plus_t(static_cast<long>(k) + 1));
    CHECK(terms_only(r.iterates.back().a) == sqrt_one_plus_t(5));
    CHECK(r.iterates.back().value_is_bound);
  }
  {
    const auto g = poly(Q, "x - (2 + t^(1/2) - t^3)");
    const auto r = solve(g, series(Q, "2"));
    CHECK(r.outcome == HenselOutcome::RootFound);
    CHECK(r.exact_root);
    CHECK(r.iterates.back().a == series(Q, "2 + t^(1/2) - t^3"));
    CHECK(r.iterates.size() == 3);
  }
  {
    // sigma(x) + x - 1 over Q needs an order-1 residue equation.
    const auto r = solve(poly(Q, "s1(x) + x - 1"), SQ::zero(Q, g1(4)));
    CHECK(r.outcome == HenselOutcome::OracleUnsupported);
    CHECK(r.iterates.size() == 1);
  }
  {
    const auto r = solve(poly(Q, "x^2 - (1+t)"), series(Q, "1"), 3);
    CHECK(r.outcome == HenselOutcome::IterationCap);
    CHECK(r.iterates.size() == 4);
  }
  CHECK_THROWS_AS(solve(poly(Q, "x^2 - 4"), series(Q, "2")), Error);
  CHECK(to_string(HenselOutcome::PrecisionExhausted) == "precision-exhausted");
  CHECK(to_string(HenselOutcome::ConfigLost) == "config-lost");
}

TEST_CASE("property: refinement step contract and derivative stability") {
  Rng rng(kSeed);
  const std::vector<ContextPtr<RatShiftField>> ctxs{
      make_context<RatShiftField>(GroupAut::identity(1)), make_context<RatShiftField>(GroupAut::scaling(1, 2)),
      make_context<RatShiftField>(GroupAut({{1, 0}, {1, 1}}))};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto& ctx = ctxs[static_cast<std::size_t>(trial) % ctxs.size()];
    const auto delta = rand_positive_gamma(rng, ctx->dim(), 3, 2);
    const auto a = rand_series(rng, ctx, rand_gamma(rng, ctx->dim(), 1, 1), 2);
    const auto g = rand_config_poly(rng, ctx, static_cast<std::size_t>(uniform(rng, 0, 1)), delta, a);
    const auto cfg = config(g, a);
    INFO(g.str({"x"}), " at ", a.str(), " delta ", delta.str());
    REQUIRE(cfg);
    SR b;
    try {
      b = refine_step(g, a, *cfg);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Unsupported);
      continue;
    }
    ++checked;
    CHECK(*(b - a).valuation() == cfg->gamma);
    const auto gb = g.eval(b);
    const auto ga = g.eval(a);
    if (gb.is_zero()) continue;
    CHECK(*gb.valuation() > *ga.valuation());
    const auto next = config(g, b);
    REQUIRE(next);
    CHECK(next->gamma > cfg->gamma);
    const auto ta = g.taylor(a);
    const auto tb = g.taylor(b);
    for (const auto& [j, c] : ta) {
      if (is_zero_index(j) || c.is_zero()) continue;
      CHECK(*tb.at(j).valuation() == *c.valuation());
    }
  }
  CHECK(checked >= 40);
}

TEST_CASE("property: residue equations lift to configurations at 0") {
  // 1 + a0 x + a1 sigma(x) with lifts a_i = alpha_i + (higher terms).
  Rng rng(kSeed + 1);
  const RatShiftField k;
  for (int trial = 0; trial < 30; ++trial) {
    const RatFunc x0 = rand_coef(rng, k);
    const RatFunc al1 = coin(rng) ? RatFunc(0) : rand_coef(rng, k);
    const RatFunc al0 = (RatFunc(-1) - al1 * x0.shift(1)) / x0;
    const IndexShape shape{1, 1};
    using P = SigmaPoly<RatShiftField>;
    auto lift = [&](const RatFunc& c) { return SR::constant(RS, c) + rand_series(rng, RS, g1(1), 1); };
    const P g = P::constant(RS, shape, SR::one(RS)) + lift(al0) * P::variable(RS, shape, 0, 0) +
                (al1.is_zero() ? P(RS, shape) : lift(al1) * P::variable(RS, shape, 0, 1));
    const auto cfg = config(g, SR::zero(RS));
    REQUIRE(cfg);
    CHECK(cfg->gamma == g1(0));
    const auto alpha = newton_residue_coeffs(g, SR::zero(RS), *cfg);
    const auto b = refine_step(g, SR::zero(RS), *cfg);
    CHECK(k.is_zero(linear_residual(k, std::span<const RatFunc>(alpha), b.residue())));
    CHECK(k.is_zero(linear_residual(k, std::span<const RatFunc>(std::vector<RatFunc>{al0, al1}), b.residue())));
  }
}

TEST_CASE("property: identity sigma reproduces classical Newton lifting") {
  Rng rng(kSeed + 2);
  const std::size_t n = 8;
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = rand_classical_instance(rng, n);
    INFO(inst.text, " from ", inst.y0.get_str());
    const auto g = poly(Q, inst.text);
    const auto r = solve(g, SQ::constant(Q, inst.y0).truncate(g1(static_cast<long>(n))));
    REQUIRE(r.outcome == HenselOutcome::RootFound);
    const auto expect = classical_newton_root(inst.coeffs, inst.y0, n);
    const auto& root = r.iterates.back().a;
    for (std::size_t k = 0; k < n; ++k) CHECK(root.coefficient(g1(static_cast<long>(k))) == expect[k]);
  }
}
