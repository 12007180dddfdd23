#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vdf/sigmapoly.hpp"

using namespace vdf;
using namespace vdf::testing;

namespace {

const auto Q = make_context<RationalField>(GroupAut::identity(1));
const auto Q2 = make_context<RationalField>(GroupAut::scaling(1, 2));
const auto RS = make_context<RatShiftField>(GroupAut::identity(1));

using SQ = HahnSeries<RationalField>;
using PQ = SigmaPoly<RationalField>;

template <ResidueField F>
SigmaPoly<F> rand_poly(Rng& rng, const ContextPtr<F>& ctx, const IndexShape& shape, int monomials, unsigned max_exp) {
  SigmaPoly<F> f(ctx, shape);
  for (int m = 0; m < monomials; ++m) {
    MultiIndex i(shape.width());
    for (auto& e : i) e = static_cast<unsigned>(uniform(rng, 0, max_exp));
    const auto c = rand_series(rng, ctx, rand_gamma(rng, ctx->dim(), 2, 2), 2);
    f = f + SigmaPoly<F>(ctx, shape, {{i, c}});
  }
  return f;
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(poly(Q2, "s1(x)*x - t").eval(series(Q2, "t^(1/3)")).is_zero());
  CHECK(poly(Q2, "s1(x)*x - t").eval(series(Q2, "t^(1/3)")).is_exact());
  const auto a = series(Q, "2 - t^(1/2)");
  CHECK(poly(Q, "x").eval(a) == a);
  CHECK(poly(RS, "s1(x) - x").eval(series(RS, "s")) == series(RS, "1"));
  const auto xy = parse_sigmapoly("x*y - 1", Q);
  const std::vector<SQ> pt{series(Q, "t"), series(Q, "t^(-1)")};
  CHECK(xy.poly.eval(std::span<const SQ>(pt)).is_zero());
}

TEST_CASE("Taylor coefficients") {
  const auto a = series(Q2, "1 + t");
  {
    const auto tay = poly(Q2, "x^2").taylor(a);
    CHECK(tay.at({0}) == a * a);
    CHECK(tay.at({1}) == a.scale(2));
    CHECK(tay.at({2}) == series(Q2, "1"));
    CHECK(tay.size() == 3);
  }
  {
    const auto tay = poly(Q2, "s1(x)").taylor(a);
    CHECK(tay.at({0, 0}) == a.sigma());
    CHECK(tay.at({0, 1}) == series(Q2, "1"));
    CHECK((!tay.count({1, 0}) || tay.at({1, 0}).is_zero()));
  }
  {
    // (t + x)(sigma(t) + sigma(x)) with sigma(t) = t^2.
    const auto tay = poly(Q2, "x*s1(x)").taylor(series(Q2, "t"));
    CHECK(tay.at({0, 0}) == series(Q2, "t^3"));
    CHECK(tay.at({1, 0}) == series(Q2, "t^2"));
    CHECK(tay.at({0, 1}) == series(Q2, "t"));
    CHECK(tay.at({1, 1}) == series(Q2, "1"));
  }
}

TEST_CASE("scale composition") {
  CHECK(poly(Q, "x").scale_compose(series(Q, "t")) == poly(Q, "t*x"));
  CHECK(poly(Q2, "s1(x)").scale_compose(series(Q2, "t")) == poly(Q2, "t^2*s1(x)"));
  CHECK(poly(Q2, "x*s1(x) - 1").scale_compose(series(Q2, "t")) == poly(Q2, "t^3*x*s1(x) - 1"));
  CHECK_THROWS_AS((void)poly(Q, "x").scale_compose(SQ::zero(Q)), Error);
}

TEST_CASE("residue reduction") {
  {
    const auto r = poly(Q, "(1+t)*x + t*s1(x)").residue_reduce();
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms.at({1, 0}) == 1);
  }
  CHECK(poly(Q, "t*x + t^2").residue_reduce().is_zero());
  {
    const auto r = poly(Q, "2*x*s1(x) + 3").residue_reduce();
    CHECK(r.terms.at({1, 1}) == 2);
    CHECK(r.terms.at({0, 0}) == 3);
  }
  CHECK_THROWS_AS((void)poly(Q, "t^(-1)*x").residue_reduce(), Error);
}

TEST_CASE("text form and variable order") {
  const auto p = parse_sigmapoly("s0(x)*s1(x) - t^(1)", Q);
  CHECK(p.vars == std::vector<std::string>{"x"});
  CHECK(p.poly.order() == 1);
  CHECK(poly(Q, p.poly.str(p.vars)) == p.poly);
  const auto q = parse_sigmapoly("y*x + s2(x) - 3", Q);
  CHECK(q.vars == std::vector<std::string>{"y", "x"});
  CHECK(q.poly.order() == 2);
  CHECK(parse_sigmapoly(q.poly.str(q.vars), Q).poly == q.poly);
  CHECK_THROWS_AS(parse_sigmapoly("s1(x + 1)", Q), ParseError);
  CHECK_THROWS_AS(parse_sigmapoly("x / x", Q), ParseError);
}

TEST_CASE("complexity order") {
  // (order, total degree, number of monomials), lexicographic.
  CHECK(poly(Q, "x^5 + x^4 + 1").complexity() < poly(Q, "s1(x)").complexity());
  CHECK(poly(Q, "x^2").complexity() < poly(Q, "x^3").complexity());
  CHECK(poly(Q, "x^2").complexity() < poly(Q, "x^2 + 1").complexity());
}

TEST_CASE("property: Taylor identity F(a + x) = sum F_(i)(a) sigma(x)^i") {
  Rng rng(kSeed);
  const auto ctx = make_context<RatShiftField>(GroupAut::scaling(1, 2));
  for (int trial = 0; trial < 50; ++trial) {
    const IndexShape shape{1, static_cast<std::size_t>(uniform(rng, 0, 2))};
    const auto f = rand_poly(rng, ctx, shape, 3, 2);
    const auto a = rand_series(rng, ctx, rand_gamma(rng, 1, 2, 2), 2);
    const auto x = rand_series(rng, ctx, rand_gamma(rng, 1, 2, 2), 2);
    const auto tay = f.taylor(a);
    const SigmaPoly<RatShiftField> expansion(ctx, shape, {tay.begin(), tay.end()});
    CHECK(f.eval(a + x) == expansion.eval(x));
    CHECK(tay.at(MultiIndex(shape.width(), 0)) == f.eval(a));
  }
}

TEST_CASE("property: scale composition and residue reduction commute with evaluation") {
  Rng rng(kSeed + 1);
  const auto ctx = make_context<RatShiftField>(GroupAut({{1, 0}, {1, 1}}));
  const RatShiftField k;
  for (int trial = 0; trial < 50; ++trial) {
    const IndexShape shape{1, 1};
    const auto f = rand_poly(rng, ctx, shape, 3, 2);
    const auto b = rand_series(rng, ctx, rand_gamma(rng, 2, 2, 2), 2);
    const auto x = rand_series(rng, ctx, rand_gamma(rng, 2, 2, 2), 2);
    CHECK(f.scale_compose(b).eval(x) == f.eval(b * x));

    // Nonnegative coefficients and a point of value >= 0.
    SigmaPoly<RatShiftField> g(ctx, shape);
    for (const auto& [i, c] : f.coeffs()) {
      const auto v = *c.valuation();
      g = g + SigmaPoly<RatShiftField>(ctx, shape, {{i, v < GroupElem::zero(2) ? c.shift(-v) : c}});
    }
    const auto u = rand_series(rng, ctx, coin(rng) ? GroupElem::zero(2) : rand_positive_gamma(rng, 2), 2);
    CHECK(k.equal(g.eval(u).residue(), eval(k, g.residue_reduce(), u.residue())));
  }
}
