#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vdf/resfield.hpp"

using namespace vdf;
using namespace vdf::testing;

namespace {

template <ResidueField F>
ResPoly<typename F::Element> reduced(const std::string& text, F field = {}) {
  return poly(make_context<F>(GroupAut::identity(1), field), text).residue_reduce();
}

const RatFunc s = RatFunc::s();

}  // namespace

TEST_CASE("nonvanishing search") {
  const RatShiftField k;
  {
    const auto p = reduced<RatShiftField>("s1(x) - x");
    const auto a = k.find_nonvanishing(std::span(&p, 1));
    CHECK(a == s);
  }
  {
    const auto p = reduced<RatShiftField>("x");
    CHECK(k.find_nonvanishing(std::span(&p, 1)) == RatFunc(1));
    const auto q = reduced<RationalField>("x");
    CHECK(RationalField{}.find_nonvanishing(std::span(&q, 1)) == 1);
    const auto e = reduced<ExpGroupField>("x");
    CHECK(ExpGroupField{}.find_nonvanishing(std::span(&e, 1)) == ExpFrac(1));
  }
  {
    const auto p = reduced<RatShiftField>("s1(x)*x - s*(s+1)");
    const auto a = k.find_nonvanishing(std::span(&p, 1));
    CHECK_FALSE(k.is_zero(eval(k, p, a)));
    CHECK(k.is_zero(eval(k, p, s)));
    CHECK_FALSE(k.is_zero(eval(k, p, s + RatFunc(7))));
  }
  {
    // sigma-bar is trivial on Q, so sigma(x) - x vanishes everywhere.
    const auto p = reduced<RationalField>("s1(x) - x");
    try {
      (void)RationalField{}.find_nonvanishing(std::span(&p, 1));
      FAIL("expected axiom-1-unsupported");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Unsupported);
    }
  }
}

TEST_CASE("linear difference equations") {
  CHECK(RationalField{}.solve_linear(std::vector<Rational>{-1}) == Rational(1));
  const RatShiftField k;
  CHECK(k.solve_linear(std::vector<RatFunc>{RatFunc(0), RatFunc(1)}) == RatFunc(-1));
  const auto x = k.solve_linear(std::vector<RatFunc>{-(s + RatFunc(2)) / s, RatFunc(1)});
  REQUIRE(x);
  CHECK(*x == s);
  // Order 1 exceeds the declared capability of Q.
  CHECK_FALSE(RationalField{}.solve_linear(std::vector<Rational>{1, 1}).has_value());
  CHECK(RationalField{}.axiom2_max_order() == 0);
  CHECK(k.axiom2_max_order() == 1);
  // Order 2 is beyond RatShift.
  CHECK_FALSE(k.solve_linear(std::vector<RatFunc>{RatFunc(1), RatFunc(1), RatFunc(1)}).has_value());
}

TEST_CASE("ordinary root finding") {
  const RationalField q;
  const auto r = q.find_root(std::vector<Rational>{-4, 0, 1});
  REQUIRE(r);
  CHECK(*r * *r == 4);
  CHECK(q.find_root(std::vector<Rational>{-3, 1}) == Rational(3));
  CHECK_FALSE(q.find_root(std::vector<Rational>{-2, 0, 1}).has_value());
  CHECK(RatShiftField{}.find_root(std::vector<RatFunc>{-s, RatFunc(1)}) == s);
}

TEST_CASE("residue text forms") {
  CHECK(parse_residue(RationalField{}, "-3/4") == Rational(-3, 4));
  CHECK(parse_residue(RatShiftField{}, "s/(s+1)") == s / (s + RatFunc(1)));
  CHECK(parse_residue(ExpGroupField{}, "3/2*E^(1/2) + 1") == ExpFrac::exp(Rational(1, 2), Rational(3, 2)) + ExpFrac(1));
  CHECK(parse_residue(ExpGroupField{}, "E*E^(-1)") == ExpFrac(1));
  const auto f = (s * s + RatFunc(1)) / (s + RatFunc(3));
  CHECK(parse_residue(RatShiftField{}, f.str()) == f);
  const auto e = (ExpFrac::exp(2) - ExpFrac(1)) / (ExpFrac::exp(Rational(1, 3)) + ExpFrac(5));
  CHECK(parse_residue(ExpGroupField{}, e.str()) == e);
}

namespace {

ExpFrac rand_exp(Rng& rng) {
  ExpFrac out;
  const long n = uniform(rng, 1, 3);
  for (long i = 0; i < n; ++i) out += ExpFrac::exp(rand_rational(rng, 3, 2), rand_rational(rng, 4, 2, true));
  if (out.is_zero()) out = ExpFrac(1);
  return out;
}

template <ResidueField F, class Gen>
void field_axioms(const F& k, Gen gen, int trials) {
  for (int t = 0; t < trials; ++t) {
    const auto a = gen();
    const auto b = gen();
    const auto c = gen();
    CHECK(k.equal(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c))));
    CHECK(k.equal(k.add(k.add(a, b), c), k.add(a, k.add(b, c))));
    CHECK(k.equal(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c))));
    CHECK(k.equal(k.mul(a, b), k.mul(b, a)));
    if (!k.is_zero(a)) CHECK(k.equal(k.mul(a, k.inv(a)), k.one()));
    CHECK(k.equal(k.sigma(k.add(a, b), 1), k.add(k.sigma(a, 1), k.sigma(b, 1))));
    CHECK(k.equal(k.sigma(k.mul(a, b), 1), k.mul(k.sigma(a, 1), k.sigma(b, 1))));
    CHECK(k.equal(k.sigma(k.sigma(a, -1), 1), a));
  }
}

}  // namespace

TEST_CASE("property: field axioms and sigma-bar is an automorphism") {
  Rng rng(kSeed);
  field_axioms(RationalField{}, [&] { return rand_rational(rng, 9, 5); }, 100);
  field_axioms(RatShiftField{}, [&] { return rand_coef(rng, RatShiftField{}) * rand_coef(rng, RatShiftField{}); }, 100);
  field_axioms(ExpGroupField{}, [&] { return rand_exp(rng); }, 60);
}

TEST_CASE("property: sigma-bar on Q(s) has infinite order") {
  for (long d = 1; d <= 50; ++d) CHECK(s.shift(d) != s);
}

TEST_CASE("property: first-order solutions satisfy their equation") {
  Rng rng(kSeed + 7);
  const RatShiftField k;
  int solved = 0;
  for (int t = 0; t < 60; ++t) {
    // Build the equation from a known solution x0.
    const RatFunc x0 = rand_coef(rng, k);
    const RatFunc a1 = rand_coef(rng, k);
    const RatFunc a0 = (RatFunc(-1) - a1 * x0.shift(1)) / x0;
    const std::vector<RatFunc> alpha{a0, a1};
    const auto x = k.solve_linear(alpha);
    if (!x) continue;
    ++solved;
    CHECK(k.is_zero(linear_residual(k, std::span<const RatFunc>(alpha), *x)));
  }
  CHECK(solved == 60);
}

TEST_CASE("property: nonvanishing results do not vanish") {
  Rng rng(kSeed + 11);
  const RatShiftField k;
  const auto ctx = make_context<RatShiftField>(GroupAut::identity(1));
  for (int t = 0; t < 40; ++t) {
    SigmaPoly<RatShiftField> f(ctx, IndexShape{1, 1});
    for (int m = 0; m < 3; ++m) {
      const MultiIndex i{static_cast<unsigned>(uniform(rng, 0, 2)), static_cast<unsigned>(uniform(rng, 0, 2))};
      f = f + SigmaPoly<RatShiftField>(ctx, IndexShape{1, 1},
                                       {{i, HahnSeries<RatShiftField>::constant(ctx, rand_coef(rng, k))}});
    }
    const auto p = f.residue_reduce();
    if (p.is_zero()) continue;
    const auto a = k.find_nonvanishing(std::span(&p, 1));
    CHECK_FALSE(k.is_zero(eval(k, p, a)));
  }
}
