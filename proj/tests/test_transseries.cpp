#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vdf/hensel.hpp"
#include "vdf/transseries.hpp"

using namespace vdf;
using namespace vdf::testing;

namespace {

Transseries tr(const std::string& text, std::size_t depth = 1, const std::optional<Transmonomial>& cap = std::nullopt) {
  return parse_transseries(text, depth, cap);
}

Transmonomial xp(const Rational& a, std::size_t depth = 1) { return Transmonomial::x_power(depth, a); }

// f agrees with g below the coarser of the two precisions.
bool agree(const Transseries& f, const Transseries& g) { return (f - g).is_zero(); }

// Random flat f = sum c_k x^(a_k) with a_k in halves from -4 to 2, avoiding -1 when asked.
Transseries rand_flat(Rng& rng, std::size_t depth, bool avoid_log) {
  Transseries f = Transseries::zero(depth);
  const long n = uniform(rng, 1, 4);
  for (long k = 0; k < n; ++k) {
    Rational a(uniform(rng, -8, 4), 2);
    a.canonicalize();
    if (avoid_log && a == -1) continue;
    f += Transseries::x_power(depth, a, rand_rational(rng, 4, 3, true));
  }
  return f;
}

// Random f with e-parts in {0, +-x, 2x, -x^2} and x-exponents in 0..3 at depth 2.
// The binomial expansions are finite, so composition is exact without a cap.
Transseries rand_mixed(Rng& rng) {
  static const std::vector<std::vector<Rational>> qs{{0, 0}, {1, 0}, {-1, 0}, {2, 0}, {0, -1}};
  Transseries f = Transseries::zero(2);
  const long n = uniform(rng, 1, 4);
  for (long k = 0; k < n; ++k) {
    const Transmonomial m(Rational(uniform(rng, 0, 3)), qs[static_cast<std::size_t>(uniform(rng, 0, 4))]);
    f += Transseries::monomial(2, ExpFrac(rand_rational(rng, 4, 3, true)), m);
  }
  return f;
}

}  // namespace

TEST_CASE("derivative") {
  CHECK(derive(tr("x^2")) == tr("2*x"));
  CHECK(derive(tr("e^(x)")) == tr("e^(x)"));
  CHECK(derive(tr("x*e^(x^2)", 2)) == tr("(1 + 2*x^2)*e^(x^2)", 2));
  CHECK(derive(tr("3")) == Transseries::zero(1));
  CHECK(derive(tr("x^(-1) + O(x^(-4))")).prec() == xp(-5));
}

TEST_CASE("flat integration") {
  CHECK(integrate_flat(tr("x^(-2)")) == tr("-x^(-1)"));
  CHECK(integrate_flat(tr("1")) == tr("x"));
  CHECK(integrate_flat(tr("x^(1/2)")) == tr("2/3*x^(3/2)"));
  try {
    (void)integrate_flat(tr("x^(-1)"));
    FAIL("expected logarithm-needed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LogarithmNeeded);
  }
  CHECK_THROWS_AS((void)integrate_flat(tr("e^(x)")), Error);
}

TEST_CASE("composition with x + 1") {
  CHECK(compose_shift(tr("x")) == tr("x + 1"));
  CHECK(compose_shift(tr("e^(x)")) == tr("E*e^(x)"));
  const auto s = compose_shift(tr("e^(x^2)", 2));
  CHECK(s == tr("E*e^(x^2 + 2*x)", 2));
  CHECK(s.dominant() == tr("e^(x^2)", 2).dominant() * tr("e^(2*x)", 2).dominant());
  // (1 + 1/x)^(-1) = 1 - x^-1 + x^-2 - ...
  CHECK(compose_shift(tr("x^(-1)"), 1, xp(-5)) == tr("x^(-1) - x^(-2) + x^(-3) - x^(-4) + O(x^(-5))"));
  CHECK(compose_shift(tr("x^2"), -1) == tr("x^2 - 2*x + 1"));
}

TEST_CASE("coarsening by the flat monomials") {
  {
    const auto c = coarse_w(tr("e^(x)*(1 + x^(-1)) + 1"));
    CHECK(c.epart == std::vector<Rational>{1});
    CHECK(c.residue == tr("1 + x^(-1)"));
  }
  {
    const auto f = tr("x^3 - 2*x^(-1/2)");
    const auto c = coarse_w(f);
    CHECK(c.epart == std::vector<Rational>{0});
    CHECK(c.residue == f);
  }
  {
    const auto c = coarse_w(tr("e^(x^2) + e^(x)", 2));
    CHECK(c.epart == std::vector<Rational>{0, 1});
    CHECK(c.residue == tr("1", 2));
  }
  CHECK_THROWS_AS((void)coarse_w(Transseries::zero(1)), Error);
}

TEST_CASE("linear difference equations") {
  {
    const auto h = parse_difference_operator("1 + e^D", 1);
    CHECK(solve_linear_difference(h, tr("1")).exact_part() == tr("1/2"));
  }
  {
    // Summation of x^-2 against the Bernoulli numbers:
    // f = -x^-1 - sum_{k>=1} B_k x^(-k-1) with B_1 = +1/2 in this convention.
    const auto h = parse_difference_operator("e^D - 1", 1);
    const auto f = solve_linear_difference(h, tr("x^(-2)"), 10);
    const auto b = bernoulli(8);
    CHECK(f.coefficient(xp(-1)) == ExpFrac(Rational(-1)));
    for (long k = 1; k <= 6; ++k) {
      const Rational bk = k == 1 ? -b[1] : b[static_cast<std::size_t>(k)];
      CHECK(f.coefficient(xp(-k - 1)) == ExpFrac(-bk));
    }
    CHECK(agree(compose_shift(f) - f, tr("x^(-2)")));
    REQUIRE(f.prec());
    CHECK(f.prec()->xpow <= -7);
  }
  {
    const auto h = parse_difference_operator("e^D - 1", 1);
    CHECK(solve_linear_difference(h, tr("1")).exact_part() == tr("x"));
  }
  {
    const auto h = parse_difference_operator("e^D - 1", 1);
    try {
      (void)solve_linear_difference(h, tr("x^(-1)"));
      FAIL("expected logarithm-needed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::LogarithmNeeded);
    }
  }
  CHECK_THROWS_AS((void)solve_linear_difference(std::vector<Transseries>{tr("0"), tr("0")}, tr("1")), Error);
}

TEST_CASE("property: derivative inverts flat integration") {
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = rand_flat(rng, 1, true);
    if (coin(rng)) f = f.truncate(xp(-6));
    CHECK(agree(derive(integrate_flat(f)), f));
  }
}

TEST_CASE("property: composition is a ring homomorphism") {
  Rng rng(kSeed + 1);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = rand_mixed(rng);
    const auto g = rand_mixed(rng);
    CHECK(compose_shift(f + g) == compose_shift(f) + compose_shift(g));
    CHECK(compose_shift(f * g) == compose_shift(f) * compose_shift(g));
    CHECK(compose_shift(compose_shift(f), -1) == f);
  }
}

TEST_CASE("property: flat composition equals the exponential of the derivative") {
  Rng rng(kSeed + 2);
  const auto cap = xp(-6);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = rand_flat(rng, 1, false);
    // Terms of D^m f / m! sit at x^(2 - m) or below; m <= 10 covers everything above x^-6.
    Transseries sum = Transseries::zero(1);
    Transseries dm = f;
    Rational fact = 1;
    for (long m = 0; m <= 10; ++m) {
      if (m > 0) {
        dm = derive(dm);
        fact *= m;
      }
      sum += dm.scale(ExpFrac(1 / fact));
    }
    CHECK(agree(compose_shift(f, 1, cap), sum.truncate(cap)));
  }
}

TEST_CASE("property: solutions of difference equations reproduce the right-hand side") {
  Rng rng(kSeed + 3);
  const std::vector<std::pair<std::string, long>> ops{
      {"e^D - 1", -2}, {"1 + e^D", 2}, {"e^(2D) - 2*e^D + 1", -3}, {"x*e^D - x", -3}, {"2*e^D + x^(-1)", 1}};
  for (int trial = 0; trial < 50; ++trial) {
    const auto& [text, top] = ops[static_cast<std::size_t>(trial) % ops.size()];
    const auto h = parse_difference_operator(text, 1);
    Transseries rhs = Transseries::zero(1);
    for (long k = top; k >= top - 3; --k)
      if (coin(rng)) rhs += Transseries::x_power(1, Rational(k), rand_rational(rng, 3, 2, true));
    if (rhs.is_zero()) rhs = Transseries::x_power(1, Rational(top));
    INFO(text, " with rhs ", rhs.str());
    const auto f = solve_linear_difference(h, rhs, 10);
    CHECK(f.is_flat());
    const auto back = apply_difference(h, f);
    CHECK(agree(back, rhs));
    REQUIRE(back.prec());
    CHECK(back.prec()->xpow <= Rational(top - 4));
  }
}

TEST_CASE("property: composition preserves the flat part and shifts e-parts") {
  Rng rng(kSeed + 4);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = rand_mixed(rng);
    const auto g = compose_shift(f);
    CHECK(f.is_flat() == g.is_flat());
    // q(x + 1) - q(1) on q = q1 x + q2 x^2.
    const auto q = coarse_w(f).epart;
    const std::vector<Rational> shifted{q[0] + 2 * q[1], q[1]};
    CHECK(coarse_w(g).epart == shifted);
    CHECK(coarse_w(g).residue.is_flat());
  }
}

TEST_CASE("coarsened series admit Newton steps through operator inversion") {
  const FlatField k(1, -12, 10);
  const auto ctx = coarse_context(k);
  using S = HahnSeries<FlatField>;
  using P = SigmaPoly<FlatField>;

  struct Instance {
    std::size_t order;
    std::vector<Rational> lin;  // coefficients of sigma^k(x)
    std::string c;              // G = sum lin_k sigma^k(x) - c
  };
  const std::vector<Instance> cases{
      {1, {-1, 1}, "x^(-2)"},
      {1, {1, 1}, "1"},
      {1, {-1, 1}, "e^(-x)"},
      {1, {-1, 1}, "x^(-3/2) + e^(-x)*x^(-1)"},
      {2, {1, -2, 1}, "x^(-3)"},
      {1, {-2, 1}, "x^(1/2)"},
  };
  for (const auto& inst : cases) {
    INFO(inst.c);
    const IndexShape shape{1, inst.order};
    P g = P::constant(ctx, shape, -to_coarse(tr(inst.c), ctx));
    for (std::size_t i = 0; i < inst.lin.size(); ++i)
      if (inst.lin[i] != 0) g = g + P::constant(ctx, shape, S::constant(ctx, k.from_rational(inst.lin[i]))) *
                                    P::variable(ctx, shape, 0, i);
    const auto a = S::zero(ctx);
    const auto cfg = config(g, a);
    REQUIRE(cfg);
    const auto b = refine_step(g, a, *cfg);
    CHECK(*(b - a).valuation() == cfg->gamma);
    // The step solves the residue equation exactly up to the flat cap.
    const auto alpha = newton_residue_coeffs(g, a, *cfg);
    CHECK(k.is_zero(linear_residual(k, std::span<const Transseries>(alpha), b.leading_coef())));
    const auto gb = g.eval(b);
    CHECK((gb.is_zero() || *gb.valuation() > *g.eval(a).valuation()));
  }
}
