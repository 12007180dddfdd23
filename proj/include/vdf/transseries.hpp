#pragma once

#include "vdf/resfield.hpp"
#include "vdf/series.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vdf {

/// x^a e^{q(x)} with q = sum_{k=1..D} epart[k-1] x^k.
struct Transmonomial {
  Rational xpow = 0;
  std::vector<Rational> epart;

  Transmonomial() = default;
  Transmonomial(Rational a, std::vector<Rational> q) : xpow(std::move(a)), epart(std::move(q)) {}
  static Transmonomial x_power(std::size_t depth, const Rational& a) {
    return {a, std::vector<Rational>(depth, Rational(0))};
  }

  std::size_t depth() const noexcept { return epart.size(); }
  bool is_flat() const;
  /// Degree of q as a polynomial; 0 when q = 0.
  std::size_t epart_degree() const;
  /// q(h) for a rational point h.
  Rational epart_at(const Rational& h) const;

  /// Value in Q^{D+1}: (-q_D, ..., -q_1, -a). Larger monomials have smaller values.
  GroupElem value() const;
  static Transmonomial from_value(const GroupElem& gamma);

  Transmonomial operator*(const Transmonomial& o) const;
  std::string str() const;

  friend bool operator==(const Transmonomial&, const Transmonomial&) = default;
};

/// "2*x^2 + x" for the exponent polynomial q.
std::string epart_str(const std::vector<Rational>& q);

ContextPtr<ExpGroupField> trans_context(std::size_t depth);

/// Truncated grid-based transseries over the fraction field of Q[E^Q],
/// represented as a Hahn series over the monomial values.
class Transseries {
 public:
  using Series = HahnSeries<ExpGroupField>;

  struct Term {
    ExpFrac coef;
    Transmonomial mono;
  };

  Transseries() = default;
  explicit Transseries(Series s);

  static Transseries zero(std::size_t depth, std::optional<Transmonomial> prec = std::nullopt);
  static Transseries monomial(std::size_t depth, ExpFrac coef, const Transmonomial& m,
                              std::optional<Transmonomial> prec = std::nullopt);
  static Transseries constant(std::size_t depth, const Rational& q);
  static Transseries x_power(std::size_t depth, const Rational& a, const Rational& coef = 1);

  std::size_t depth() const { return series_.context()->dim() - 1; }
  const Series& series() const noexcept { return series_; }
  std::vector<Term> terms() const;
  std::optional<Transmonomial> prec() const;
  bool is_zero() const noexcept { return series_.is_zero(); }
  bool is_exact() const noexcept { return series_.is_exact(); }
  /// Every term has e-part zero (an element of K_w up to precision).
  bool is_flat() const;
  /// Dominant monomial; throws for series without terms.
  Transmonomial dominant() const;
  const ExpFrac& leading_coef() const { return series_.leading_coef(); }
  /// Coefficient of a monomial (zero if absent).
  ExpFrac coefficient(const Transmonomial& m) const { return series_.coefficient(m.value()); }

  Transseries truncate(const std::optional<Transmonomial>& p) const;
  /// Terms only, precision dropped.
  Transseries exact_part() const;
  Transseries invert(const std::optional<Transmonomial>& cap = std::nullopt) const;
  Transseries scale(const ExpFrac& c) const { return Transseries(series_.scale(c)); }

  Transseries operator-() const { return Transseries(-series_); }
  friend Transseries operator+(const Transseries& a, const Transseries& b) { return Transseries(a.series_ + b.series_); }
  friend Transseries operator-(const Transseries& a, const Transseries& b) { return Transseries(a.series_ - b.series_); }
  friend Transseries operator*(const Transseries& a, const Transseries& b) { return Transseries(a.series_ * b.series_); }
  Transseries& operator+=(const Transseries& o) { return *this = *this + o; }
  Transseries& operator-=(const Transseries& o) { return *this = *this - o; }
  Transseries& operator*=(const Transseries& o) { return *this = *this * o; }
  friend bool operator==(const Transseries& a, const Transseries& b) { return a.series_ == b.series_; }

  std::string str() const;

 private:
  Series series_;
};

/// Termwise derivative.
Transseries derive(const Transseries& f);

/// Antiderivative of a flat transseries without constant; x^{-1} requires a
/// logarithm and throws LogarithmNeeded.
Transseries integrate_flat(const Transseries& f);

/// f(x + k). The binomial expansion of (1 + k/x)^a stops at the precision of
/// f, or at the optional cap when f is exact.
Transseries compose_shift(const Transseries& f, long k = 1, const std::optional<Transmonomial>& cap = std::nullopt);

struct CoarseW {
  /// Exponent polynomial q of the dominant e-part; the w-value is v(e^q).
  std::vector<Rational> epart;
  /// Terms sharing that e-part with e^q divided out; flat.
  Transseries residue;
};

/// Value and residue for the coarsening by the flat monomials.
CoarseW coarse_w(const Transseries& f);

/// sum_i h_i f(x + i).
Transseries apply_difference(std::span<const Transseries> h, const Transseries& f,
                             const std::optional<Transmonomial>& cap = std::nullopt);

inline constexpr std::size_t kDefaultOperatorOrder = 8;

/// Flat f with sum_i h_i f(x + i) = rhs. The operator is expanded as
/// sum_{m <= order} l_m D^m with l_m = sum_i h_i i^m / m!, factored as
/// A o D^k and inverted by fixed-point iteration followed by k integrations.
/// The result's precision accounts for the dropped terms of order > order.
Transseries solve_linear_difference(std::span<const Transseries> h, const Transseries& rhs,
                                    std::size_t order = kDefaultOperatorOrder);

/// Flat transseries K_w as a residue difference field: sigma-bar is f -> f(x + 1)
/// and first-order-and-higher linear equations are solved by operator inversion.
/// Elements are compared modulo their precision; cap bounds inverses and shifts.
class FlatField {
 public:
  using Element = Transseries;

  FlatField() = default;
  FlatField(std::size_t depth, Rational cap_xpow, std::size_t operator_order = kDefaultOperatorOrder)
      : depth_(depth), cap_(std::move(cap_xpow)), order_(operator_order) {}

  std::size_t depth() const noexcept { return depth_; }
  Transmonomial cap() const { return Transmonomial::x_power(depth_, cap_); }

  Element zero() const { return Transseries::zero(depth_); }
  Element one() const { return Transseries::constant(depth_, 1); }
  Element from_rational(const Rational& q) const { return Transseries::constant(depth_, q); }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  bool equal(const Element& a, const Element& b) const { return (a - b).is_zero(); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const { return a.invert(cap()); }
  Element sigma(const Element& a, long k) const { return k == 0 ? a : compose_shift(a, k, cap()); }
  std::string str(const Element& a) const { return a.str(); }
  std::string name() const { return "flat"; }

  bool has_axiom1() const { return true; }
  std::size_t axiom2_max_order() const { return order_; }
  bool has_root_finding() const { return false; }

  /// Searches 1, x, x^2, ...
  Element find_nonvanishing(std::span<const ResPoly<Element>> polys) const;
  std::optional<Element> solve_linear(std::span<const Element> alpha) const;
  std::optional<Element> find_root(std::span<const Element> coeffs) const;

  friend bool operator==(const FlatField&, const FlatField&) = default;

 private:
  std::size_t depth_ = 1;
  Rational cap_ = -16;
  std::size_t order_ = kDefaultOperatorOrder;
};

static_assert(ResidueField<FlatField>);

/// The coarsened field: Hahn series over K_w indexed by e-part values in Q^D,
/// with sigma acting on e-parts by q(x) -> q(x + 1) - q(1) and the twist
/// E^{q(1)} absorbing the constant.
ContextPtr<FlatField> coarse_context(const FlatField& field);

/// Regroups a transseries by e-part. Terms whose e-part equals that of the
/// precision monomial are dropped, since their coefficient is only partly known.
HahnSeries<FlatField> to_coarse(const Transseries& f, const ContextPtr<FlatField>& ctx);

}  // namespace vdf
