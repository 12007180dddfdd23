#pragma once

#include "vdf/error.hpp"
#include "vdf/expfrac.hpp"
#include "vdf/multiindex.hpp"
#include "vdf/ratfunc.hpp"
#include "vdf/rational.hpp"

#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vdf {

/// sigma-bar-polynomial over a residue field: sum_i c_i sigma(x)^i.
template <class E>
struct ResPoly {
  IndexShape shape;
  std::map<MultiIndex, E> terms;

  bool is_zero() const noexcept { return terms.empty(); }
};

/// A residue difference field: exact arithmetic, the automorphism sigma-bar and
/// the three oracles the algorithms consume. Oracles are partial; capability
/// flags describe what each instance can answer.
template <class F>
concept ResidueField = requires(const F& f, const typename F::Element& a, const typename F::Element& b,
                                const Rational& q, long k, std::span<const typename F::Element> coeffs,
                                std::span<const ResPoly<typename F::Element>> polys) {
  typename F::Element;
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.from_rational(q) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.equal(a, b) } -> std::same_as<bool>;
  { f.add(a, b) } -> std::same_as<typename F::Element>;
  { f.sub(a, b) } -> std::same_as<typename F::Element>;
  { f.mul(a, b) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.sigma(a, k) } -> std::same_as<typename F::Element>;
  { f.str(a) } -> std::same_as<std::string>;
  { f.name() } -> std::convertible_to<std::string>;
  { f.has_axiom1() } -> std::same_as<bool>;
  { f.axiom2_max_order() } -> std::same_as<std::size_t>;
  { f.has_root_finding() } -> std::same_as<bool>;
  { f.find_nonvanishing(polys) } -> std::same_as<typename F::Element>;
  { f.solve_linear(coeffs) } -> std::same_as<std::optional<typename F::Element>>;
  { f.find_root(coeffs) } -> std::same_as<std::optional<typename F::Element>>;
};

// ---------------------------------------------------------------------------
// Generic helpers shared by the instances.

template <class F>
typename F::Element power(const F& field, const typename F::Element& a, unsigned n) {
  auto result = field.one();
  for (unsigned i = 0; i < n; ++i) result = field.mul(result, a);
  return result;
}

/// Evaluates a sigma-bar-polynomial at a point (one entry per variable).
template <class F>
typename F::Element eval(const F& field, const ResPoly<typename F::Element>& p,
                         std::span<const typename F::Element> point) {
  if (point.size() != p.shape.nvars)
    throw Error(ErrorKind::DimensionMismatch, "residue polynomial evaluated at a point of wrong arity");
  std::vector<typename F::Element> shifted;
  shifted.reserve(p.shape.width());
  for (std::size_t pos = 0; pos < p.shape.width(); ++pos)
    shifted.push_back(field.sigma(point[p.shape.var_of(pos)], static_cast<long>(p.shape.shift_of(pos))));
  auto acc = field.zero();
  for (const auto& [idx, c] : p.terms) {
    auto term = c;
    for (std::size_t pos = 0; pos < idx.size(); ++pos)
      if (idx[pos]) term = field.mul(term, power(field, shifted[pos], idx[pos]));
    acc = field.add(acc, term);
  }
  return acc;
}

template <class F>
typename F::Element eval(const F& field, const ResPoly<typename F::Element>& p, const typename F::Element& x) {
  return eval(field, p, std::span<const typename F::Element>(&x, 1));
}

/// Dense ordinary polynomial sum_k coeffs[k] x^k.
template <class F>
typename F::Element eval_dense(const F& field, std::span<const typename F::Element> coeffs,
                               const typename F::Element& x) {
  auto acc = field.zero();
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = field.add(field.mul(acc, x), coeffs[k]);
  return acc;
}

/// Residue of 1 + sum_i alpha_i sigma^i(x) at x.
template <class F>
typename F::Element linear_residual(const F& field, std::span<const typename F::Element> alpha,
                                    const typename F::Element& x) {
  auto acc = field.one();
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (!field.is_zero(alpha[i])) acc = field.add(acc, field.mul(alpha[i], field.sigma(x, static_cast<long>(i))));
  return acc;
}

/// Largest i with alpha_i != 0; throws DomainError when all vanish.
template <class F>
std::size_t linear_order(const F& field, std::span<const typename F::Element> alpha) {
  for (std::size_t i = alpha.size(); i-- > 0;)
    if (!field.is_zero(alpha[i])) return i;
  throw Error(ErrorKind::DomainError, "linear difference equation with all coefficients zero");
}

/// For fields with trivial sigma-bar: collapses sum_i c_i sigma(x)^i to the
/// ordinary polynomial sum_i c_i x^{|i|} and reports whether it vanishes.
template <class F>
bool collapses_to_zero(const F& field, const ResPoly<typename F::Element>& p) {
  std::map<unsigned, typename F::Element> collapsed;
  for (const auto& [idx, c] : p.terms) {
    auto [it, inserted] = collapsed.try_emplace(total_degree(idx), c);
    if (!inserted) it->second = field.add(it->second, c);
  }
  for (const auto& kv : collapsed)
    if (!field.is_zero(kv.second)) return false;
  return true;
}

inline constexpr std::size_t kNonvanishingSearchCap = 10000;

/// Scans candidate(0), candidate(1), ... for a point where every polynomial is
/// nonzero. Used by all instances' find_nonvanishing.
template <class F, class Candidate>
typename F::Element search_nonvanishing(const F& field, std::span<const ResPoly<typename F::Element>> polys,
                                        Candidate candidate) {
  for (const auto& p : polys) {
    if (p.shape.nvars != 1)
      throw Error(ErrorKind::DimensionMismatch, "find_nonvanishing expects one-variable polynomials");
    if (p.is_zero()) throw Error(ErrorKind::Unsupported, "axiom-1-unsupported: zero residue polynomial");
  }
  for (std::size_t n = 0; n < kNonvanishingSearchCap; ++n) {
    auto alpha = candidate(n);
    bool ok = true;
    for (const auto& p : polys)
      if (field.is_zero(eval(field, p, alpha))) {
        ok = false;
        break;
      }
    if (ok) return alpha;
  }
  throw Error(ErrorKind::Unsupported, "axiom-1-unsupported: nonvanishing search exhausted");
}

// ---------------------------------------------------------------------------
// Shipped instances.

/// Q with trivial sigma-bar. Root finding is restricted to rational roots.
class RationalField {
 public:
  using Element = Rational;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_rational(const Rational& q) const { return q; }
  bool is_zero(const Element& a) const { return a == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const;
  Element sigma(const Element& a, long) const { return a; }
  std::string str(const Element& a) const { return to_string(a); }
  std::string name() const { return "q"; }

  bool has_axiom1() const { return false; }
  std::size_t axiom2_max_order() const { return 0; }
  bool has_root_finding() const { return true; }

  Element find_nonvanishing(std::span<const ResPoly<Element>> polys) const;
  std::optional<Element> solve_linear(std::span<const Element> alpha) const;
  /// A rational root of sum_k coeffs[k] x^k, or nullopt.
  std::optional<Element> find_root(std::span<const Element> coeffs) const;

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

/// Q(s) with sigma-bar(f(s)) = f(s + 1). First-order linear equations are
/// solved by a rational-solution search; roots only for linear polynomials.
class RatShiftField {
 public:
  using Element = RatFunc;

  Element zero() const { return {}; }
  Element one() const { return RatFunc(1); }
  Element from_rational(const Rational& q) const { return RatFunc(q); }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const { return a.inverse(); }
  Element sigma(const Element& a, long k) const { return k == 0 ? a : a.shift(k); }
  std::string str(const Element& a) const { return a.str(); }
  std::string name() const { return "ratshift"; }

  bool has_axiom1() const { return true; }
  std::size_t axiom2_max_order() const { return 1; }
  bool has_root_finding() const { return false; }

  /// Searches 1, s, s+1, s+2, ...
  Element find_nonvanishing(std::span<const ResPoly<Element>> polys) const;
  std::optional<Element> solve_linear(std::span<const Element> alpha) const;
  std::optional<Element> find_root(std::span<const Element> coeffs) const;

  friend bool operator==(const RatShiftField&, const RatShiftField&) = default;
};

/// Fraction field of Q[E^Q] with trivial sigma-bar; coefficient field of the
/// transseries module.
class ExpGroupField {
 public:
  using Element = ExpFrac;

  Element zero() const { return {}; }
  Element one() const { return ExpFrac(1); }
  Element from_rational(const Rational& q) const { return ExpFrac(q); }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const { return a.inverse(); }
  Element sigma(const Element& a, long) const { return a; }
  std::string str(const Element& a) const { return a.str(); }
  std::string name() const { return "expgroup"; }

  bool has_axiom1() const { return false; }
  std::size_t axiom2_max_order() const { return 0; }
  bool has_root_finding() const { return false; }

  Element find_nonvanishing(std::span<const ResPoly<Element>> polys) const;
  std::optional<Element> solve_linear(std::span<const Element> alpha) const;
  std::optional<Element> find_root(std::span<const Element> coeffs) const;

  friend bool operator==(const ExpGroupField&, const ExpGroupField&) = default;
};

/// Solves a1(s) y(s+1) + a0(s) y(s) = c(s) for y in Q(s); nullopt when no
/// rational solution exists.
std::optional<RatFunc> solve_first_order_rational(const Poly& a1, const Poly& a0, const Poly& c);

}  // namespace vdf
