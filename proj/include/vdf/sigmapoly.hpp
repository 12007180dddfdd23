#pragma once

#include "vdf/error.hpp"
#include "vdf/multiindex.hpp"
#include "vdf/resfield.hpp"
#include "vdf/series.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace vdf {

/// Ordering used to compare sigma-polynomials by complexity:
/// (order, total degree, number of monomials), lexicographically.
struct Complexity {
  std::size_t order = 0;
  unsigned degree = 0;
  std::size_t monomials = 0;

  friend auto operator<=>(const Complexity&, const Complexity&) = default;
};

/// sum_i a_i sigma(x)^i over a Hahn difference field, possibly in several
/// variables. Exact-zero coefficients are never stored.
template <ResidueField F>
class SigmaPoly {
 public:
  using Series = HahnSeries<F>;
  using Coeffs = std::map<MultiIndex, Series>;

  SigmaPoly() = default;

  SigmaPoly(ContextPtr<F> ctx, IndexShape shape, Coeffs coeffs = {})
      : ctx_(std::move(ctx)), shape_(shape) {
    if (!ctx_) throw Error(ErrorKind::IncompatibleInstances, "sigma-polynomial without a context");
    for (auto& [idx, c] : coeffs) {
      if (idx.size() != shape_.width())
        throw Error(ErrorKind::DimensionMismatch, "multi-index " + index_str(idx) + " does not fit the shape");
      add_term(idx, std::move(c));
    }
  }

  /// sigma^k(x_var).
  static SigmaPoly variable(ContextPtr<F> ctx, IndexShape shape, std::size_t var = 0, std::size_t k = 0) {
    if (var >= shape.nvars || k > shape.order) throw Error(ErrorKind::DimensionMismatch, "variable outside the shape");
    auto one = Series::one(ctx);
    Coeffs c;
    c.emplace(unit_index(shape.width(), shape.position(var, k)), std::move(one));
    return SigmaPoly(std::move(ctx), shape, std::move(c));
  }

  static SigmaPoly constant(ContextPtr<F> ctx, IndexShape shape, Series c) {
    Coeffs coeffs;
    coeffs.emplace(MultiIndex(shape.width(), 0), std::move(c));
    return SigmaPoly(std::move(ctx), shape, std::move(coeffs));
  }

  const ContextPtr<F>& context() const noexcept { return ctx_; }
  const IndexShape& shape() const noexcept { return shape_; }
  const Coeffs& coeffs() const noexcept { return coeffs_; }
  std::size_t nvars() const noexcept { return shape_.nvars; }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return is_zero_index(kv.first); });
  }
  Series constant_term() const {
    auto it = coeffs_.find(MultiIndex(shape_.width(), 0));
    return it == coeffs_.end() ? Series::zero(ctx_) : it->second;
  }
  Series coefficient(const MultiIndex& i) const {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? Series::zero(ctx_) : it->second;
  }

  /// Largest k such that some used monomial involves sigma^k.
  std::size_t order() const {
    std::size_t n = 0;
    for (const auto& kv : coeffs_)
      for (std::size_t p = 0; p < kv.first.size(); ++p)
        if (kv.first[p]) n = std::max(n, shape_.shift_of(p));
    return n;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& kv : coeffs_) d = std::max(d, vdf::total_degree(kv.first));
    return d;
  }

  Complexity complexity() const { return {order(), total_degree(), coeffs_.size()}; }

  /// Same polynomial in a shape with at least as many variables and as high an order.
  SigmaPoly reshape(const IndexShape& to) const {
    if (to.nvars < shape_.nvars || to.order < order())
      throw Error(ErrorKind::DimensionMismatch, "reshape would drop monomials");
    Coeffs out;
    for (const auto& [idx, c] : coeffs_) out.emplace(reshape_index(idx, shape_, to), c);
    return SigmaPoly(ctx_, to, std::move(out));
  }

  SigmaPoly operator-() const {
    SigmaPoly out = *this;
    for (auto& kv : out.coeffs_) kv.second = -kv.second;
    return out;
  }

  friend SigmaPoly operator+(const SigmaPoly& a, const SigmaPoly& b) {
    auto [x, y] = unify(a, b);
    for (const auto& [idx, c] : y.coeffs_) x.add_term(idx, c);
    return x;
  }
  friend SigmaPoly operator-(const SigmaPoly& a, const SigmaPoly& b) { return a + (-b); }

  friend SigmaPoly operator*(const SigmaPoly& a, const SigmaPoly& b) {
    auto [x, y] = unify(a, b);
    SigmaPoly out(x.ctx_, x.shape_);
    for (const auto& [i, ci] : x.coeffs_)
      for (const auto& [j, cj] : y.coeffs_) out.add_term(index_add(i, j), ci * cj);
    return out;
  }

  friend SigmaPoly operator*(const Series& c, const SigmaPoly& p) {
    SigmaPoly out(p.ctx_, p.shape_);
    for (const auto& [idx, coef] : p.coeffs_) out.add_term(idx, c * coef);
    return out;
  }

  SigmaPoly pow(unsigned n) const {
    SigmaPoly out = constant(ctx_, shape_, Series::one(ctx_));
    for (unsigned k = 0; k < n; ++k) out = out * *this;
    return out;
  }

  /// F(a) with one series per variable.
  Series eval(std::span<const Series> point) const {
    const auto powers = shifted_powers(point, max_exponents());
    Series acc = Series::zero(ctx_);
    for (const auto& [idx, c] : coeffs_) acc += c * monomial_value(powers, idx);
    return acc;
  }
  Series eval(const Series& a) const { return eval(std::span<const Series>(&a, 1)); }

  /// Divided derivatives F_(i)(a) for every i with F_(i) != 0 as a polynomial,
  /// so that F(a + x) = sum_i F_(i)(a) sigma(x)^i. The entry at 0 is F(a).
  std::map<MultiIndex, Series> taylor(std::span<const Series> point) const {
    const auto powers = shifted_powers(point, max_exponents());
    const auto& f = ctx_->field;
    std::map<MultiIndex, Series> out;
    for (const auto& [m, c] : coeffs_) {
      MultiIndex i(m.size(), 0);
      // Enumerate all i <= m.
      while (true) {
        Rational binom = 1;
        MultiIndex rest = index_sub(m, i);
        for (std::size_t p = 0; p < m.size(); ++p) binom *= vdf::binomial(Rational(m[p]), i[p]);
        Series term = (c * monomial_value(powers, rest)).scale(f.from_rational(binom));
        auto it = out.find(i);
        if (it == out.end()) out.emplace(i, std::move(term));
        else it->second += term;
        std::size_t p = 0;
        while (p < m.size() && i[p] == m[p]) i[p++] = 0;
        if (p == m.size()) break;
        ++i[p];
      }
    }
    return out;
  }
  std::map<MultiIndex, Series> taylor(const Series& a) const { return taylor(std::span<const Series>(&a, 1)); }

  /// The divided derivative F_(i) as a sigma-polynomial.
  SigmaPoly derivative(const MultiIndex& i) const {
    SigmaPoly out(ctx_, shape_);
    const auto& f = ctx_->field;
    for (const auto& [m, c] : coeffs_) {
      if (!index_leq(i, m)) continue;
      Rational binom = 1;
      for (std::size_t p = 0; p < m.size(); ++p) binom *= vdf::binomial(Rational(m[p]), i[p]);
      out.add_term(index_sub(m, i), c.scale(f.from_rational(binom)));
    }
    return out;
  }

  /// G(x) = F(a + x) - F(a) = sum_{|i| >= 1} F_(i)(a) sigma(x)^i.
  SigmaPoly shifted(std::span<const Series> point) const {
    auto t = taylor(point);
    t.erase(MultiIndex(shape_.width(), 0));
    return SigmaPoly(ctx_, shape_, std::move(t));
  }
  SigmaPoly shifted(const Series& a) const { return shifted(std::span<const Series>(&a, 1)); }

  /// F(b x): the coefficient at i becomes a_i sigma(b)^i.
  SigmaPoly scale_compose(std::span<const Series> b) const {
    for (const auto& bi : b)
      if (bi.is_zero()) throw Error(ErrorKind::ZeroDivision, "scale_compose by zero");
    const auto powers = shifted_powers(b, max_exponents());
    SigmaPoly out(ctx_, shape_);
    for (const auto& [idx, c] : coeffs_) out.add_term(idx, c * monomial_value(powers, idx));
    return out;
  }
  SigmaPoly scale_compose(const Series& b) const { return scale_compose(std::span<const Series>(&b, 1)); }

  /// Coefficientwise residue map; requires every coefficient to have v >= 0.
  ResPoly<typename F::Element> residue_reduce() const {
    ResPoly<typename F::Element> out{shape_, {}};
    const auto& f = ctx_->field;
    for (const auto& [idx, c] : coeffs_) {
      auto r = c.residue();
      if (!f.is_zero(r)) out.terms.emplace(idx, std::move(r));
    }
    return out;
  }

  friend bool operator==(const SigmaPoly& a, const SigmaPoly& b) {
    return a.shape_ == b.shape_ && a.coeffs_ == b.coeffs_;
  }

  /// Monomials print as products of x, s1(x), s2(x), ... .
  std::string str(const std::vector<std::string>& names = {}) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    // Highest total degree first.
    std::vector<const typename Coeffs::value_type*> order;
    for (const auto& kv : coeffs_) order.push_back(&kv);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
      return vdf::total_degree(a->first) > vdf::total_degree(b->first);
    });
    for (const auto* kv : order) {
      const std::string mono = monomial_str(kv->first, names);
      std::string c = kv->second.str();
      const bool simple = c.find(' ') == std::string::npos;
      bool negative = false;
      if (simple && c.size() > 1 && c.front() == '-') {
        negative = true;
        c = c.substr(1);
      }
      std::string body;
      if (mono.empty()) body = simple ? c : "(" + c + ")";
      else if (c == "1") body = mono;
      else body = (simple ? c : "(" + c + ")") + "*" + mono;
      if (out.empty()) out = negative ? "-" + body : body;
      else out += (negative ? " - " : " + ") + body;
    }
    return out;
  }

  std::string variable_name(std::size_t var, const std::vector<std::string>& names) const {
    if (var < names.size()) return names[var];
    if (shape_.nvars == 1) return "x";
    return "x" + std::to_string(var + 1);
  }

 private:
  void add_term(const MultiIndex& idx, Series c) {
    if (c.is_zero() && c.is_exact()) {
      return;
    }
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) {
      coeffs_.emplace(idx, std::move(c));
      return;
    }
    it->second += c;
    if (it->second.is_zero() && it->second.is_exact()) coeffs_.erase(it);
  }

  static std::pair<SigmaPoly, SigmaPoly> unify(const SigmaPoly& a, const SigmaPoly& b) {
    if (a.shape_ == b.shape_) return {a, b};
    IndexShape s{std::max(a.shape_.nvars, b.shape_.nvars), std::max(a.shape_.order, b.shape_.order)};
    return {a.reshape(s), b.reshape(s)};
  }

  std::vector<unsigned> max_exponents() const {
    std::vector<unsigned> e(shape_.width(), 0);
    for (const auto& kv : coeffs_)
      for (std::size_t p = 0; p < e.size(); ++p) e[p] = std::max(e[p], kv.first[p]);
    return e;
  }

  // powers[pos][e] = sigma^k(point[var])^e.
  std::vector<std::vector<Series>> shifted_powers(std::span<const Series> point,
                                                  const std::vector<unsigned>& max_exp) const {
    if (point.size() != shape_.nvars)
      throw Error(ErrorKind::DimensionMismatch, "point of arity " + std::to_string(point.size()) +
                                                    " for a polynomial in " + std::to_string(shape_.nvars) +
                                                    " variables");
    std::vector<std::vector<Series>> powers(shape_.width());
    for (std::size_t p = 0; p < shape_.width(); ++p) {
      auto& row = powers[p];
      row.push_back(Series::one(ctx_));
      if (max_exp[p] == 0) continue;
      const Series base = point[shape_.var_of(p)].sigma(static_cast<long>(shape_.shift_of(p)));
      for (unsigned e = 1; e <= max_exp[p]; ++e) row.push_back(row.back() * base);
    }
    return powers;
  }

  Series monomial_value(const std::vector<std::vector<Series>>& powers, const MultiIndex& idx) const {
    Series v = Series::one(ctx_);
    for (std::size_t p = 0; p < idx.size(); ++p)
      if (idx[p]) v = v * powers[p][idx[p]];
    return v;
  }

  std::string monomial_str(const MultiIndex& idx, const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t p = 0; p < idx.size(); ++p) {
      if (!idx[p]) continue;
      if (!out.empty()) out += "*";
      const std::string v = variable_name(shape_.var_of(p), names);
      const std::size_t k = shape_.shift_of(p);
      out += k == 0 ? v : "s" + std::to_string(k) + "(" + v + ")";
      if (idx[p] > 1) out += "^" + std::to_string(idx[p]);
    }
    return out;
  }

  ContextPtr<F> ctx_;
  IndexShape shape_;
  Coeffs coeffs_;
};

}  // namespace vdf
