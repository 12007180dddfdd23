#pragma once

#include "vdf/expr.hpp"
#include "vdf/resfield.hpp"
#include "vdf/series.hpp"
#include "vdf/sigmapoly.hpp"
#include "vdf/transseries.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace vdf {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Rationals and group elements

/// Rational constant expression: numbers with + - * / and integer powers.
Rational eval_rational(const Expr& e);
Rational parse_rational_expr(std::string_view text);

/// A rational (dimension 1) or a tuple "(a, b, ...)" of the given dimension.
GroupElem eval_gamma(const Expr& e, std::size_t dim);
GroupElem parse_gamma(std::string_view text, std::size_t dim);

/// "[[1,0],[2,1]]", "((1,0),(2,1))" or a positive scalar q for gamma -> q gamma.
GroupAut parse_group_aut(std::string_view text, std::size_t dim);

Json rational_json(const Rational& q);
Json gamma_json(const GroupElem& g);
Json precision_json(const Precision& p);
Rational rational_from_json(const Json& j);
GroupElem gamma_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Residue elements

/// Field-specific atoms: the variable s of Q(s) and E, E^(r) of Q[E^Q].
std::optional<Rational> residue_atom(const RationalField&, const Expr&);
std::optional<RatFunc> residue_atom(const RatShiftField&, const Expr&);
std::optional<ExpFrac> residue_atom(const ExpGroupField&, const Expr&);
bool is_residue_symbol(const RationalField&, std::string_view);
bool is_residue_symbol(const RatShiftField&, std::string_view name);
bool is_residue_symbol(const ExpGroupField&, std::string_view name);

template <class F>
typename F::Element eval_residue(const F& field, const Expr& e) {
  if (auto a = residue_atom(field, e)) return *a;
  switch (e.kind) {
    case Expr::Kind::Number: return field.from_rational(e.number);
    case Expr::Kind::Neg: return field.neg(eval_residue(field, e.lhs()));
    case Expr::Kind::Add: return field.add(eval_residue(field, e.lhs()), eval_residue(field, e.rhs()));
    case Expr::Kind::Sub: return field.sub(eval_residue(field, e.lhs()), eval_residue(field, e.rhs()));
    case Expr::Kind::Mul: return field.mul(eval_residue(field, e.lhs()), eval_residue(field, e.rhs()));
    case Expr::Kind::Div: {
      auto d = eval_residue(field, e.rhs());
      if (field.is_zero(d)) e.rhs().fail("division by zero");
      return field.mul(eval_residue(field, e.lhs()), field.inv(d));
    }
    case Expr::Kind::Pow: {
      const Rational n = eval_rational(e.rhs());
      if (!is_integer(n) || !n.get_num().fits_slong_p()) e.rhs().fail("residue powers must be integers");
      const long k = n.get_num().get_si();
      auto base = eval_residue(field, e.lhs());
      auto p = power(field, base, static_cast<unsigned>(k < 0 ? -k : k));
      return k < 0 ? field.inv(p) : p;
    }
    default: e.fail("not a residue field element of " + std::string(field.name()));
  }
}

template <class F>
typename F::Element parse_residue(const F& field, std::string_view text) {
  return eval_residue(field, parse_expr(text));
}

// ---------------------------------------------------------------------------
// Hahn series: "3*t^(1/2) + (s/(s+1))*t^(2) + O(t^(3))"

namespace detail {

inline bool is_t(const Expr& e) { return e.kind == Expr::Kind::Symbol && e.name == "t"; }

inline GroupElem t_exponent(const Expr& e, std::size_t dim) {
  if (is_t(e)) {
    if (dim != 1) e.fail("bare t needs an explicit exponent tuple in dimension " + std::to_string(dim));
    return GroupElem{Rational(1)};
  }
  if (e.kind == Expr::Kind::Pow && is_t(e.lhs())) return eval_gamma(e.rhs(), dim);
  e.fail("expected t or t^(gamma)");
}

}  // namespace detail

template <ResidueField F>
HahnSeries<F> eval_series(const Expr& e, const ContextPtr<F>& ctx, const Precision& cap) {
  using S = HahnSeries<F>;
  const std::size_t dim = ctx->dim();
  switch (e.kind) {
    case Expr::Kind::Symbol:
      if (detail::is_t(e)) return S::t_power(ctx, detail::t_exponent(e, dim));
      break;
    case Expr::Kind::Call:
      if (e.name == "O") {
        if (e.args.size() != 1) e.fail("O(...) takes one argument");
        return S::zero(ctx, detail::t_exponent(e.args.front(), dim));
      }
      break;
    case Expr::Kind::Neg: return -eval_series(e.lhs(), ctx, cap);
    case Expr::Kind::Add: return eval_series(e.lhs(), ctx, cap) + eval_series(e.rhs(), ctx, cap);
    case Expr::Kind::Sub: return eval_series(e.lhs(), ctx, cap) - eval_series(e.rhs(), ctx, cap);
    case Expr::Kind::Mul: return eval_series(e.lhs(), ctx, cap) * eval_series(e.rhs(), ctx, cap);
    case Expr::Kind::Div: return divide(eval_series(e.lhs(), ctx, cap), eval_series(e.rhs(), ctx, cap), cap);
    case Expr::Kind::Pow: {
      if (detail::is_t(e.lhs())) return S::t_power(ctx, detail::t_exponent(e, dim));
      if (residue_atom(ctx->field, e)) break;
      const Rational n = eval_rational(e.rhs());
      if (!is_integer(n) || !n.get_num().fits_slong_p()) e.rhs().fail("series powers must be integers");
      const long k = n.get_num().get_si();
      const S base = eval_series(e.lhs(), ctx, cap);
      S acc = S::one(ctx);
      for (long i = 0; i < (k < 0 ? -k : k); ++i) acc = acc * base;
      return k < 0 ? acc.invert(cap) : acc;
    }
    default: break;
  }
  return S::constant(ctx, eval_residue(ctx->field, e));
}

template <ResidueField F>
HahnSeries<F> parse_series(std::string_view text, const ContextPtr<F>& ctx, const Precision& cap = std::nullopt) {
  return eval_series(parse_expr(text), ctx, cap).truncate(cap);
}

template <ResidueField F>
Json series_json(const HahnSeries<F>& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms())
    terms.push_back(Json{{"gamma", gamma_json(t.gamma)}, {"coef", s.field().str(t.coef)}});
  return Json{{"terms", terms}, {"prec", precision_json(s.prec())}, {"text", s.str()}};
}

template <ResidueField F>
HahnSeries<F> series_from_json(const Json& j, const ContextPtr<F>& ctx) {
  std::vector<typename HahnSeries<F>::Term> terms;
  for (const auto& t : j.at("terms"))
    terms.push_back({gamma_from_json(t.at("gamma")), parse_residue(ctx->field, t.at("coef").get<std::string>())});
  Precision p;
  if (j.contains("prec") && !j.at("prec").is_null()) p = gamma_from_json(j.at("prec"));
  return HahnSeries<F>(ctx, std::move(terms), std::move(p));
}

template <ResidueField F>
Json rv_json(const F& field, const RVElem<F>& r) {
  if (r.is_infinite()) return Json{{"infinite", true}};
  return Json{{"infinite", false}, {"gamma", gamma_json(*r.gamma)}, {"coef", field.str(r.coef)}};
}

// ---------------------------------------------------------------------------
// sigma-polynomials: "s0(x)*s1(x) - t^(1)", "x^2 - (1+t)", "x + y - 1"

namespace detail {

inline bool shift_call(const Expr& e, std::size_t& k) {
  if (e.kind != Expr::Kind::Call || e.name.size() < 2 || e.name[0] != 's') return false;
  for (std::size_t i = 1; i < e.name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(e.name[i]))) return false;
  k = std::stoul(e.name.substr(1));
  return true;
}

template <class F>
bool is_variable_symbol(const F& field, const Expr& e) {
  return e.kind == Expr::Kind::Symbol && e.name != "t" && !is_residue_symbol(field, e.name);
}

template <class F>
void collect_variables(const F& field, const Expr& e, std::vector<std::string>& vars, std::size_t& order) {
  std::size_t k = 0;
  if (shift_call(e, k)) {
    if (e.args.size() != 1 || !is_variable_symbol(field, e.args.front()))
      e.fail(e.name + "(...) takes a single variable");
    order = std::max(order, k);
    collect_variables(field, e.args.front(), vars, order);
    return;
  }
  if (is_variable_symbol(field, e)) {
    if (std::find(vars.begin(), vars.end(), e.name) == vars.end()) vars.push_back(e.name);
    return;
  }
  if (e.kind == Expr::Kind::Pow) {
    collect_variables(field, e.lhs(), vars, order);
    return;
  }
  for (const auto& a : e.args) collect_variables(field, a, vars, order);
}

template <class F>
bool has_variables(const F& field, const Expr& e) {
  std::vector<std::string> v;
  std::size_t o = 0;
  collect_variables(field, e, v, o);
  return !v.empty();
}

}  // namespace detail

template <ResidueField F>
struct ParsedPoly {
  SigmaPoly<F> poly;
  std::vector<std::string> vars;
};

template <ResidueField F>
SigmaPoly<F> eval_sigmapoly(const Expr& e, const ContextPtr<F>& ctx, const IndexShape& shape,
                            const std::vector<std::string>& vars, const Precision& cap) {
  using P = SigmaPoly<F>;
  if (!detail::has_variables(ctx->field, e)) return P::constant(ctx, shape, eval_series(e, ctx, cap));
  std::size_t k = 0;
  auto var_index = [&](const Expr& s) {
    return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), s.name) - vars.begin());
  };
  if (detail::shift_call(e, k)) return P::variable(ctx, shape, var_index(e.args.front()), k);
  switch (e.kind) {
    case Expr::Kind::Symbol: return P::variable(ctx, shape, var_index(e), 0);
    case Expr::Kind::Neg: return -eval_sigmapoly(e.lhs(), ctx, shape, vars, cap);
    case Expr::Kind::Add:
      return eval_sigmapoly(e.lhs(), ctx, shape, vars, cap) + eval_sigmapoly(e.rhs(), ctx, shape, vars, cap);
    case Expr::Kind::Sub:
      return eval_sigmapoly(e.lhs(), ctx, shape, vars, cap) - eval_sigmapoly(e.rhs(), ctx, shape, vars, cap);
    case Expr::Kind::Mul:
      return eval_sigmapoly(e.lhs(), ctx, shape, vars, cap) * eval_sigmapoly(e.rhs(), ctx, shape, vars, cap);
    case Expr::Kind::Div: {
      if (detail::has_variables(ctx->field, e.rhs())) e.rhs().fail("division by a non-constant polynomial");
      const auto d = eval_series(e.rhs(), ctx, cap).invert(cap);
      return d * eval_sigmapoly(e.lhs(), ctx, shape, vars, cap);
    }
    case Expr::Kind::Pow: {
      const Rational n = eval_rational(e.rhs());
      if (!is_integer(n) || n < 0 || !n.get_num().fits_ulong_p())
        e.rhs().fail("polynomial powers must be natural numbers");
      return eval_sigmapoly(e.lhs(), ctx, shape, vars, cap).pow(static_cast<unsigned>(n.get_num().get_ui()));
    }
    default: e.fail("not a sigma-polynomial");
  }
}

/// Variables are ordered by first appearance; s<k>(v) is sigma^k(v) and a
/// bare variable is s0(v).
template <ResidueField F>
ParsedPoly<F> parse_sigmapoly(std::string_view text, const ContextPtr<F>& ctx, const Precision& cap = std::nullopt) {
  const Expr e = parse_expr(text);
  ParsedPoly<F> out;
  std::size_t order = 0;
  detail::collect_variables(ctx->field, e, out.vars, order);
  if (out.vars.empty()) out.vars.push_back("x");
  const IndexShape shape{out.vars.size(), order};
  out.poly = eval_sigmapoly(e, ctx, shape, out.vars, cap);
  return out;
}

// ---------------------------------------------------------------------------
// Transseries: "x^(-2)", "e^(x^2)", "3/2*E^(1/2)*x", "O(x^(-8))"

Transseries eval_transseries(const Expr& e, std::size_t depth, const std::optional<Transmonomial>& cap);
Transseries parse_transseries(std::string_view text, std::size_t depth,
                              const std::optional<Transmonomial>& cap = std::nullopt);

/// Coefficients h_0..h_n of sum_i h_i e^{i D}, e.g. "e^D - 1" or "x*e^(2D) + 1".
std::vector<Transseries> parse_difference_operator(std::string_view text, std::size_t depth,
                                                   const std::optional<Transmonomial>& cap = std::nullopt);

Json transseries_json(const Transseries& f);

}  // namespace vdf
