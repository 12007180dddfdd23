#include "vdf/io.hpp"

#include <algorithm>
#include <map>

namespace vdf {

// ---------------------------------------------------------------------------
// Rationals and group elements

Rational eval_rational(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.number;
    case Expr::Kind::Neg: return -eval_rational(e.lhs());
    case Expr::Kind::Add: return eval_rational(e.lhs()) + eval_rational(e.rhs());
    case Expr::Kind::Sub: return eval_rational(e.lhs()) - eval_rational(e.rhs());
    case Expr::Kind::Mul: return eval_rational(e.lhs()) * eval_rational(e.rhs());
    case Expr::Kind::Div: {
      const Rational d = eval_rational(e.rhs());
      if (d == 0) e.rhs().fail("division by zero");
      return eval_rational(e.lhs()) / d;
    }
    case Expr::Kind::Pow: {
      const Rational n = eval_rational(e.rhs());
      if (!is_integer(n) || !n.get_num().fits_slong_p()) e.rhs().fail("rational powers must be integers");
      const Rational b = eval_rational(e.lhs());
      if (b == 0 && n < 0) e.fail("division by zero");
      return pow(b, n.get_num().get_si());
    }
    default: e.fail("expected a rational number");
  }
}

Rational parse_rational_expr(std::string_view text) { return eval_rational(parse_expr(text)); }

GroupElem eval_gamma(const Expr& e, std::size_t dim) {
  if (e.kind == Expr::Kind::Tuple) {
    if (e.args.size() != dim)
      e.fail("expected " + std::to_string(dim) + " coordinates, got " + std::to_string(e.args.size()));
    std::vector<Rational> c;
    for (const auto& a : e.args) c.push_back(eval_rational(a));
    return GroupElem(std::move(c));
  }
  if (dim != 1) e.fail("expected a tuple of " + std::to_string(dim) + " coordinates");
  return GroupElem{eval_rational(e)};
}

GroupElem parse_gamma(std::string_view text, std::size_t dim) { return eval_gamma(parse_expr(text), dim); }

GroupAut parse_group_aut(std::string_view text, std::size_t dim) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '[', '(');
  std::replace(s.begin(), s.end(), ']', ')');
  const Expr e = parse_expr(s);
  if (e.kind == Expr::Kind::Symbol && e.name == "id") return GroupAut::identity(dim);
  if (e.kind != Expr::Kind::Tuple) {
    const Rational q = eval_rational(e);
    if (q <= 0) e.fail("scaling factor must be positive");
    return GroupAut::scaling(dim, q);
  }
  if (e.args.size() != dim) e.fail("matrix must have " + std::to_string(dim) + " rows");
  std::vector<std::vector<Rational>> m;
  for (const auto& row : e.args) m.push_back(eval_gamma(row, dim).coords());
  try {
    return GroupAut(std::move(m));
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Parse) throw;
    e.fail(err.what());
  }
}

Json rational_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

Json gamma_json(const GroupElem& g) {
  Json out = Json::array();
  for (const auto& c : g.coords()) out.push_back(rational_json(c));
  return out;
}

Json precision_json(const Precision& p) { return p ? gamma_json(*p) : Json(nullptr); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::Parse, "expected an integer or a rational string in JSON");
}

GroupElem gamma_from_json(const Json& j) {
  if (!j.is_array()) return GroupElem{rational_from_json(j)};
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return GroupElem(std::move(c));
}

// ---------------------------------------------------------------------------
// Residue atoms

std::optional<Rational> residue_atom(const RationalField&, const Expr&) { return std::nullopt; }

std::optional<RatFunc> residue_atom(const RatShiftField&, const Expr& e) {
  if (e.kind == Expr::Kind::Symbol && e.name == "s") return RatFunc::s();
  return std::nullopt;
}

std::optional<ExpFrac> residue_atom(const ExpGroupField&, const Expr& e) {
  if (e.kind == Expr::Kind::Symbol && e.name == "E") return ExpFrac::exp(1);
  if (e.kind == Expr::Kind::Pow && e.lhs().kind == Expr::Kind::Symbol && e.lhs().name == "E")
    return ExpFrac::exp(eval_rational(e.rhs()));
  return std::nullopt;
}

bool is_residue_symbol(const RationalField&, std::string_view) { return false; }
bool is_residue_symbol(const RatShiftField&, std::string_view name) { return name == "s"; }
bool is_residue_symbol(const ExpGroupField&, std::string_view name) { return name == "E"; }

// ---------------------------------------------------------------------------
// Transseries

namespace {

bool is_symbol(const Expr& e, std::string_view name) { return e.kind == Expr::Kind::Symbol && e.name == name; }

long integer_power(const Expr& e) {
  const Rational n = eval_rational(e);
  if (!is_integer(n) || !n.get_num().fits_slong_p()) e.fail("powers must be integers");
  return n.get_num().get_si();
}

Transseries coef_constant(std::size_t depth, const ExpFrac& c) {
  return Transseries::monomial(depth, c, Transmonomial::x_power(depth, 0));
}

// e^(p) for a polynomial p in x: the constant part goes into the coefficient.
Transseries exponential(const Expr& arg, std::size_t depth) {
  const Transseries p = eval_transseries(arg, depth, std::nullopt);
  Rational constant = 0;
  std::vector<Rational> q(depth, Rational(0));
  for (const auto& t : p.terms()) {
    if (!t.mono.is_flat() || !t.coef.is_rational() || !is_integer(t.mono.xpow) || t.mono.xpow < 0)
      arg.fail("exponent must be a polynomial in x with rational coefficients");
    const Rational c = t.coef.num().empty() ? Rational(0) : t.coef.num().begin()->second / t.coef.den().begin()->second;
    const long k = t.mono.xpow.get_num().get_si();
    if (k == 0) {
      constant = c;
    } else {
      if (static_cast<std::size_t>(k) > depth)
        arg.fail("exponent degree " + std::to_string(k) + " exceeds the depth " + std::to_string(depth));
      q[static_cast<std::size_t>(k - 1)] = c;
    }
  }
  return Transseries::monomial(depth, ExpFrac::exp(constant), Transmonomial(0, std::move(q)));
}

}  // namespace

Transseries eval_transseries(const Expr& e, std::size_t depth, const std::optional<Transmonomial>& cap) {
  auto rec = [&](const Expr& a) { return eval_transseries(a, depth, cap); };
  switch (e.kind) {
    case Expr::Kind::Number: return Transseries::constant(depth, e.number);
    case Expr::Kind::Symbol:
      if (e.name == "x") return Transseries::x_power(depth, 1);
      if (e.name == "E") return coef_constant(depth, ExpFrac::exp(1));
      e.fail("unknown symbol '" + e.name + "'");
    case Expr::Kind::Call:
      if (e.name == "O") {
        if (e.args.size() != 1) e.fail("O(...) takes one argument");
        const Transseries m = rec(e.args.front());
        if (m.terms().size() != 1 || !m.is_exact() || !(m.leading_coef() == ExpFrac(1)))
          e.args.front().fail("O(...) takes a single monomial");
        return Transseries::zero(depth, m.dominant());
      }
      e.fail("unknown function '" + e.name + "'");
    case Expr::Kind::Neg: return -rec(e.lhs());
    case Expr::Kind::Add: return rec(e.lhs()) + rec(e.rhs());
    case Expr::Kind::Sub: return rec(e.lhs()) - rec(e.rhs());
    case Expr::Kind::Mul: return rec(e.lhs()) * rec(e.rhs());
    case Expr::Kind::Div: {
      const Transseries d = rec(e.rhs());
      if (d.is_zero()) e.rhs().fail("division by zero");
      return rec(e.lhs()) * d.invert(cap);
    }
    case Expr::Kind::Pow: {
      if (is_symbol(e.lhs(), "E")) return coef_constant(depth, ExpFrac::exp(eval_rational(e.rhs())));
      if (is_symbol(e.lhs(), "e")) return exponential(e.rhs(), depth);
      if (is_symbol(e.lhs(), "x")) return Transseries::x_power(depth, eval_rational(e.rhs()));
      const long k = integer_power(e.rhs());
      const Transseries base = rec(e.lhs());
      Transseries acc = Transseries::constant(depth, 1);
      for (long i = 0; i < (k < 0 ? -k : k); ++i) acc *= base;
      return k < 0 ? acc.invert(cap) : acc;
    }
    default: e.fail("not a transseries");
  }
}

Transseries parse_transseries(std::string_view text, std::size_t depth, const std::optional<Transmonomial>& cap) {
  return eval_transseries(parse_expr(text), depth, cap).truncate(cap);
}

namespace {

using Operator = std::map<long, Transseries>;

bool mentions_d(const Expr& e) {
  if (is_symbol(e, "D")) return true;
  return std::any_of(e.args.begin(), e.args.end(), mentions_d);
}

// a*D + b for the exponent of e^(...).
std::pair<Rational, Rational> d_linear(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return {0, e.number};
    case Expr::Kind::Symbol:
      if (e.name == "D") return {1, 0};
      break;
    case Expr::Kind::Neg: {
      auto [a, b] = d_linear(e.lhs());
      return {-a, -b};
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      auto [a1, b1] = d_linear(e.lhs());
      auto [a2, b2] = d_linear(e.rhs());
      if (e.kind == Expr::Kind::Add) return {a1 + a2, b1 + b2};
      return {a1 - a2, b1 - b2};
    }
    case Expr::Kind::Mul: {
      auto [a1, b1] = d_linear(e.lhs());
      auto [a2, b2] = d_linear(e.rhs());
      if (a1 != 0 && a2 != 0) break;
      return {a1 * b2 + a2 * b1, b1 * b2};
    }
    default: break;
  }
  e.fail("shift exponent must be an integer multiple of D");
}

Operator op_add(Operator a, const Operator& b, bool subtract) {
  for (const auto& [k, c] : b) {
    auto it = a.find(k);
    const Transseries term = subtract ? -c : c;
    if (it == a.end()) a.emplace(k, term);
    else it->second += term;
  }
  return a;
}

// (sum a_i e^{iD}) o (sum b_j e^{jD}) = sum a_i b_j(x + i) e^{(i+j)D}.
Operator op_mul(const Operator& a, const Operator& b, const std::optional<Transmonomial>& cap) {
  Operator out;
  for (const auto& [i, ai] : a)
    for (const auto& [j, bj] : b) {
      Operator term{{i + j, ai * compose_shift(bj, i, cap)}};
      out = op_add(std::move(out), term, false);
    }
  return out;
}

Operator eval_operator(const Expr& e, std::size_t depth, const std::optional<Transmonomial>& cap) {
  if (!mentions_d(e)) return {{0, eval_transseries(e, depth, cap)}};
  auto rec = [&](const Expr& a) { return eval_operator(a, depth, cap); };
  switch (e.kind) {
    case Expr::Kind::Symbol: e.fail("a bare D is not a difference operator; write e^D for the shift");
    case Expr::Kind::Pow:
      if (is_symbol(e.lhs(), "e")) {
        auto [a, b] = d_linear(e.rhs());
        if (b != 0 || !is_integer(a)) e.rhs().fail("shift exponent must be an integer multiple of D");
        if (a < 0) e.rhs().fail("negative shifts are not supported");
        return {{a.get_num().get_si(), Transseries::constant(depth, 1)}};
      } else {
        const long n = integer_power(e.rhs());
        if (n < 0) e.rhs().fail("operator powers must be natural numbers");
        const Operator base = rec(e.lhs());
        Operator acc{{0, Transseries::constant(depth, 1)}};
        for (long i = 0; i < n; ++i) acc = op_mul(acc, base, cap);
        return acc;
      }
    case Expr::Kind::Neg: return op_add({}, rec(e.lhs()), true);
    case Expr::Kind::Add: return op_add(rec(e.lhs()), rec(e.rhs()), false);
    case Expr::Kind::Sub: return op_add(rec(e.lhs()), rec(e.rhs()), true);
    case Expr::Kind::Mul: return op_mul(rec(e.lhs()), rec(e.rhs()), cap);
    case Expr::Kind::Div: {
      if (mentions_d(e.rhs())) e.rhs().fail("division by an operator");
      const Transseries d = eval_transseries(e.rhs(), depth, cap);
      if (d.is_zero()) e.rhs().fail("division by zero");
      return op_mul({{0, d.invert(cap)}}, rec(e.lhs()), cap);
    }
    default: e.fail("not a difference operator");
  }
}

}  // namespace

std::vector<Transseries> parse_difference_operator(std::string_view text, std::size_t depth,
                                                   const std::optional<Transmonomial>& cap) {
  const Operator op = eval_operator(parse_expr(text), depth, cap);
  long top = -1;
  for (const auto& [k, c] : op)
    if (!c.is_zero()) top = std::max(top, k);
  if (top < 0) throw Error(ErrorKind::DomainError, "the operator is zero");
  std::vector<Transseries> h(static_cast<std::size_t>(top + 1), Transseries::zero(depth));
  for (const auto& [k, c] : op)
    if (k <= top) h[static_cast<std::size_t>(k)] = c;
  return h;
}

Json transseries_json(const Transseries& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    Json epart = Json::array();
    for (const auto& q : t.mono.epart) epart.push_back(rational_json(q));
    terms.push_back(Json{{"coef", t.coef.str()}, {"xpow", rational_json(t.mono.xpow)}, {"epart", epart}});
  }
  Json prec = nullptr;
  if (auto p = f.prec()) {
    Json epart = Json::array();
    for (const auto& q : p->epart) epart.push_back(rational_json(q));
    prec = Json{{"xpow", rational_json(p->xpow)}, {"epart", epart}};
  }
  return Json{{"terms", terms}, {"prec", prec}, {"text", f.str()}};
}

}  // namespace vdf
