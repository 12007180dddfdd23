#include "vdf/cli.hpp"

#include "vdf/hensel.hpp"
#include "vdf/io.hpp"
#include "vdf/kapranov.hpp"
#include "vdf/tropical.hpp"

#include <CLI11.hpp>

#include <functional>
#include <ostream>
#include <stdexcept>

namespace vdf {

namespace {

// Missing option values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string residue = "q";
  std::size_t gamma_dim = 1;
  std::string gamma_sigma = "id";
  std::string prec;
  std::size_t max_iter = 0;

  std::string expr;
  std::string poly;
  std::string start;
  std::string limit;
  std::vector<std::string> gammas;
  std::vector<std::string> points;
  std::vector<std::string> entries;
  std::vector<std::string> sigma_set;
  long power = 1;

  std::string op;
  std::string rhs;
  std::size_t order = kDefaultOperatorOrder;
  std::size_t depth = 1;
};

// Reparses with the option name attached to parse failures.
template <class Fn>
auto parsing(const std::string& option, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(option + ": " + e.what(), e.line(), e.column());
  }
}

Json multi_index_json(const MultiIndex& i) {
  Json out = Json::array();
  for (unsigned e : i) out.push_back(e);
  return out;
}

Json trop_value_json(const TropValue& t) {
  Json mins = Json::array();
  for (const auto& m : t.minimizers) mins.push_back(multi_index_json(m));
  return Json{{"value", gamma_json(t.value)}, {"minimizers", mins}};
}

Json vars_json(const std::vector<std::string>& vars) {
  Json out = Json::array();
  for (const auto& v : vars) out.push_back(v);
  return out;
}

/// Commands that need a residue field instance.
template <ResidueField F>
class FieldCommands {
 public:
  FieldCommands(const Options& o, F field) : o_(o) {
    const GroupAut sigma = parsing("--gamma-sigma", [&] { return parse_group_aut(o.gamma_sigma, o.gamma_dim); });
    ctx_ = make_context<F>(sigma, std::move(field));
    if (!o.prec.empty()) prec_ = parsing("--prec", [&] { return parse_gamma(o.prec, o.gamma_dim); });
  }

  Json series_eval() const { return series_json(series("--expr", o_.expr)); }
  Json series_invert() const { return series_json(series("--expr", o_.expr).invert(prec_).truncate(prec_)); }
  Json series_sigma() const { return series_json(series("--expr", o_.expr).sigma(o_.power).truncate(prec_)); }
  Json series_rv() const { return rv_json(ctx_->field, rv_of(series("--expr", o_.expr))); }

  Json trop_eval() const {
    const auto p = poly();
    const auto g = gammas(p);
    const auto t = trop_val(p.poly, std::span<const GroupElem>(g));
    Json out = trop_value_json(t);
    out["tropical_zero"] = t.minimizers.size() >= 2;
    out["vars"] = vars_json(p.vars);
    return out;
  }

  Json trop_zeros() const {
    const auto p = poly();
    Json zs = Json::array();
    for (const auto& z : tropical_zeros_uni(p.poly))
      zs.push_back(Json{{"gamma", gamma_json(z.gamma)}, {"multiplicity", z.multiplicity}});
    return Json{{"zeros", zs}};
  }

  Json trop_regular() const {
    const auto p = poly();
    const auto a = points(p);
    return Json{{"regular", is_regular(std::span<const HahnSeries<F>>(a), p.poly)}, {"vars", vars_json(p.vars)}};
  }

  Json trop_make_regular() const {
    const auto p = poly();
    if (o_.gammas.size() != 1) throw Error(ErrorKind::DimensionMismatch, "make-regular takes a single --gamma");
    const GroupElem g = parsing("--gamma", [&] { return parse_gamma(o_.gammas.front(), o_.gamma_dim); });
    return series_json(make_regular(p.poly, g));
  }

  Json trop_adjust() const {
    std::vector<HahnSeries<F>> entries;
    for (const auto& e : o_.entries) entries.push_back(series("--entry", e));
    const auto limit = series("--limit", o_.limit);
    std::vector<SigmaPoly<F>> fs;
    for (const auto& s : o_.sigma_set) {
      auto p = parsing("--sigma", [&] { return parse_sigmapoly(s, ctx_, prec_); });
      if (p.vars.size() != 1) throw Error(ErrorKind::DimensionMismatch, "--sigma polynomials take one variable");
      fs.push_back(std::move(p.poly));
    }
    const auto out = adjust_pc(make_trace(std::move(entries)), limit, std::span<const SigmaPoly<F>>(fs));
    Json es = Json::array();
    for (const auto& b : out.entries) es.push_back(series_json(b));
    Json gs = Json::array();
    for (const auto& g : out.gammas) gs.push_back(gamma_json(g));
    Json values = Json::array();
    for (const auto& f : fs) {
      Json row = Json::array();
      const auto fa = f.eval(limit);
      for (const auto& b : out.entries) {
        const auto v = (f.eval(b) - fa).valuation();
        row.push_back(v ? gamma_json(*v) : Json(nullptr));
      }
      values.push_back(row);
    }
    return Json{{"entries", es}, {"gammas", gs}, {"values", values}};
  }

  Json hensel_config() const {
    const auto p = poly();
    const auto a = series("--start", o_.start);
    const auto cfg = config(p.poly, a);
    if (!cfg) return Json{{"in_configuration", false}};
    Json diag = Json::array();
    for (const auto& d : cfg->diagnostics) diag.push_back(d);
    return Json{{"in_configuration", true},
                {"gamma", gamma_json(cfg->gamma)},
                {"witness", multi_index_json(cfg->witness)},
                {"diagnostics", diag}};
  }

  Json hensel_solve() const {
    const auto p = poly();
    const auto a = series("--start", o_.start);
    const auto report = solve(p.poly, a, o_.max_iter ? o_.max_iter : kDefaultHenselIterations);
    Json its = Json::array();
    for (const auto& it : report.iterates)
      its.push_back(Json{{"a", series_json(it.a)},
                         {"value", precision_json(it.value)},
                         {"value_is_bound", it.value_is_bound},
                         {"gamma", it.gamma ? gamma_json(*it.gamma) : Json(nullptr)}});
    Json out{{"iterates", its}, {"outcome", to_string(report.outcome)}, {"exact_root", report.exact_root}};
    if (!report.message.empty()) out["message"] = report.message;
    return out;
  }

  Json kapranov_lift() const {
    const auto p = poly();
    const auto g = gammas(p);
    const auto r = lift_root(p.poly, std::span<const GroupElem>(g), cap(),
                             o_.max_iter ? o_.max_iter : kDefaultLiftIterations);
    Json root = Json::array();
    for (const auto& s : r.root) root.push_back(series_json(s));
    Json progress = Json::array();
    for (const auto& v : r.progress) progress.push_back(gamma_json(v));
    return Json{{"root", root}, {"residual", precision_json(r.residual)}, {"progress", progress},
                {"vars", vars_json(p.vars)}};
  }

  Json kapranov_roots() const {
    const auto p = poly();
    Json roots = Json::array();
    for (const auto& r : np_all_roots(p.poly, cap())) {
      Json j = series_json(r.root);
      j["multiplicity"] = r.multiplicity;
      roots.push_back(j);
    }
    return Json{{"roots", roots}};
  }

 private:
  HahnSeries<F> series(const std::string& option, const std::string& text) const {
    if (text.empty()) throw UsageError(option + " is required");
    return parsing(option, [&] { return parse_series(text, ctx_, prec_); });
  }

  ParsedPoly<F> poly() const {
    if (o_.poly.empty()) throw UsageError("--poly is required");
    return parsing("--poly", [&] { return parse_sigmapoly(o_.poly, ctx_, prec_); });
  }

  std::vector<GroupElem> gammas(const ParsedPoly<F>& p) const {
    if (o_.gammas.size() != p.vars.size())
      throw Error(ErrorKind::DimensionMismatch, "expected one --gamma per variable (" +
                                                    std::to_string(p.vars.size()) + ")");
    std::vector<GroupElem> out;
    for (const auto& g : o_.gammas) out.push_back(parsing("--gamma", [&] { return parse_gamma(g, o_.gamma_dim); }));
    return out;
  }

  std::vector<HahnSeries<F>> points(const ParsedPoly<F>& p) const {
    if (o_.points.size() != p.vars.size())
      throw Error(ErrorKind::DimensionMismatch, "expected one --point per variable (" +
                                                    std::to_string(p.vars.size()) + ")");
    std::vector<HahnSeries<F>> out;
    for (const auto& s : o_.points) out.push_back(series("--point", s));
    return out;
  }

  GroupElem cap() const {
    if (!prec_) throw UsageError("--prec is required");
    return *prec_;
  }

  const Options& o_;
  ContextPtr<F> ctx_;
  Precision prec_;
};

using Command = std::function<Json()>;

template <ResidueField F>
Command field_command(const std::string& name, const Options& o, F field) {
  return [name, &o, field] {
    const FieldCommands<F> c(o, field);
    if (name == "series eval") return c.series_eval();
    if (name == "series invert") return c.series_invert();
    if (name == "series sigma") return c.series_sigma();
    if (name == "series rv") return c.series_rv();
    if (name == "trop eval") return c.trop_eval();
    if (name == "trop zeros") return c.trop_zeros();
    if (name == "trop regular") return c.trop_regular();
    if (name == "trop make-regular") return c.trop_make_regular();
    if (name == "trop adjust") return c.trop_adjust();
    if (name == "hensel config") return c.hensel_config();
    if (name == "hensel solve") return c.hensel_solve();
    if (name == "kapranov lift") return c.kapranov_lift();
    return c.kapranov_roots();
  };
}

Json transum(const Options& o) {
  if (o.op.empty() || o.rhs.empty()) throw UsageError("--op and --rhs are required");
  std::optional<Transmonomial> cap;
  if (!o.prec.empty())
    cap = Transmonomial::x_power(o.depth, parsing("--prec", [&] { return parse_rational_expr(o.prec); }));
  const auto h = parsing("--op", [&] { return parse_difference_operator(o.op, o.depth, cap); });
  const auto rhs = parsing("--rhs", [&] { return parse_transseries(o.rhs, o.depth, cap); });
  const auto f = solve_linear_difference(std::span<const Transseries>(h), rhs, o.order);
  const auto residual = apply_difference(std::span<const Transseries>(h), f) - rhs;
  Json ops = Json::array();
  for (const auto& c : h) ops.push_back(c.str());
  return Json{{"solution", transseries_json(f)}, {"operator", ops}, {"residual", transseries_json(residual)}};
}

Json error_json(const std::string& kind, const std::string& message, const Json& location) {
  return Json{{"schema", "1"}, {"error", Json{{"kind", kind}, {"message", message}, {"location", location}}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computation in valued difference fields", "vdf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--residue", o.residue, "Residue field: q, ratshift or expgroup")
      ->check(CLI::IsMember({"q", "ratshift", "expgroup"}));
  app.add_option("--gamma-dim", o.gamma_dim, "Dimension n of the value group Q^n")->check(CLI::PositiveNumber);
  app.add_option("--gamma-sigma", o.gamma_sigma, "Automorphism of Q^n: id, a positive scalar, or a matrix");
  app.add_option("--prec", o.prec, "Precision cap: a group element (x-power for transum)");
  app.add_option("--max-iter", o.max_iter, "Iteration cap for hensel solve and kapranov lift");

  std::string chosen;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&chosen, parent, name] { chosen = parent->get_name() + " " + name; });
    return sub;
  };

  CLI::App* series = app.add_subcommand("series", "Hahn series arithmetic")->require_subcommand(1);
  series->fallthrough();
  for (const char* n : {"eval", "invert", "sigma", "rv"}) {
    auto* s = leaf(series, n, std::string("series ") + n);
    s->add_option("--expr", o.expr, "Series expression")->required();
    if (std::string(n) == "sigma") s->add_option("--power", o.power, "Apply sigma^k");
  }

  CLI::App* trop = app.add_subcommand("trop", "Tropical evaluation and regularity")->require_subcommand(1);
  trop->fallthrough();
  leaf(trop, "eval", "Tropical value and minimizing indices")->add_option("--poly", o.poly)->required();
  trop->get_subcommand("eval")->add_option("--gamma", o.gammas, "One value per variable")->required();
  leaf(trop, "zeros", "Tropical zeros of a one-variable polynomial")->add_option("--poly", o.poly)->required();
  auto* reg = leaf(trop, "regular", "Regularity of a point");
  reg->add_option("--poly", o.poly)->required();
  reg->add_option("--point", o.points, "One series per variable")->required();
  auto* mk = leaf(trop, "make-regular", "A regular element of given value");
  mk->add_option("--poly", o.poly)->required();
  mk->add_option("--gamma", o.gammas)->required();
  auto* adj = leaf(trop, "adjust", "Adjust a pseudo-Cauchy trace");
  adj->add_option("--entry", o.entries, "Trace entries in order")->required();
  adj->add_option("--limit", o.limit, "Pseudolimit")->required();
  adj->add_option("--sigma", o.sigma_set, "Polynomials of the adjusting set");

  CLI::App* hensel = app.add_subcommand("hensel", "sigma-Hensel refinement")->require_subcommand(1);
  hensel->fallthrough();
  for (const char* n : {"config", "solve"}) {
    auto* s = leaf(hensel, n, std::string("hensel ") + n);
    s->add_option("--poly", o.poly)->required();
    s->add_option("--start", o.start, "Starting point")->required();
  }

  CLI::App* kap = app.add_subcommand("kapranov", "Lifting tropical zeros to roots")->require_subcommand(1);
  kap->fallthrough();
  auto* lift = leaf(kap, "lift", "Root of given value");
  lift->add_option("--poly", o.poly)->required();
  lift->add_option("--gamma", o.gammas, "One value per variable")->required();
  leaf(kap, "roots", "All roots by Newton-Puiseux expansion")->add_option("--poly", o.poly)->required();

  CLI::App* ts = app.add_subcommand("transum", "Solve a linear difference equation over transseries");
  ts->add_option("--op", o.op, "Operator in e^D, e.g. \"e^D-1\"")->required();
  ts->add_option("--rhs", o.rhs, "Right-hand side")->required();
  ts->add_option("--order", o.order, "Truncation order of the operator expansion");
  ts->add_option("--depth", o.depth, "Maximal degree of exponent polynomials")->check(CLI::PositiveNumber);
  ts->callback([&chosen] { chosen = "transum"; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << error_json("usage", e.what(), nullptr).dump() << "\n";
    return kExitUsage;
  }

  try {
    Json result;
    if (chosen == "transum") {
      result = transum(o);
    } else {
      Command cmd;
      if (o.residue == "ratshift") cmd = field_command(chosen, o, RatShiftField{});
      else if (o.residue == "expgroup") cmd = field_command(chosen, o, ExpGroupField{});
      else cmd = field_command(chosen, o, RationalField{});
      result = cmd();
    }
    Json doc{{"schema", "1"}, {"command", chosen}};
    doc.update(result);
    out << doc.dump() << "\n";
    return kExitOk;
  } catch (const UsageError& e) {
    out << error_json("usage", e.what(), nullptr).dump() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    out << error_json("parse", e.what(), Json{{"line", e.line()}, {"column", e.column()}}).dump() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::Parse ? kExitUsage : kExitDomain;
    out << error_json(std::string(to_string(e.kind())), e.what(), nullptr).dump() << "\n";
    return code;
  }
}

}  // namespace vdf
