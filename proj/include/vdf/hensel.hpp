#pragma once

#include "vdf/error.hpp"
#include "vdf/sigmapoly.hpp"
#include "vdf/tropical.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vdf {

struct HenselConfig {
  GroupElem gamma;
  MultiIndex witness;
  /// One line per inequality checked.
  std::vector<std::string> diagnostics;
};

namespace detail {

// Values with infinity (nullopt).
inline bool value_less(const Precision& a, const Precision& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

inline bool value_leq(const Precision& a, const Precision& b) { return !value_less(b, a); }

inline Precision value_plus(const Precision& a, const GroupElem& g) {
  if (!a) return std::nullopt;
  return *a + g;
}

// Exact value of a Taylor coefficient; nullopt for an exact zero.
template <ResidueField F>
Precision certified_value(const HahnSeries<F>& s, const MultiIndex& i) {
  if (!s.is_zero()) return s.valuation();
  if (s.is_exact()) return std::nullopt;
  throw Error(ErrorKind::Precision, "G_" + index_str(i) + "(a) vanishes modulo " + prec_str(s.prec()) +
                                        "; raise the working precision");
}

}  // namespace detail

/// Detects a sigma-hensel configuration of (G, a) for one-variable G.
/// Returns nullopt when (G, a) is not in configuration.
template <ResidueField F>
std::optional<HenselConfig> config(const SigmaPoly<F>& g, const HahnSeries<F>& a) {
  if (g.nvars() != 1) throw Error(ErrorKind::DimensionMismatch, "configuration is defined for one variable");
  if (g.is_constant()) throw Error(ErrorKind::DomainError, "configuration of a constant polynomial");
  const auto& shape = g.shape();
  const auto& sigma = g.context()->sigma;
  const auto taylor = g.taylor(a);
  const MultiIndex zero(shape.width(), 0);
  const auto& g0 = taylor.at(zero);
  if (g0.is_zero()) {
    if (g0.is_exact()) return std::nullopt;
    throw Error(ErrorKind::Precision, "G(a) vanishes modulo " + prec_str(g0.prec()));
  }
  const GroupElem v0 = *g0.valuation();
  std::map<MultiIndex, Precision> values;
  for (const auto& [i, s] : taylor)
    if (i != zero) values.emplace(i, detail::certified_value(s, i));

  auto weight = [&](const MultiIndex& j, const GroupElem& gamma) {
    const GroupElem gg[1] = {gamma};
    return detail::value_plus(values.at(j), monomial_shift(sigma, shape, j, gg));
  };

  for (std::size_t pos = 0; pos < shape.width(); ++pos) {
    const MultiIndex i = unit_index(shape.width(), pos);
    auto it = values.find(i);
    if (it == values.end() || !it->second) continue;
    const GroupElem gamma = sigma.apply(v0 - *it->second, -static_cast<long>(shape.shift_of(pos)));
    HenselConfig cfg{gamma, i, {}};
    bool ok = true;
    for (std::size_t q = 0; q < shape.width() && ok; ++q) {
      const MultiIndex j = unit_index(shape.width(), q);
      if (!values.count(j)) continue;
      const Precision w = weight(j, gamma);
      ok = detail::value_leq(v0, w);
      cfg.diagnostics.push_back("(i) v(G(a)) = " + v0.str() + " <= " + prec_str(w) + " at " + index_str(j));
    }
    for (const auto& [j, vj] : values) {
      if (!ok) break;
      const Precision wj = weight(j, gamma);
      for (const auto& [jl, vjl] : values) {
        if (jl == j || !index_leq(j, jl)) continue;
        const Precision wjl = weight(jl, gamma);
        if (!detail::value_less(wj, wjl)) {
          ok = false;
          cfg.diagnostics.push_back("(ii) fails: " + prec_str(wj) + " at " + index_str(j) + " vs " + prec_str(wjl) +
                                    " at " + index_str(jl));
          break;
        }
      }
    }
    if (ok) {
      cfg.diagnostics.push_back("(ii) holds for all j < j + l with nonzero derivatives");
      return cfg;
    }
  }
  return std::nullopt;
}

/// Residue equation 1 + sum_k c_{e_k} sigma-bar^k(x) = 0 of the Newton step,
/// with c_i the residue of G_(i)(a) sigma(eps)^i / G(a), eps = t^gamma.
template <ResidueField F>
std::vector<typename F::Element> newton_residue_coeffs(const SigmaPoly<F>& g, const HahnSeries<F>& a,
                                                       const HenselConfig& cfg) {
  const auto& ctx = *g.context();
  const auto& field = ctx.field;
  const auto& shape = g.shape();
  const auto taylor = g.taylor(a);
  const auto& g0 = taylor.at(MultiIndex(shape.width(), 0));
  const GroupElem v0 = *g0.valuation();
  const auto inv_lead = field.inv(g0.leading_coef());
  std::vector<typename F::Element> alpha(shape.order + 1, field.zero());
  for (std::size_t pos = 0; pos < shape.width(); ++pos) {
    auto it = taylor.find(unit_index(shape.width(), pos));
    if (it == taylor.end() || it->second.is_zero()) continue;
    const long k = static_cast<long>(shape.shift_of(pos));
    auto [twist, shifted] = HahnSeries<F>::sigma_monomial(ctx, field.one(), cfg.gamma, k);
    if (*it->second.valuation() + shifted != v0) continue;
    alpha[static_cast<std::size_t>(k)] = field.mul(field.mul(it->second.leading_coef(), twist), inv_lead);
  }
  return alpha;
}

/// One Newton step b = a + t^gamma u with u-bar solving the residue equation.
/// Throws Unsupported when the residue oracle cannot solve it.
template <ResidueField F>
HahnSeries<F> refine_step(const SigmaPoly<F>& g, const HahnSeries<F>& a, const HenselConfig& cfg) {
  const auto& field = g.context()->field;
  const auto alpha = newton_residue_coeffs(g, a, cfg);
  auto u = field.solve_linear(std::span<const typename F::Element>(alpha));
  if (!u) {
    throw Error(ErrorKind::Unsupported, "oracle-unsupported: residue field " + std::string(field.name()) +
                                            " cannot solve the order-" +
                                            std::to_string(linear_order(field, std::span<const typename F::Element>(alpha))) +
                                            " residue equation");
  }
  const auto b = a + HahnSeries<F>::monomial(g.context(), *u, cfg.gamma);
  const auto ga = g.eval(a);
  const auto gb = g.eval(b);
  if (gb.is_zero()) {
    if (!gb.is_exact() && !(*ga.valuation() < *gb.prec()))
      throw Error(ErrorKind::Precision, "precision too low to certify v(G(b)) > v(G(a))");
  } else if (!(*ga.valuation() < *gb.valuation())) {
    throw Error(ErrorKind::DomainError, "Newton step did not increase v(G)");
  }
  return b;
}

enum class HenselOutcome { RootFound, PrecisionExhausted, OracleUnsupported, ConfigLost, IterationCap };

inline std::string to_string(HenselOutcome o) {
  switch (o) {
    case HenselOutcome::RootFound: return "root-found";
    case HenselOutcome::PrecisionExhausted: return "precision-exhausted";
    case HenselOutcome::OracleUnsupported: return "oracle-unsupported";
    case HenselOutcome::ConfigLost: return "config-lost";
    case HenselOutcome::IterationCap: return "iteration-cap";
  }
  return "unknown";
}

template <ResidueField F>
struct HenselIterate {
  HahnSeries<F> a;
  /// v(G(a)); for a root this is the precision bound (infinity when exact).
  Precision value;
  bool value_is_bound = false;
  std::optional<GroupElem> gamma;
};

template <ResidueField F>
struct RefineReport {
  std::vector<HenselIterate<F>> iterates;
  HenselOutcome outcome = HenselOutcome::IterationCap;
  /// Root found with G(b) = 0 exactly, not just modulo precision.
  bool exact_root = false;
  std::string message;
};

inline constexpr std::size_t kDefaultHenselIterations = 64;

/// Iterates refine_step from a until a root modulo precision, an oracle gap,
/// loss of configuration or the iteration cap.
template <ResidueField F>
RefineReport<F> solve(const SigmaPoly<F>& g, const HahnSeries<F>& start,
                      std::size_t max_iter = kDefaultHenselIterations) {
  auto cfg = config(g, start);
  if (!cfg) throw Error(ErrorKind::DomainError, "start point is not in sigma-hensel configuration");
  RefineReport<F> report;
  report.iterates.push_back({start, g.eval(start).valuation(), false, cfg->gamma});
  HahnSeries<F> a = start;
  for (std::size_t it = 0; it < max_iter; ++it) {
    HahnSeries<F> b;
    try {
      b = refine_step(g, a, *cfg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unsupported && e.kind() != ErrorKind::Precision &&
          e.kind() != ErrorKind::Indeterminate)
        throw;
      report.message = e.what();
      report.outcome = e.kind() == ErrorKind::Unsupported ? HenselOutcome::OracleUnsupported
                                                          : HenselOutcome::PrecisionExhausted;
      return report;
    }
    const auto gb = g.eval(b);
    if (gb.is_zero()) {
      report.iterates.push_back({b, gb.prec(), true, std::nullopt});
      report.outcome = HenselOutcome::RootFound;
      report.exact_root = gb.is_exact();
      return report;
    }
    try {
      cfg = config(g, b);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Precision) throw;
      report.iterates.push_back({b, gb.valuation(), false, std::nullopt});
      report.outcome = HenselOutcome::PrecisionExhausted;
      report.message = e.what();
      return report;
    }
    if (!cfg) {
      report.iterates.push_back({b, gb.valuation(), false, std::nullopt});
      report.outcome = HenselOutcome::ConfigLost;
      return report;
    }
    report.iterates.push_back({b, gb.valuation(), false, cfg->gamma});
    a = b;
  }
  report.outcome = HenselOutcome::IterationCap;
  return report;
}

}  // namespace vdf
