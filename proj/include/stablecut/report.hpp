#ifndef STABLECUT_REPORT_HPP
#define STABLECUT_REPORT_HPP

// JSON reports for the command-line tool. Non-finite numbers are written as
// the strings "inf", "-inf" and "nan"; keys keep insertion order so equal
// inputs give byte-identical output.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stablecut/combinatorial.hpp"
#include "stablecut/dual_sdp.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/oracle.hpp"
#include "stablecut/spectral.hpp"

namespace stablecut {

using Json = nlohmann::ordered_json;

inline Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline Json to_json(const Cut& c) { return Json(c.signs()); }

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

/// Tolerances used by every numeric check in a report.
struct Tolerances {
  double tie_relative = 1e-9;
  double psd_relative = 1e-9;
  double gap_relative = 1e-6;
  double kernel_absolute = 1e-10;
};

inline Json to_json(const Tolerances& t) {
  return Json{{"tie_relative", t.tie_relative},
              {"psd_relative", t.psd_relative},
              {"dual_gap_relative", t.gap_relative},
              {"kernel_residual_absolute", t.kernel_absolute}};
}

inline Json to_json(const StabilityReport& r, double cheeger, const OracleOptions& opts) {
  Json out;
  out["status"] = "computed";
  out["tie_tolerance"] = opts.tie_tol;
  out["max_cut"] = to_json(r.max_cut);
  out["max_value"] = r.max_value;
  out["unique"] = r.unique;
  out["gamma_star"] = number(r.gamma_star);
  out["gamma_local"] = number(r.gamma_local);
  out["alpha_star"] = number(r.alpha_star);
  out["k_star"] = number(r.k_star);
  out["cheeger"] = number(cheeger);
  out["worst_cut"] = r.worst_cut ? to_json(*r.worst_cut) : Json(nullptr);
  return out;
}

inline Json oracle_skipped(Index n, Index limit) {
  return Json{{"status", "skipped"}, {"reason", "n > limit"}, {"n", n}, {"limit", limit}};
}

inline Json to_json(const std::vector<MergeStep>& trace) {
  Json out = Json::array();
  for (const MergeStep& s : trace) {
    out.push_back(Json{{"iteration", s.iteration},
                       {"component_sizes", s.component_sizes},
                       {"chosen_i", s.chosen_i},
                       {"chosen_j", s.chosen_j},
                       {"chosen_c", s.chosen_c},
                       {"edge_weight_added", s.edge_weight_added},
                       {"nonempty_neighbors", s.nonempty_neighbors}});
  }
  return out;
}

inline Json to_json(const DualSolution& s, const DualOptions& opts) {
  return Json{{"d", to_json(s.d)},
              {"trace", s.trace},
              {"lambda_min", s.lambda_min},
              {"lower_bound", s.lower_bound},
              {"gap", s.gap},
              {"gap_tolerance", opts.tol},
              {"feasibility_tolerance", opts.feasibility_tol},
              {"iterations", s.iterations},
              {"converged", s.converged}};
}

inline Json to_json(const SpectralCertificate& c, double psd_tol) {
  return Json{{"lambda_n", c.lambda_n},
              {"lambda_n_minus_1", c.lambda_n_minus_1},
              {"eigvec", to_json(c.eigvec)},
              {"diag_shift", to_json(c.diag_shift)},
              {"psd", c.psd},
              {"psd_tolerance", psd_tol},
              {"lambda_min_shifted", c.lambda_min_shifted},
              {"residual", c.residual}};
}

inline Json to_json(const ConditionVerdict& v) {
  return Json{{"name", v.name},   {"applicable", v.applicable}, {"holds", v.holds},
              {"lhs", number(v.lhs)}, {"rhs", number(v.rhs)},     {"note", v.note}};
}

/// Sidecar written next to generated instances.
inline Json sidecar(std::uint64_t seed, const std::string& model, Json params,
                    const std::optional<Cut>& planted) {
  return Json{{"seed", seed},
              {"model", model},
              {"params", std::move(params)},
              {"planted_cut", planted ? to_json(*planted) : Json(nullptr)}};
}

struct SolveOptions {
  /// greedy, contract, spectral, dual, oracle or all.
  std::string solver = "all";
  /// Hard enumeration cap for the exact oracle.
  OracleOptions oracle;
  /// The stability section is attached automatically up to this size.
  Index oracle_attach = 16;
  DualOptions dual;
  Tolerances tol;
  bool timing = false;
};

struct SolveReport {
  Json json;
  /// Every solver that ran produced a certified maximum cut.
  bool all_certified = true;
  /// Iteration log of the dual solver when DualOptions::record_log is set.
  std::vector<DualIterate> dual_log;
};

inline const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names{"greedy", "contract", "spectral", "dual", "oracle"};
  return names;
}

namespace detail {

inline Json solver_entry(const std::string& name, const WeightedGraph& g, const Cut& cut,
                         bool certified, bool guaranteed, Json details) {
  return Json{{"name", name},
              {"status", "ok"},
              {"cut", to_json(cut)},
              {"value", cut_value(g, cut)},
              {"certified", certified},
              {"guaranteed", guaranteed},
              {"details", std::move(details)}};
}

}  // namespace detail

/// Runs the selected solvers and assembles the report. Throws
/// SizeLimitError when the oracle is selected explicitly above its limit and
/// ValidationError when the contraction solver is selected for a weighted
/// graph.
inline SolveReport solve_report(const WeightedGraph& g, const SolveOptions& opts, Json instance) {
  const auto& known = solver_names();
  const bool all = opts.solver == "all";
  if (!all && std::find(known.begin(), known.end(), opts.solver) == known.end()) {
    throw ValidationError("unknown solver '" + opts.solver + "'");
  }
  if (g.size() == 0) throw ValidationError("graph has no vertices");
  const Index n = g.size();
  const DegreeStats deg = weighted_degrees(g);

  SolveReport rep;
  Json& out = rep.json;
  out["instance"] = std::move(instance);
  out["instance"]["n"] = n;
  out["instance"]["m"] = g.edge_count();
  out["instance"]["total_weight"] = g.total_weight();
  out["tolerances"] = to_json(opts.tol);

  const bool oracle_selected = opts.solver == "oracle";
  if (oracle_selected && n > opts.oracle.max_n) {
    throw SizeLimitError("oracle limit is n <= " + std::to_string(opts.oracle.max_n) + ", got n = " +
                         std::to_string(n));
  }
  const Index attach = oracle_selected ? opts.oracle.max_n : std::min(opts.oracle_attach, opts.oracle.max_n);
  std::optional<StabilityReport> stability;
  if (n <= attach) stability = analyze_stability(g, opts.oracle);

  auto guaranteed_by_stability = [&](double threshold) {
    return stability && stability->unique && stability->gamma_star > threshold;
  };

  std::optional<Cut> best;
  auto note_cut = [&](const Cut& c) {
    if (!best || cut_value(g, c) > cut_value(g, *best)) best = c;
  };

  Json solvers = Json::array();
  auto timed = [&](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    Json entry = fn();
    if (opts.timing) {
      entry["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    if (entry["status"] == "ok") rep.all_certified = rep.all_certified && entry["certified"].get<bool>();
    solvers.push_back(std::move(entry));
  };

  if (all || opts.solver == "greedy") {
    timed([&] {
      const GreedyResult r = find_max_cut_greedy(g);
      const Cut cut = r.cut.canonical();
      note_cut(cut);
      const double threshold = std::sqrt(static_cast<double>(deg.max_degree) * static_cast<double>(n));
      Json details{{"stability_threshold", threshold}, {"trace", to_json(r.trace)}};
      if (stability) {
        const Applicability app = greedy_applicability(r, stability->gamma_star);
        details["refined_condition_holds"] = app.all;
      }
      return detail::solver_entry("greedy", g, cut, certify_cut(g, cut, opts.tol.psd_relative).psd,
                                  guaranteed_by_stability(threshold), std::move(details));
    });
  }

  if (all || opts.solver == "contract") {
    if (!g.is_simple()) {
      if (!all) throw ValidationError("the contraction solver requires a simple (unit-weight) graph");
      solvers.push_back(Json{{"name", "contract"}, {"status", "skipped"}, {"reason", "graph is weighted"}});
    } else {
      timed([&] {
        const ContractionSolveResult r = high_degree_solve(g);
        const Cut cut = r.cut;
        note_cut(cut);
        Json details{{"gamma", number(r.gamma)},
                     {"components", r.components},
                     {"exhaustive", r.exhaustive},
                     {"within_bound", r.within_bound},
                     {"contracted_value", r.contracted_value}};
        const bool guaranteed = stability && stability->unique &&
                                stability->gamma_star >= default_contraction_gamma(g);
        return detail::solver_entry("contract", g, cut, certify_cut(g, cut, opts.tol.psd_relative).psd,
                                    guaranteed, std::move(details));
      });
    }
  }

  if (all || opts.solver == "spectral") {
    timed([&] {
      const Cut raw = spectral_partition(g);
      const Cut cut = improve_by_flips(g, raw).canonical();
      note_cut(cut);
      const SmallestEigenpairs e = eigen_smallest_two(g.weights());
      const EigenvectorRatio ratio = eigenvector_required_gamma(g, e.vector);
      Json details{{"raw_cut", to_json(raw)},
                   {"raw_value", cut_value(g, raw)},
                   {"required_gamma_basic", number(ratio.basic)},
                   {"required_gamma_refined", number(ratio.refined)},
                   {"meaningless", ratio.meaningless}};
      const bool guaranteed = !ratio.meaningless && guaranteed_by_stability(ratio.basic * (1.0 - 1e-12));
      return detail::solver_entry("spectral", g, cut, certify_cut(g, cut, opts.tol.psd_relative).psd,
                                  guaranteed, std::move(details));
    });
  }

  if (all || opts.solver == "dual") {
    timed([&] {
      const ExtendedSpectralResult r = extended_spectral_solve(g, opts.dual);
      note_cut(r.cut);
      rep.dual_log = r.dual.log;
      Json details = to_json(r.dual, opts.dual);
      details["jittered"] = r.jittered;
      return detail::solver_entry("dual", g, r.cut, r.certified, r.certified, std::move(details));
    });
  }

  if (all || oracle_selected) {
    if (n > opts.oracle.max_n) {
      solvers.push_back(Json{{"name", "oracle"}, {"status", "skipped"}, {"reason", "n > limit"},
                             {"limit", opts.oracle.max_n}});
    } else {
      timed([&] {
        const MaxCutResult r = brute_force_max_cut(g, opts.oracle);
        note_cut(r.cut);
        return detail::solver_entry("oracle", g, r.cut, true, true, Json{{"unique", r.unique}});
      });
    }
  }
  out["solvers"] = std::move(solvers);

  if (stability) {
    out["oracle"] = to_json(*stability, cheeger_constant(g, opts.oracle), opts.oracle);
  } else {
    out["oracle"] = oracle_skipped(n, attach);
  }

  // Sufficient conditions are evaluated at the maximum cut when it is known,
  // otherwise at the heaviest cut found.
  const Cut ref = stability ? stability->max_cut : *best;
  Json cond;
  cond["cut_source"] = stability ? "oracle" : "best_solver";
  cond["cut"] = to_json(ref);
  const EigenvalueCondition ev = eigenvalue_psd_condition(g, ref);
  cond["eigenvalue_psd_condition"] = Json{{"margin", ev.margin},
                                          {"holds", ev.holds},
                                          {"gamma_local", number(ev.gamma_local)},
                                          {"gamma_cap", kGammaCap},
                                          {"delta_tilde", ev.delta_tilde},
                                          {"lambda_n", ev.lambda_n},
                                          {"lambda_n_minus_1", ev.lambda_n_minus_1}};
  const SpectralCertificate cert = spectral_certificate(g, ref, opts.tol.psd_relative);
  cond["kernel_certificate"] = to_json(cert, opts.tol.psd_relative);
  const Vector d = build_diagonal_from_cut(g, ref);
  const EigenvectorRatio ratio = eigenvector_required_gamma(g, eigen_smallest_two(shifted(g, d)).vector);
  cond["eigenvector_ratio"] = Json{{"basic", number(ratio.basic)},
                                   {"refined", number(ratio.refined)},
                                   {"meaningless", ratio.meaningless}};
  OracleOptions family = opts.oracle;
  family.max_n = attach;
  Json verdicts = Json::array();
  for (const auto& v : family_condition_checks(g, ref, family)) verdicts.push_back(to_json(v));
  cond["family_conditions"] = std::move(verdicts);

  Json gw;
  gw["unconditional"] = kGoemansWilliamsonRatio;
  const double gl = local_stability_gamma(g, ref);
  if (gl >= 1.0) {
    const double b = stable_gw_bound(std::min(gl, kGammaCap));
    gw["stable_bound"] = b;
    gw["effective"] = std::max(b, kGoemansWilliamsonRatio);
  } else {
    gw["stable_bound"] = nullptr;
    gw["effective"] = kGoemansWilliamsonRatio;
  }
  gw["stable_bound_gamma"] = number(gl);
  const double total = g.total_weight();
  const double r = total > 0.0 ? cut_value(g, ref) / total : 1.0;
  gw["cut_fraction"] = r;
  gw["fraction_bound"] = r >= 0.5 ? Json(gw_bound(r)) : Json(nullptr);
  cond["gw"] = std::move(gw);
  out["conditions"] = std::move(cond);
  return rep;
}

/// Oracle-only stability report.
inline Json verify_report(const WeightedGraph& g, const OracleOptions& opts, Json instance) {
  const StabilityReport r = analyze_stability(g, opts);
  Json out;
  out["instance"] = std::move(instance);
  out["instance"]["n"] = g.size();
  out["instance"]["m"] = g.edge_count();
  out["instance"]["total_weight"] = g.total_weight();
  out["oracle"] = to_json(r, cheeger_constant(g, opts), opts);
  return out;
}

/// Spectrum of W with the sufficient-condition checks. Conditions use the
/// maximum cut when n <= attach, otherwise the flip-polished spectral cut.
inline Json spectrum_report(const WeightedGraph& g, const OracleOptions& opts, Index attach,
                            const Tolerances& tol, Json instance) {
  if (g.size() == 0) throw ValidationError("graph has no vertices");
  const Index n = g.size();
  Json out;
  out["instance"] = std::move(instance);
  out["instance"]["n"] = n;
  out["instance"]["m"] = g.edge_count();
  out["tolerances"] = to_json(tol);
  out["spectrum"] = to_json(spectrum_descending(g.weights()));
  const Cut spectral = spectral_partition(g);
  out["spectral_partition"] = to_json(spectral);
  out["spectral_partition_value"] = cut_value(g, spectral);

  const bool small = n <= std::min(attach, opts.max_n);
  const Cut ref = small ? brute_force_max_cut(g, opts).cut : improve_by_flips(g, spectral).canonical();
  Json cond;
  cond["cut_source"] = small ? "oracle" : "polished_spectral";
  cond["cut"] = to_json(ref);
  const SpectralCertificate cert = spectral_certificate(g, ref, tol.psd_relative);
  cond["kernel_certificate"] = to_json(cert, tol.psd_relative);
  const EigenvalueCondition ev = eigenvalue_psd_condition(g, ref);
  cond["eigenvalue_psd_condition"] = Json{{"margin", ev.margin},
                                          {"holds", ev.holds},
                                          {"gamma_local", number(ev.gamma_local)},
                                          {"gamma_cap", kGammaCap},
                                          {"delta_tilde", ev.delta_tilde}};
  OracleOptions family = opts;
  family.max_n = small ? std::min(attach, opts.max_n) : 0;
  Json verdicts = Json::array();
  for (const auto& v : family_condition_checks(g, ref, family)) verdicts.push_back(to_json(v));
  cond["family_conditions"] = std::move(verdicts);
  out["conditions"] = std::move(cond);
  return out;
}

}  // namespace stablecut

#endif  // STABLECUT_REPORT_HPP
