#ifndef STABLECUT_DUAL_SDP_HPP
#define STABLECUT_DUAL_SDP_HPP

// Min-trace dual of the Max-Cut semidefinite relaxation:
//
//   minimize  sum_i d_i   subject to   W + diag(d) positive semidefinite.
//
// For every cut c and every feasible d, c^T (W + diag(d)) c >= 0 gives
// sum_i d_i >= -c^T W c, so any feasible d whose trace equals -c^T W c
// proves that c is a maximum cut.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "stablecut/graph.hpp"
#include "stablecut/random.hpp"
#include "stablecut/spectral.hpp"

namespace stablecut {

struct DualOptions {
  /// Relative duality-gap tolerance.
  double tol = 1e-6;
  int max_iter = 5000;
  std::uint64_t seed = 0;
  /// Exact-penalty weight; 0 selects 2n.
  double rho = 0.0;
  /// Step numerator c in c / sqrt(t); 0 selects the mean weighted degree / 4.
  double step_scale = 0.0;
  /// Relative PSD tolerance for accepting a certificate.
  double feasibility_tol = 1e-9;
  /// Stop after this many iterations without improving either bound (0: never).
  int patience = 0;
  bool record_log = false;
  /// extended_spectral_solve only: retry on a randomly jittered copy of W
  /// when the first run does not certify.
  bool jitter = false;
  double jitter_eps = 1e-6;
};

struct DualIterate {
  int iteration = 0;
  double trace = 0.0;
  double lambda_min = 0.0;
  double gap = 0.0;
};

struct DualSolution {
  /// Best feasible diagonal found.
  Vector d;
  double trace = 0.0;
  /// λ_min(W + diag(d)).
  double lambda_min = 0.0;
  /// Best -c^T W c over the cuts evaluated while solving.
  double lower_bound = 0.0;
  Cut best_cut;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<DualIterate> log;
};

/// -c^T W c = 2 (w_cut - w_uncut).
inline double cut_objective(const WeightedGraph& g, const Cut& c) {
  return 2.0 * (2.0 * cut_value(g, c) - g.total_weight());
}

struct CutCertificate {
  bool psd = false;
  double residual = 0.0;
  /// sum_i d_i agrees with -c^T W c.
  bool m_check = false;
  double trace = 0.0;
  double lambda_min = 0.0;
};

/// Checks the kernel diagonal of `c`. psd == true proves c is a maximum cut.
inline CutCertificate certify_cut(const WeightedGraph& g, const Cut& c, double psd_tol = 1e-9) {
  require_same_size(g, c);
  CutCertificate out;
  const Vector d = build_diagonal_from_cut(g, c);
  const Matrix m = shifted(g, d);
  out.trace = d.sum();
  out.residual = kernel_residual(g, d, c);
  const double obj = cut_objective(g, c);
  out.m_check = std::abs(out.trace - obj) <= 1e-9 * std::max(1.0, std::abs(obj));
  if (g.size() == 0) {
    out.psd = true;
    return out;
  }
  out.lambda_min = eigen_smallest_two(m).lambda_min;
  out.psd = out.lambda_min >= -psd_tol * inf_norm(m);
  return out;
}

namespace detail {

struct RoundingCandidate {
  Cut cut;
  double objective = 0.0;
};

inline RoundingCandidate round_and_polish(const WeightedGraph& g, const Vector& v) {
  RoundingCandidate out;
  out.cut = improve_by_flips(g, Cut::from_signs_of(v)).canonical();
  out.objective = cut_objective(g, out.cut);
  return out;
}

inline double gaussian(SplitMix64& rng) {
  const double u1 = 1.0 - rng.uniform01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

/// Projected subgradient descent on the exact penalty
/// F(d) = sum(d) + rho * max(0, -λ_min(W + diag(d))) with step c / sqrt(t),
/// starting from the diagonally dominant d_i = w(i). Each iterate is made
/// feasible by adding max(0, -λ_min) to every entry. The eigenvector of each
/// iterate is rounded (by sign and by a seeded random combination with the
/// second eigenvector), polished by single-vertex flips and used as a lower
/// bound; whenever the best cut improves, its kernel diagonal is tried as a
/// feasible point, which closes the gap exactly when the relaxation is tight.
inline DualSolution solve_min_trace(const WeightedGraph& g, const DualOptions& opts = {}) {
  const Index n = g.size();
  if (n == 0) throw DimensionError("graph must have at least one vertex");
  const Matrix& w = g.weights();
  const DegreeStats deg = weighted_degrees(g);
  const double rho = opts.rho > 0.0 ? opts.rho : 2.0 * static_cast<double>(n);
  double mean_degree = 0.0;
  for (double x : deg.weighted) mean_degree += x;
  mean_degree /= static_cast<double>(n);
  const double step = opts.step_scale > 0.0 ? opts.step_scale : std::max(mean_degree, 1e-12) / 4.0;

  DualSolution sol;
  Vector d = Eigen::Map<const Vector>(deg.weighted.data(), n);
  sol.d = d;
  sol.trace = d.sum();

  auto consider_cut = [&](const detail::RoundingCandidate& cand) {
    if (!sol.best_cut.size() || cand.objective > sol.lower_bound) {
      sol.lower_bound = cand.objective;
      sol.best_cut = cand.cut;
      const Vector dc = build_diagonal_from_cut(g, cand.cut);
      const Matrix mc = shifted(g, dc);
      const double mu = eigen_smallest_two(mc).lambda_min;
      if (mu >= -opts.feasibility_tol * std::max(1.0, inf_norm(mc))) {
        const double shift = std::max(0.0, -mu);
        const double t = dc.sum() + static_cast<double>(n) * shift;
        if (t < sol.trace) {
          sol.d = dc.array() + shift;
          sol.trace = t;
        }
      }
      return true;
    }
    return false;
  };

  consider_cut(detail::round_and_polish(g, Vector::Ones(n)));
  auto rng = make_stream(opts.seed, StreamTag::kRounding, 0);
  auto converged = [&] { return sol.trace - sol.lower_bound <= opts.tol * std::max(1.0, std::abs(sol.trace)); };

  Eigen::SelfAdjointEigenSolver<Matrix> solver(n);
  int stale = 0;
  int t = 0;
  while (!converged() && t < opts.max_iter) {
    ++t;
    Matrix m = w;
    m.diagonal() += d;
    solver.compute(m);
    const double lambda = solver.eigenvalues()(0);
    const Vector u = solver.eigenvectors().col(0);

    bool improved = false;
    const double shift = std::max(0.0, -lambda);
    const double feasible_trace = d.sum() + static_cast<double>(n) * shift;
    if (feasible_trace < sol.trace) {
      sol.d = d.array() + shift;
      sol.trace = feasible_trace;
      improved = true;
    }
    improved = consider_cut(detail::round_and_polish(g, u)) || improved;
    if (n > 1) {
      const Vector mix = detail::gaussian(rng) * u + detail::gaussian(rng) * solver.eigenvectors().col(1);
      improved = consider_cut(detail::round_and_polish(g, mix)) || improved;
    }
    if (opts.record_log) {
      sol.log.push_back({t, sol.trace, lambda, sol.trace - sol.lower_bound});
    }
    stale = improved ? 0 : stale + 1;
    if (opts.patience > 0 && stale >= opts.patience) break;

    Vector grad = Vector::Ones(n);
    if (lambda < 0.0) grad -= rho * u.cwiseAbs2();
    d -= (step / std::sqrt(static_cast<double>(t))) * grad;
  }

  sol.iterations = t;
  sol.converged = converged();
  sol.gap = sol.trace - sol.lower_bound;
  sol.lambda_min = eigen_smallest_two(shifted(g, sol.d)).lambda_min;
  return sol;
}

/// Multiplies every weight by (1 + eps * U[0,1)), one stream per edge.
inline WeightedGraph jitter_weights(const WeightedGraph& g, double eps, std::uint64_t seed) {
  const Index n = g.size();
  Matrix w = g.weights();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (w(i, j) == 0.0) continue;
      auto rng = make_stream(seed, StreamTag::kJitter, static_cast<std::uint64_t>(i * n + j));
      w(i, j) *= 1.0 + eps * rng.uniform01();
      w(j, i) = w(i, j);
    }
  }
  return WeightedGraph(std::move(w));
}

struct ExtendedSpectralResult {
  Cut cut;
  double value = 0.0;
  DualSolution dual;
  /// The cut is provably maximum: either the duality gap closed on W, or
  /// (after jitter) its kernel diagonal on W is positive semidefinite.
  bool certified = false;
  bool jittered = false;
};

/// Solves the dual, then takes the spectral partition of W + diag(d),
/// polished by single-vertex flips. The best cut seen by the dual solver is
/// used instead if it is heavier.
inline ExtendedSpectralResult extended_spectral_solve(const WeightedGraph& g, const DualOptions& opts = {}) {
  auto run = [&opts](const WeightedGraph& h) {
    ExtendedSpectralResult r;
    r.dual = solve_min_trace(h, opts);
    const Vector u = eigen_smallest_two(shifted(h, r.dual.d)).vector;
    r.cut = improve_by_flips(h, Cut::from_signs_of(u)).canonical();
    if (cut_value(h, r.dual.best_cut) > cut_value(h, r.cut)) r.cut = r.dual.best_cut;
    const double obj = cut_objective(h, r.cut);
    r.certified = r.dual.converged &&
                  std::abs(obj - r.dual.trace) <= opts.tol * std::max(1.0, std::abs(r.dual.trace));
    return r;
  };

  ExtendedSpectralResult out = run(g);
  if (!out.certified && opts.jitter) {
    const WeightedGraph h = jitter_weights(g, opts.jitter_eps, opts.seed);
    ExtendedSpectralResult alt = run(h);
    if (cut_value(g, alt.cut) >= cut_value(g, out.cut)) {
      out.cut = alt.cut;
      out.certified = certify_cut(g, alt.cut, opts.feasibility_tol).psd;
      out.jittered = true;
      out.dual = std::move(alt.dual);
    }
  }
  out.value = cut_value(g, out.cut);
  return out;
}

}  // namespace stablecut

#endif  // STABLECUT_DUAL_SDP_HPP
