#ifndef STABLECUT_SPECTRAL_HPP
#define STABLECUT_SPECTRAL_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "stablecut/graph.hpp"
#include "stablecut/oracle.hpp"

namespace stablecut {

/// Maximum absolute row sum.
inline double inf_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

inline void require_symmetric(const Matrix& m, double tol = 1e-12) {
  if (m.rows() != m.cols()) throw DimensionError("matrix must be square");
  if (m.size() == 0) return;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * std::max(1.0, inf_norm(m))) {
    throw ValidationError("matrix is not symmetric");
  }
}

struct SmallestEigenpairs {
  double lambda_min = 0.0;
  /// Unit eigenvector for lambda_min; the first entry with magnitude above
  /// 1e-8 is positive.
  Vector vector;
  /// Second smallest eigenvalue (equals lambda_min for 1x1 input).
  double lambda_second = 0.0;
};

namespace detail {

inline void normalize_sign(Vector& u) {
  for (Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) > 1e-8) {
      if (u(i) < 0.0) u = -u;
      return;
    }
  }
}

}  // namespace detail

/// Dense symmetric eigendecomposition (Householder tridiagonalization
/// followed by implicit QR) of `m`, reduced to its two lowest eigenvalues.
inline SmallestEigenpairs eigen_smallest_two(const Matrix& m) {
  require_symmetric(m);
  if (m.rows() == 0) throw DimensionError("empty matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  SmallestEigenpairs out;
  out.lambda_min = solver.eigenvalues()(0);
  out.lambda_second = m.rows() > 1 ? solver.eigenvalues()(1) : out.lambda_min;
  out.vector = solver.eigenvectors().col(0);
  out.vector.normalize();
  detail::normalize_sign(out.vector);
  return out;
}

/// All eigenvalues in descending order (λ_1 >= ... >= λ_n).
inline Vector spectrum_descending(const Matrix& m) {
  require_symmetric(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

/// λ_min(m) >= -tol * ||m||_inf.
inline bool is_psd(const Matrix& m, double tol = 1e-9) {
  if (m.rows() == 0) return true;
  return eigen_smallest_two(m).lambda_min >= -tol * inf_norm(m);
}

inline Matrix shifted(const WeightedGraph& g, const Vector& d) {
  if (d.size() != g.size()) throw DimensionError("diagonal shift length mismatch");
  Matrix m = g.weights();
  m.diagonal() += d;
  return m;
}

/// Cut induced by the eigenvector of the least eigenvalue of W + diag(d).
/// Entries with magnitude at most 1e-12 count as zero and go to the -1 side.
inline Cut spectral_partition(const WeightedGraph& g, const std::optional<Vector>& d = std::nullopt) {
  const Matrix m = d ? shifted(g, *d) : g.weights();
  Vector u = eigen_smallest_two(m).vector;
  for (Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) <= 1e-12) u(i) = 0.0;
  }
  return Cut::from_signs_of(u).canonical();
}

/// d_i = -c_i (W c)_i, i.e. the weight from i to the other side minus the
/// weight to its own side. (W + diag(d)) c = 0 by construction.
inline Vector build_diagonal_from_cut(const WeightedGraph& g, const Cut& c) {
  require_same_size(g, c);
  const Vector x = c.as_vector();
  return -(x.array() * (g.weights() * x).array()).matrix();
}

/// max_i |((W + diag(d)) c)_i|.
inline double kernel_residual(const WeightedGraph& g, const Vector& d, const Cut& c) {
  if (g.size() == 0) return 0.0;
  return (shifted(g, d) * c.as_vector()).cwiseAbs().maxCoeff();
}

struct SpectralCertificate {
  /// Two smallest eigenvalues of W and the unit eigenvector of the smallest.
  double lambda_n = 0.0;
  double lambda_n_minus_1 = 0.0;
  Vector eigvec;
  /// Kernel diagonal of the candidate cut.
  Vector diag_shift;
  /// W + diag(diag_shift) is positive semidefinite.
  bool psd = false;
  double lambda_min_shifted = 0.0;
  double residual = 0.0;
};

inline SpectralCertificate spectral_certificate(const WeightedGraph& g, const Cut& c,
                                                double psd_tol = 1e-9) {
  SpectralCertificate out;
  const SmallestEigenpairs plain = eigen_smallest_two(g.weights());
  out.lambda_n = plain.lambda_min;
  out.lambda_n_minus_1 = plain.lambda_second;
  out.eigvec = plain.vector;
  out.diag_shift = build_diagonal_from_cut(g, c);
  const Matrix m = shifted(g, out.diag_shift);
  out.lambda_min_shifted = eigen_smallest_two(m).lambda_min;
  out.psd = out.lambda_min_shifted >= -psd_tol * inf_norm(m);
  out.residual = kernel_residual(g, out.diag_shift, c);
  return out;
}

/// Stability needed for spectral partitioning with eigenvector u to be
/// provably correct.
struct EigenvectorRatio {
  /// max |u_i u_j| / min |u_i u_j| over support edges.
  double basic = 1.0;
  /// max over edges with u_i u_j < 0 of -u_i u_j divided by min over edges
  /// with u_i u_j >= 0 of u_i u_j.
  double refined = 0.0;
  /// u has a zero entry on some support edge; basic is then +inf.
  bool meaningless = false;
};

inline EigenvectorRatio eigenvector_required_gamma(const WeightedGraph& g, const Vector& u) {
  if (u.size() != g.size()) throw DimensionError("eigenvector length mismatch");
  EigenvectorRatio out;
  double max_abs = 0.0;
  double min_abs = kInfinity;
  double max_neg = 0.0;
  double min_pos = kInfinity;
  bool any = false;
  for (const Edge& e : g.edges()) {
    any = true;
    const double p = u(e.u) * u(e.v);
    max_abs = std::max(max_abs, std::abs(p));
    min_abs = std::min(min_abs, std::abs(p));
    if (p < 0.0) {
      max_neg = std::max(max_neg, -p);
    } else {
      min_pos = std::min(min_pos, p);
    }
  }
  if (!any) return out;
  if (min_abs == 0.0) {
    out.meaningless = true;
    out.basic = kInfinity;
  } else {
    out.basic = max_abs / min_abs;
  }
  if (max_neg == 0.0) {
    out.refined = 0.0;
  } else {
    out.refined = min_pos == 0.0 ? kInfinity : max_neg / min_pos;
  }
  return out;
}

/// Infinite local stability is replaced by this value inside (γ-1)/(γ+1).
inline constexpr double kGammaCap = 1e12;

inline double stability_factor(double gamma) {
  const double g = std::min(gamma, kGammaCap);
  return (g - 1.0) / (g + 1.0);
}

struct EigenvalueCondition {
  double margin = 0.0;
  bool holds = false;
  double gamma_local = 0.0;
  double delta_tilde = 0.0;
  double lambda_n = 0.0;
  double lambda_n_minus_1 = 0.0;
};

/// margin = 2 δ̃ (γ-1)/(γ+1) + λ_n(W) + λ_{n-1}(W) with γ the local
/// stability of `c`. A positive margin at the maximum cut implies that the
/// kernel diagonal of the cut makes W + D positive semidefinite.
inline EigenvalueCondition eigenvalue_psd_condition(const WeightedGraph& g, const Cut& c) {
  require_same_size(g, c);
  EigenvalueCondition out;
  out.gamma_local = local_stability_gamma(g, c);
  out.delta_tilde = weighted_degrees(g).min_weighted;
  const SmallestEigenpairs eig = eigen_smallest_two(g.weights());
  out.lambda_n = eig.lambda_min;
  out.lambda_n_minus_1 = eig.lambda_second;
  out.margin = 2.0 * out.delta_tilde * stability_factor(out.gamma_local) + out.lambda_n +
               out.lambda_n_minus_1;
  out.holds = out.margin > 0.0;
  return out;
}

struct ConditionVerdict {
  std::string name;
  bool applicable = false;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string note;
};

namespace detail {

// Degree when every vertex has the same unit-weight degree, otherwise -1.
inline Index regular_degree(const WeightedGraph& g) {
  if (!g.is_simple() || g.size() == 0) return -1;
  const DegreeStats d = weighted_degrees(g);
  return d.min_degree == d.max_degree ? d.min_degree : -1;
}

inline double distinctness_threshold(double ratio) {
  const double s = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  return s >= 1.0 ? kInfinity : (5.0 + s) / (1.0 - s);
}

inline ConditionVerdict not_applicable(std::string name, std::string why) {
  ConditionVerdict v;
  v.name = std::move(name);
  v.note = std::move(why);
  return v;
}

}  // namespace detail

/// Evaluates the graph-family sufficient conditions for the cut `c`
/// (normally the maximum cut): equal weighted degrees, regular expanders,
/// the Cheeger-constant route and the k-distinctness route. γ is the local
/// stability of `c`, capped at kGammaCap.
inline std::vector<ConditionVerdict> family_condition_checks(const WeightedGraph& g, const Cut& c,
                                                              const OracleOptions& opts = {}) {
  require_same_size(g, c);
  std::vector<ConditionVerdict> out;
  const Index n = g.size();
  const double gamma = std::min(local_stability_gamma(g, c), kGammaCap);
  const DegreeStats deg = weighted_degrees(g);
  const Vector eig = n > 0 ? spectrum_descending(g.weights()) : Vector();

  {
    const char* name = "equal_degree_eigenvalue_ratio";
    bool equal = n >= 2;
    for (double w : deg.weighted) {
      equal = equal && std::abs(w - deg.weighted.front()) <= 1e-12 * std::max(1.0, w);
    }
    if (!equal) {
      out.push_back(detail::not_applicable(name, "weighted degrees differ"));
    } else if (!(eig(n - 1) < 0.0)) {
      out.push_back(detail::not_applicable(name, "smallest eigenvalue is not negative"));
    } else {
      ConditionVerdict v{name, true, false, eig(n - 2) / eig(n - 1), (gamma - 3.0) / (gamma + 1.0), ""};
      v.holds = v.lhs < v.rhs;
      out.push_back(v);
    }
  }

  const Index d = detail::regular_degree(g);
  const bool regular = d > 0 && n >= 2;
  {
    const char* name = "regular_expander";
    if (!regular) {
      out.push_back(detail::not_applicable(name, "requires a d-regular simple graph"));
    } else {
      const double lambda = eig(1);
      const double dd = static_cast<double>(d);
      const double rhs = dd - lambda <= 0.0 ? kInfinity : (5.0 * dd + lambda) / (dd - lambda);
      out.push_back({name, true, gamma > rhs, gamma, rhs, "lambda_2 = " + std::to_string(lambda)});
    }
  }

  const bool small = n <= opts.max_n;
  const bool connected = is_connected(g);
  if (!regular || !small || !connected) {
    const std::string why = !regular ? "requires a d-regular simple graph"
                            : !small ? "n exceeds the oracle limit"
                                     : "requires a connected graph";
    out.push_back(detail::not_applicable("cheeger_eigenvalue_bound", why));
    out.push_back(detail::not_applicable("cheeger_route", why));
    out.push_back(detail::not_applicable("distinctness_cheeger_bound", why));
    out.push_back(detail::not_applicable("distinctness_route", why));
    return out;
  }

  const double dd = static_cast<double>(d);
  const double h = cheeger_constant(g, opts);
  const double lambda2 = eig(1);
  const double bound = std::sqrt(std::max(0.0, dd * dd - h * h));
  out.push_back({"cheeger_eigenvalue_bound", true, lambda2 <= bound + 1e-9 * dd, lambda2, bound,
                 "h = " + std::to_string(h)});
  {
    const double rhs = detail::distinctness_threshold(h / dd);
    out.push_back({"cheeger_route", true, gamma > rhs, gamma, rhs, "h = " + std::to_string(h)});
  }

  const StabilityReport rep = analyze_stability(g, opts);
  if (!rep.unique) {
    out.push_back(detail::not_applicable("distinctness_cheeger_bound", "maximum cut is not unique"));
    out.push_back(detail::not_applicable("distinctness_route", "maximum cut is not unique"));
    return out;
  }
  const double k = rep.k_star;
  out.push_back({"distinctness_cheeger_bound", true, h >= k - 1e-9 * std::max(1.0, k), h, k,
                 "h >= k"});
  {
    const double rhs = detail::distinctness_threshold(k / dd);
    out.push_back({"distinctness_route", true, gamma > rhs, gamma, rhs, "k = " + std::to_string(k)});
  }
  return out;
}

/// Unconditional Goemans-Williamson approximation ratio.
inline constexpr double kGoemansWilliamsonRatio = 0.87856;

/// arccos(1 - 2r) / (π r): approximation guarantee when the maximum cut holds
/// a fraction r >= 1/2 of the total weight.
inline double gw_bound(double r) {
  if (!(r >= 0.5 && r <= 1.0)) throw DomainError("gw_bound requires 1/2 <= r <= 1");
  return std::acos(1.0 - 2.0 * r) / (std::numbers::pi * r);
}

/// gw_bound(γ / (γ + 1)): locally γ-stable instances put at least that
/// fraction of the weight in the maximum cut.
inline double stable_gw_bound(double gamma) {
  if (!(gamma >= 1.0)) throw DomainError("stable_gw_bound requires gamma >= 1");
  if (std::isinf(gamma)) return 1.0;
  return gw_bound(gamma / (gamma + 1.0));
}

}  // namespace stablecut

#endif  // STABLECUT_SPECTRAL_HPP
