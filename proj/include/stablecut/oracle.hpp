#ifndef STABLECUT_ORACLE_HPP
#define STABLECUT_ORACLE_HPP

// Exhaustive ground truth for small instances: exact Max-Cut, stability,
// local stability, edge distinctness, k-distinctness and the Cheeger constant.
//
// Enumeration fixes the lowest vertex of every connected component of the
// support on the +1 side. Two partitions that differ by flipping whole
// components separate the same edge set and are treated as the same cut, so
// each enumerated partition is a distinct cut and no 0/0 ratio can occur.
// The distance between two cuts is the fewest vertex moves turning one into
// the other, so a component contributes min(h, |C| - h) for h moved vertices.

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/random.hpp"

namespace stablecut {

struct OracleOptions {
  Index max_n = 22;
  /// Relative tolerance used to decide whether two cut values tie.
  double tie_tol = 1e-9;
};

struct MaxCutResult {
  Cut cut;
  double value = 0.0;
  bool unique = true;
};

struct StabilityReport {
  Cut max_cut;
  double max_value = 0.0;
  bool unique = true;
  /// Stable for exactly gamma < gamma_star; +inf when no alternative cut can win.
  double gamma_star = kInfinity;
  /// Locally stable for exactly gamma < gamma_local.
  double gamma_local = kInfinity;
  /// Edge distinct for exactly alpha < alpha_star; 1 when gamma_star is +inf.
  double alpha_star = 1.0;
  /// The max cut is k-distinct for all k <= k_star.
  double k_star = kInfinity;
  /// Alternative cut attaining gamma_star; empty when gamma_star is +inf.
  std::optional<Cut> worst_cut;
};

namespace detail {

/// Cut value of a ±1 vector under a fixed weight matrix, updated in O(n)
/// per single-vertex flip.
class FlipState {
 public:
  FlipState(const Matrix& m, Vector x) : m_(&m), x_(std::move(x)) { resync(); }

  void flip(Index v) {
    value_ += x_(v) * h_(v);
    h_.noalias() -= (2.0 * x_(v)) * m_->col(v);
    x_(v) = -x_(v);
  }

  /// Recomputes from scratch to discard accumulated rounding.
  void resync() {
    h_.noalias() = (*m_) * x_;
    value_ = 0.25 * (m_->sum() - x_.dot(h_));
  }

  double value() const { return value_; }
  const Vector& x() const { return x_; }

 private:
  const Matrix* m_;
  Vector x_;
  Vector h_;
  double value_ = 0.0;
};

inline constexpr std::uint64_t kResyncPeriod = 4096;

inline void check_limit(const WeightedGraph& g, const OracleOptions& opts) {
  const Index limit = std::min<Index>(opts.max_n, 62);
  if (g.size() > limit) {
    throw SizeLimitError("exhaustive enumeration limited to n <= " + std::to_string(limit) +
                         " (got n = " + std::to_string(g.size()) + ")");
  }
}

/// All vertices except the lowest of each support component.
inline std::vector<Index> free_vertices(const WeightedGraph& g) {
  Index k = 0;
  const auto label = support_components(g, &k);
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  std::vector<Index> out;
  for (Index v = 0; v < g.size(); ++v) {
    const auto l = static_cast<std::size_t>(label[static_cast<std::size_t>(v)]);
    if (seen[l]) {
      out.push_back(v);
    } else {
      seen[l] = true;
    }
  }
  return out;
}

/// Visits every nonempty flip set U of `free` relative to the cut `s`,
/// passing A = w(E(S) \ E(T)), B = w(E(T) \ E(S)), |U| and the vertex mask
/// of U, where T is s with U flipped.
template <typename Visit>
void for_each_alternative(const WeightedGraph& g, const Cut& s, const std::vector<Index>& free,
                          Visit&& visit) {
  const Index n = g.size();
  Matrix cut_part = Matrix::Zero(n, n);
  Matrix same_part = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      (s[i] != s[j] ? cut_part : same_part)(i, j) = g.weight(i, j);
    }
  }
  FlipState a(cut_part, Vector::Ones(n));
  FlipState b(same_part, Vector::Ones(n));
  const std::uint64_t count = std::uint64_t{1} << free.size();
  std::uint64_t vmask = 0;
  int size = 0;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int bit = std::countr_zero(k);
    const Index v = free[static_cast<std::size_t>(bit)];
    a.flip(v);
    b.flip(v);
    vmask ^= std::uint64_t{1} << v;
    size += ((vmask >> v) & 1U) ? 1 : -1;
    if (k % kResyncPeriod == 0) {
      a.resync();
      b.resync();
    }
    visit(a.value(), b.value(), size, vmask);
  }
}

inline Cut flip_mask(const Cut& s, std::uint64_t vmask) {
  std::vector<int> t = s.signs();
  for (std::size_t v = 0; v < t.size(); ++v) {
    if ((vmask >> v) & 1U) t[v] = -t[v];
  }
  return Cut(std::move(t));
}

/// Smallest value of w(S) - w(T) over alternatives T, or +inf when none.
inline double min_margin(const WeightedGraph& g, const Cut& s, const std::vector<Index>& free) {
  double best = kInfinity;
  for_each_alternative(g, s, free, [&](double a, double b, int, std::uint64_t) {
    best = std::min(best, a - b);
  });
  return best;
}

}  // namespace detail

/// Exact maximum cut by enumerating every partition. Among cuts of equal
/// value the lowest bitmask (bit v set = vertex v on the -1 side) wins.
inline MaxCutResult brute_force_max_cut(const WeightedGraph& g, const OracleOptions& opts = {}) {
  detail::check_limit(g, opts);
  const Index n = g.size();
  const auto free = detail::free_vertices(g);
  detail::FlipState st(g.weights(), Vector::Ones(n));
  double best = st.value();
  double second = -kInfinity;
  std::uint64_t best_mask = 0;
  std::uint64_t vmask = 0;
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t k = 1; k < count; ++k) {
    const Index v = free[static_cast<std::size_t>(std::countr_zero(k))];
    st.flip(v);
    vmask ^= std::uint64_t{1} << v;
    if (k % detail::kResyncPeriod == 0) st.resync();
    const double val = st.value();
    if (val > best || (val == best && vmask < best_mask)) {
      second = std::max(second, best);
      best = val;
      best_mask = vmask;
    } else {
      second = std::max(second, val);
    }
  }
  MaxCutResult out;
  out.cut = Cut::from_mask(n, best_mask);
  out.value = cut_value(g, out.cut);
  out.unique = second == -kInfinity || out.value - second > opts.tie_tol * std::abs(out.value);
  return out;
}

/// Largest gamma such that every vertex sends more than gamma times its
/// own-side weight across `c` (minimum of cross/own over vertices; own = 0
/// gives +inf).
inline double local_stability_gamma(const WeightedGraph& g, const Cut& c) {
  require_same_size(g, c);
  double best = kInfinity;
  for (Index v = 0; v < g.size(); ++v) {
    double cross = 0.0;
    double own = 0.0;
    for (Index j = 0; j < g.size(); ++j) {
      if (j == v) continue;
      (c[v] != c[j] ? cross : own) += g.weight(v, j);
    }
    if (own > 0.0) best = std::min(best, cross / own);
  }
  return best;
}

/// Full stability analysis of the exact max cut in one enumeration pass.
inline StabilityReport analyze_stability(const WeightedGraph& g, const OracleOptions& opts = {}) {
  const MaxCutResult mc = brute_force_max_cut(g, opts);
  const auto free = detail::free_vertices(g);
  const Index n = g.size();
  Index ncomp = 0;
  const auto label = support_components(g, &ncomp);
  std::vector<std::uint64_t> comp_mask(static_cast<std::size_t>(ncomp), 0);
  for (Index v = 0; v < n; ++v) {
    comp_mask[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])] |= std::uint64_t{1} << v;
  }
  std::erase_if(comp_mask, [](std::uint64_t m) { return std::popcount(m) < 2; });

  StabilityReport rep;
  rep.max_cut = mc.cut;
  rep.max_value = mc.value;
  rep.gamma_local = local_stability_gamma(g, mc.cut);

  double gamma = kInfinity;
  std::uint64_t gamma_mask = 0;
  double alpha = 1.0;
  double k = kInfinity;
  double margin = kInfinity;
  std::uint64_t margin_mask = 0;
  detail::for_each_alternative(g, mc.cut, free, [&](double a, double b, int, std::uint64_t vmask) {
    const double diff = a - b;
    if (diff < margin || (diff == margin && vmask < margin_mask)) {
      margin = diff;
      margin_mask = vmask;
    }
    if (b > 0.0) {
      const double ratio = a / b;
      if (ratio < gamma || (ratio == gamma && vmask < gamma_mask)) {
        gamma = ratio;
        gamma_mask = vmask;
      }
    }
    alpha = std::min(alpha, diff / (a + b));
    int dist = 0;
    for (const std::uint64_t m : comp_mask) {
      const int h = std::popcount(vmask & m);
      dist += std::min(h, std::popcount(m) - h);
    }
    k = std::min(k, diff / dist);
  });

  rep.unique = !(margin <= opts.tie_tol * mc.value);
  if (!rep.unique) {
    rep.gamma_star = 1.0;
    rep.alpha_star = 0.0;
    rep.k_star = 0.0;
    rep.worst_cut = detail::flip_mask(mc.cut, margin_mask).canonical();
    return rep;
  }
  rep.gamma_star = gamma;
  rep.alpha_star = alpha;
  rep.k_star = k;
  if (std::isfinite(gamma)) rep.worst_cut = detail::flip_mask(mc.cut, gamma_mask).canonical();
  return rep;
}

inline StabilityReport stability_gamma(const WeightedGraph& g, const OracleOptions& opts = {}) {
  return analyze_stability(g, opts);
}

inline double edge_distinctness_alpha(const WeightedGraph& g, const OracleOptions& opts = {}) {
  return analyze_stability(g, opts).alpha_star;
}

inline double k_distinctness(const WeightedGraph& g, const OracleOptions& opts = {}) {
  return analyze_stability(g, opts).k_star;
}

/// min over nonempty U with |U| <= n/2 of |E(U, U^c)| / |U|, counting every
/// support edge once regardless of weight. +inf when n < 2.
inline double cheeger_constant(const WeightedGraph& g, const OracleOptions& opts = {}) {
  detail::check_limit(g, opts);
  const Index n = g.size();
  const Matrix adj = (g.weights().array() > 0.0).cast<double>().matrix();
  detail::FlipState st(adj, Vector::Ones(n));
  double best = kInfinity;
  int size = 0;
  std::uint64_t mask = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int v = std::countr_zero(k);
    st.flip(v);
    mask ^= std::uint64_t{1} << v;
    size += ((mask >> v) & 1U) ? 1 : -1;
    if (k % detail::kResyncPeriod == 0) st.resync();
    if (2 * size <= n) best = std::min(best, std::round(st.value()) / size);
  }
  return best;
}

/// Plays the perturbation game: tries the optimal adversary (multiply
/// E(T) \ E(S) by gamma for the worst T) plus `trials` random
/// gamma-perturbations, and reports whether any of them leaves the original
/// max cut without a strict, unique win.
inline bool sample_perturbation_attack(const WeightedGraph& g, double gamma, int trials,
                                       std::uint64_t seed, const OracleOptions& opts = {}) {
  if (std::isnan(gamma)) throw DomainError("perturbation gamma is NaN");
  // No γ-perturbation exists for γ < 1.
  if (gamma < 1.0) return false;
  const StabilityReport rep = analyze_stability(g, opts);
  if (!rep.unique) return true;
  const Index n = g.size();
  const Cut& s = rep.max_cut;
  const auto free = detail::free_vertices(g);

  auto defeated = [&](const Perturbation& p) {
    const WeightedGraph h = apply_perturbation(g, p);
    const double margin = detail::min_margin(h, s, free);
    return margin <= opts.tie_tol * cut_value(h, s);
  };

  if (rep.worst_cut) {
    const Cut& t = *rep.worst_cut;
    Perturbation p = Perturbation::identity(n);
    p.gamma = gamma;
    for (const Edge& e : g.edges()) {
      if (t[e.u] != t[e.v] && s[e.u] == s[e.v]) {
        p.factors(e.u, e.v) = gamma;
        p.factors(e.v, e.u) = gamma;
      }
    }
    if (defeated(p)) return true;
  }

  for (int t = 0; t < trials; ++t) {
    Perturbation p = Perturbation::identity(n);
    p.gamma = gamma;
    auto rng = make_stream(seed, StreamTag::kPerturbation, static_cast<std::uint64_t>(t));
    for (const Edge& e : g.edges()) {
      double f = 0.0;
      if (rng.uniform01() < 0.5) {
        f = rng.uniform01() < 0.5 ? 1.0 : gamma;
      } else {
        f = std::min(gamma, rng.uniform(1.0, gamma));
      }
      p.factors(e.u, e.v) = f;
      p.factors(e.v, e.u) = f;
    }
    if (defeated(p)) return true;
  }
  return false;
}

}  // namespace stablecut

#endif  // STABLECUT_ORACLE_HPP
