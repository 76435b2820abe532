#ifndef STABLECUT_GENERATORS_HPP
#define STABLECUT_GENERATORS_HPP

// Seeded instance generators. Every random quantity is drawn from its own
// SplitMix64 stream (see random.hpp): edge (u, v) of an n-vertex graph uses
// stream index u * n + v, so outputs do not depend on loop order.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/oracle.hpp"
#include "stablecut/random.hpp"

namespace stablecut {

/// Bounded, strictly positive edge-weight distribution.
class WeightDistribution {
 public:
  enum class Kind { kConstant, kUniform, kTwoPoint };

  static WeightDistribution constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("constant weight must be positive");
    return WeightDistribution(Kind::kConstant, c, c, 0.0);
  }

  static WeightDistribution uniform(double a, double b) {
    if (!(a > 0.0) || !(a <= b) || !std::isfinite(b)) {
      throw ValidationError("uniform weights need 0 < a <= b");
    }
    return WeightDistribution(Kind::kUniform, a, b, 0.0);
  }

  /// w_high with probability p, w_low otherwise.
  static WeightDistribution two_point(double p, double w_low, double w_high) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("two_point probability must lie in [0, 1]");
    if (!(w_low > 0.0) || !(w_low <= w_high) || !std::isfinite(w_high)) {
      throw ValidationError("two_point weights need 0 < w_low <= w_high");
    }
    return WeightDistribution(Kind::kTwoPoint, w_low, w_high, p);
  }

  /// "constant:c", "uniform:a:b" or "two_point:p:w_low:w_high".
  static WeightDistribution parse(std::string_view text) {
    std::vector<double> args;
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    std::string_view rest = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
    while (!rest.empty()) {
      const auto next = rest.find(':');
      const std::string_view tok = rest.substr(0, next);
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ValidationError("bad number '" + std::string(tok) + "' in distribution");
      }
      args.push_back(x);
      rest = next == std::string_view::npos ? std::string_view() : rest.substr(next + 1);
    }
    if (kind == "constant" && args.size() == 1) return constant(args[0]);
    if (kind == "uniform" && args.size() == 2) return uniform(args[0], args[1]);
    if (kind == "two_point" && args.size() == 3) return two_point(args[0], args[1], args[2]);
    throw ValidationError("unknown distribution '" + std::string(text) +
                          "' (expected constant:c, uniform:a:b or two_point:p:lo:hi)");
  }

  Kind kind() const { return kind_; }
  double low() const { return a_; }
  double high() const { return b_; }
  double probability() const { return p_; }

  double sample(SplitMix64& rng) const {
    switch (kind_) {
      case Kind::kConstant:
        return a_;
      case Kind::kUniform:
        return rng.uniform(a_, b_);
      case Kind::kTwoPoint:
        return rng.uniform01() < p_ ? b_ : a_;
    }
    return a_;
  }

  double mean() const {
    switch (kind_) {
      case Kind::kConstant:
        return a_;
      case Kind::kUniform:
        return 0.5 * (a_ + b_);
      case Kind::kTwoPoint:
        return p_ * b_ + (1.0 - p_) * a_;
    }
    return a_;
  }

  double variance() const {
    switch (kind_) {
      case Kind::kConstant:
        return 0.0;
      case Kind::kUniform:
        return (b_ - a_) * (b_ - a_) / 12.0;
      case Kind::kTwoPoint:
        return p_ * (1.0 - p_) * (b_ - a_) * (b_ - a_);
    }
    return 0.0;
  }

  std::string to_string() const;

 private:
  WeightDistribution(Kind k, double a, double b, double p) : kind_(k), a_(a), b_(b), p_(p) {}

  Kind kind_;
  double a_;
  double b_;
  double p_;
};

namespace detail {
inline std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}
}  // namespace detail

inline std::string WeightDistribution::to_string() const {
  switch (kind_) {
    case Kind::kConstant:
      return "constant:" + detail::shortest(a_);
    case Kind::kUniform:
      return "uniform:" + detail::shortest(a_) + ":" + detail::shortest(b_);
    case Kind::kTwoPoint:
      return "two_point:" + detail::shortest(p_) + ":" + detail::shortest(a_) + ":" + detail::shortest(b_);
  }
  return "";
}

struct PlantedInstance {
  WeightedGraph graph;
  /// Canonical indicator of the planted bisection.
  Cut planted;
  double gamma = 1.0;
  WeightDistribution dist = WeightDistribution::constant(1.0);
  std::uint64_t seed = 0;
};

/// Planted bisection model: complete graph with i.i.d. weights from `dist`;
/// a uniformly random half S is chosen and every edge across (S, S^c) is
/// multiplied by gamma.
inline PlantedInstance gen_planted(Index n, const WeightDistribution& dist, double gamma,
                                   std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw ValidationError("planted model needs an even n >= 2");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be finite and >= 1");

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  auto prng = make_stream(seed, StreamTag::kPartition, 0);
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(prng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  std::vector<int> signs(static_cast<std::size_t>(n), -1);
  for (Index k = 0; k < n / 2; ++k) signs[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = 1;
  const Cut planted = Cut(std::move(signs)).canonical();

  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      auto rng = make_stream(seed, StreamTag::kEdgeWeight, static_cast<std::uint64_t>(i * n + j));
      double x = dist.sample(rng);
      if (planted[i] != planted[j]) x *= gamma;
      w(i, j) = x;
      w(j, i) = x;
    }
  }
  return {WeightedGraph(std::move(w)), planted, gamma, dist, seed};
}

/// Erdős–Rényi graph with unit weights.
inline WeightedGraph gen_gnp_simple(Index n, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("edge probability must lie in (0, 1)");
  if (n < 0) throw ValidationError("negative vertex count");
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      auto rng = make_stream(seed, StreamTag::kEdgePresence, static_cast<std::uint64_t>(i * n + j));
      if (rng.uniform01() < p) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
    }
  }
  return WeightedGraph(std::move(w));
}

/// Erdős–Rényi support with weights drawn from `dist`.
inline WeightedGraph gen_gnp_weighted(Index n, double p, const WeightDistribution& dist,
                                      std::uint64_t seed) {
  const WeightedGraph support = gen_gnp_simple(n, p, seed);
  Matrix w = support.weights();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (w(i, j) == 0.0) continue;
      auto rng = make_stream(seed, StreamTag::kEdgeWeight, static_cast<std::uint64_t>(i * n + j));
      w(i, j) = dist.sample(rng);
      w(j, i) = w(i, j);
    }
  }
  return WeightedGraph(std::move(w));
}

struct ScalingResult {
  WeightedGraph graph;
  /// Stability of the input (after jitter, when applied).
  double gamma_before = 1.0;
  /// Verified stability of the output.
  double gamma_after = 1.0;
  /// Factor applied to the maximum-cut edges (1 when gamma_before is +inf).
  double factor = 1.0;
  bool jittered = false;
};

/// Multiplies every edge of the maximum cut by gamma_target / gamma', where
/// gamma' is the current stability, so the result has stability
/// gamma_target. Inputs without a unique maximum cut are rejected unless
/// `jitter_seed` is given, in which case weights are first multiplied by
/// (1 + 1e-6 U[0,1)).
inline ScalingResult stabilize_by_scaling(const WeightedGraph& g, double gamma_target,
                                          const OracleOptions& opts = {},
                                          std::optional<std::uint64_t> jitter_seed = std::nullopt) {
  if (!(gamma_target >= 1.0) || !std::isfinite(gamma_target)) {
    throw DomainError("target stability must be finite and >= 1");
  }
  ScalingResult out;
  WeightedGraph base = g;
  StabilityReport rep = analyze_stability(base, opts);
  if (!rep.unique) {
    if (!jitter_seed) throw ValidationError("maximum cut is not unique; jitter the weights first");
    Matrix w = g.weights();
    const Index n = g.size();
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        if (w(i, j) == 0.0) continue;
        auto rng = make_stream(*jitter_seed, StreamTag::kJitter, static_cast<std::uint64_t>(i * n + j));
        w(i, j) *= 1.0 + 1e-6 * rng.uniform01();
        w(j, i) = w(i, j);
      }
    }
    base = WeightedGraph(std::move(w));
    rep = analyze_stability(base, opts);
    if (!rep.unique) throw ValidationError("maximum cut still not unique after jitter");
    out.jittered = true;
  }
  out.gamma_before = rep.gamma_star;
  if (std::isinf(rep.gamma_star)) {
    out.graph = base;
    out.gamma_after = rep.gamma_star;
    return out;
  }
  out.factor = gamma_target / rep.gamma_star;
  Matrix w = base.weights();
  const Cut& s = rep.max_cut;
  for (Index i = 0; i < base.size(); ++i) {
    for (Index j = 0; j < base.size(); ++j) {
      if (s[i] != s[j]) w(i, j) *= out.factor;
    }
  }
  out.graph = WeightedGraph(std::move(w));
  out.gamma_after = analyze_stability(out.graph, opts).gamma_star;
  if (out.gamma_after < gamma_target * (1.0 - 1e-9)) {
    throw std::runtime_error("scaled instance failed stability verification");
  }
  return out;
}

/// Two copies of W joined by a matching of weight tau * w(i) between the
/// copies of vertex i. Copy 0 of vertex i is i, copy 1 is n + i.
inline WeightedGraph cross_product_amplify(const WeightedGraph& g, double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw DomainError("tau must be finite and >= 1");
  const Index n = g.size();
  const DegreeStats deg = weighted_degrees(g);
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  w.topLeftCorner(n, n) = g.weights();
  w.bottomRightCorner(n, n) = g.weights();
  for (Index i = 0; i < n; ++i) {
    const double link = tau * deg.weighted[static_cast<std::size_t>(i)];
    w(i, n + i) = link;
    w(n + i, i) = link;
  }
  return WeightedGraph(std::move(w));
}

/// The cut (S x {0} ∪ S^c x {1}, rest) of the amplified graph.
inline Cut lift_to_amplified(const Cut& c) {
  std::vector<int> s(c.signs());
  for (int x : c.signs()) s.push_back(-x);
  return Cut(std::move(s));
}

}  // namespace stablecut

#endif  // STABLECUT_GENERATORS_HPP
