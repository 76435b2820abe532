#ifndef STABLECUT_TESTS_REFERENCE_ORACLES_HPP
#define STABLECUT_TESTS_REFERENCE_ORACLES_HPP

// Deliberately naive reference implementations used to freeze expected
// values. They enumerate raw bitmasks over all n vertices and recompute every
// quantity from explicit edge sets, sharing no code path with the library's
// incremental enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace reference {

using Weights = std::vector<std::vector<double>>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool side(std::uint64_t mask, int v) { return (mask >> v) & 1U; }

inline double cut_weight(const Weights& w, std::uint64_t mask) {
  const int n = static_cast<int>(w.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (side(mask, i) != side(mask, j)) total += w[i][j];
    }
  }
  return total;
}

struct MaxCut {
  std::uint64_t mask = 0;
  double value = 0.0;
  /// Number of masks (ordered, so each partition counted twice) attaining
  /// the maximum within 1e-9 relative, with distinct cut edge sets.
  int distinct_optima = 0;
};

// Edge-set signature: cut edges packed into a vector<bool>.
inline std::vector<bool> cut_edges(const Weights& w, std::uint64_t mask) {
  const int n = static_cast<int>(w.size());
  std::vector<bool> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (w[i][j] > 0) out.push_back(side(mask, i) != side(mask, j));
    }
  }
  return out;
}

inline MaxCut max_cut(const Weights& w) {
  const int n = static_cast<int>(w.size());
  MaxCut best;
  best.value = -1.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    const double v = cut_weight(w, m);
    if (v > best.value) {
      best.value = v;
      best.mask = m;
    }
  }
  std::vector<std::vector<bool>> optima;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::abs(cut_weight(w, m) - best.value) <= 1e-9 * best.value) {
      const auto sig = cut_edges(w, m);
      if (std::find(optima.begin(), optima.end(), sig) == optima.end()) optima.push_back(sig);
    }
  }
  best.distinct_optima = static_cast<int>(optima.size());
  return best;
}

struct Stability {
  double gamma = kInf;
  double alpha = 1.0;
  double k = kInf;
};

/// Minimum over alternative cuts T (with a different cut edge set) of the
/// three ratios, computed from explicit edge-set differences. The distance
/// for k is the fewest vertex moves from S to any partition with T's edges.
inline Stability stability(const Weights& w) {
  const int n = static_cast<int>(w.size());
  const std::uint64_t s = max_cut(w).mask;
  const double ws = cut_weight(w, s);
  std::map<std::vector<bool>, int> moves;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t) {
    int ham = 0;
    for (int v = 0; v < n; ++v) ham += side(s, v) != side(t, v) ? 1 : 0;
    const auto sig = cut_edges(w, t);
    const auto it = moves.find(sig);
    const int d = std::min(ham, n - ham);
    if (it == moves.end()) {
      moves.emplace(sig, d);
    } else {
      it->second = std::min(it->second, d);
    }
  }
  Stability out;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t) {
    double only_s = 0.0;  // w(E(S) \ E(T))
    double only_t = 0.0;  // w(E(T) \ E(S))
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const bool in_s = side(s, i) != side(s, j);
        const bool in_t = side(t, i) != side(t, j);
        if (in_s && !in_t) only_s += w[i][j];
        if (in_t && !in_s) only_t += w[i][j];
      }
    }
    if (only_s == 0.0 && only_t == 0.0) continue;
    if (only_t > 0.0) out.gamma = std::min(out.gamma, only_s / only_t);
    const double diff = ws - cut_weight(w, t);
    out.alpha = std::min(out.alpha, diff / (only_s + only_t));
    out.k = std::min(out.k, diff / moves.at(cut_edges(w, t)));
  }
  return out;
}

inline double cheeger(const Weights& w) {
  const int n = static_cast<int>(w.size());
  double best = kInf;
  for (std::uint64_t u = 1; u < (std::uint64_t{1} << n); ++u) {
    int size = 0;
    for (int v = 0; v < n; ++v) size += side(u, v) ? 1 : 0;
    if (2 * size > n) continue;
    int boundary = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (w[i][j] > 0 && side(u, i) != side(u, j)) ++boundary;
      }
    }
    best = std::min(best, static_cast<double>(boundary) / size);
  }
  return best;
}

}  // namespace reference

#endif  // STABLECUT_TESTS_REFERENCE_ORACLES_HPP
