#ifndef STABLECUT_GRAPH_HPP
#define STABLECUT_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "stablecut/errors.hpp"

namespace stablecut {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Edge {
  Index u = 0;
  Index v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Max-Cut instance: a dense symmetric nonnegative weight matrix with zero
/// diagonal. The support graph consists of the strictly positive entries.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Takes ownership of `weights` after validation. Entries that differ from
  /// their transpose by at most 1e-12 (relative) are averaged.
  explicit WeightedGraph(Matrix weights) : w_(std::move(weights)) {
    if (w_.rows() != w_.cols()) {
      throw DimensionError("weight matrix must be square");
    }
    const Index n = w_.rows();
    for (Index i = 0; i < n; ++i) {
      if (w_(i, i) != 0.0) {
        throw ValidationError("weight matrix must have zero diagonal");
      }
      for (Index j = i + 1; j < n; ++j) {
        const double a = w_(i, j);
        const double b = w_(j, i);
        if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
          throw ValidationError("weights must be finite and nonnegative");
        }
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::max(a, b))) {
          throw ValidationError("weight matrix must be symmetric");
        }
        const double mean = 0.5 * (a + b);
        w_(i, j) = mean;
        w_(j, i) = mean;
      }
    }
  }

  /// Empty graph on `n` vertices.
  static WeightedGraph empty(Index n) { return WeightedGraph(Matrix::Zero(n, n)); }

  static WeightedGraph from_edges(Index n, std::span<const Edge> edges) {
    Matrix w = Matrix::Zero(n, n);
    for (const Edge& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw DimensionError("edge endpoint out of range");
      }
      if (e.u == e.v) {
        throw ValidationError("self-loops are not allowed");
      }
      if (w(e.u, e.v) != 0.0) {
        throw ValidationError("duplicate edge (" + std::to_string(e.u) + ", " +
                              std::to_string(e.v) + ")");
      }
      if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
        throw ValidationError("edge weights must be positive and finite");
      }
      w(e.u, e.v) = e.weight;
      w(e.v, e.u) = e.weight;
    }
    return WeightedGraph(std::move(w));
  }

  static WeightedGraph from_edges(Index n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  Index size() const { return w_.rows(); }
  const Matrix& weights() const { return w_; }
  double weight(Index i, Index j) const { return w_(i, j); }
  bool adjacent(Index i, Index j) const { return w_(i, j) > 0.0; }

  /// Support edges with u < v, in row-major order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Index i = 0; i < size(); ++i) {
      for (Index j = i + 1; j < size(); ++j) {
        if (w_(i, j) > 0.0) out.push_back({i, j, w_(i, j)});
      }
    }
    return out;
  }

  Index edge_count() const {
    Index m = 0;
    for (Index i = 0; i < size(); ++i) {
      for (Index j = i + 1; j < size(); ++j) m += w_(i, j) > 0.0 ? 1 : 0;
    }
    return m;
  }

  /// Sum of weights over unordered pairs.
  double total_weight() const { return 0.5 * w_.sum(); }

  /// True when every support edge has weight exactly 1.
  bool is_simple() const {
    return (w_.array() == 0.0 || w_.array() == 1.0).all();
  }

  /// Neighbor lists of the support graph.
  std::vector<std::vector<Index>> neighbors() const {
    std::vector<std::vector<Index>> out(static_cast<std::size_t>(size()));
    for (Index i = 0; i < size(); ++i) {
      for (Index j = 0; j < size(); ++j) {
        if (w_(i, j) > 0.0) out[static_cast<std::size_t>(i)].push_back(j);
      }
    }
    return out;
  }

  WeightedGraph scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
    return WeightedGraph(Matrix(w_ * factor));
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.w_.rows() == b.w_.rows() && a.w_ == b.w_;
  }

 private:
  Matrix w_;
};

/// Two-sided partition stored as a ±1 indicator vector.
class Cut {
 public:
  Cut() = default;

  explicit Cut(std::vector<int> signs) : s_(std::move(signs)) {
    for (int x : s_) {
      if (x != 1 && x != -1) throw ValidationError("cut entries must be +1 or -1");
    }
  }

  Cut(std::initializer_list<int> signs) : Cut(std::vector<int>(signs)) {}

  /// Vertices listed in `plus` get +1, everything else -1.
  static Cut from_side(Index n, std::span<const Index> plus) {
    std::vector<int> s(static_cast<std::size_t>(n), -1);
    for (Index v : plus) {
      if (v < 0 || v >= n) throw DimensionError("vertex out of range");
      s[static_cast<std::size_t>(v)] = 1;
    }
    return Cut(std::move(s));
  }

  static Cut from_side(Index n, std::initializer_list<Index> plus) {
    return from_side(n, std::span<const Index>(plus.begin(), plus.size()));
  }

  /// Bit i set means vertex i is on the -1 side.
  static Cut from_mask(Index n, std::uint64_t mask) {
    std::vector<int> s(static_cast<std::size_t>(n), 1);
    for (Index i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) s[static_cast<std::size_t>(i)] = -1;
    }
    return Cut(std::move(s));
  }

  /// Sign pattern of `v`: positive entries go to +1, the rest (zeros
  /// included) to -1.
  static Cut from_signs_of(const Vector& v) {
    std::vector<int> s(static_cast<std::size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i) s[static_cast<std::size_t>(i)] = v(i) > 0.0 ? 1 : -1;
    return Cut(std::move(s));
  }

  Index size() const { return static_cast<Index>(s_.size()); }
  int operator[](Index i) const { return s_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& signs() const { return s_; }

  Cut negated() const {
    Cut c = *this;
    for (int& x : c.s_) x = -x;
    return c;
  }

  Cut flipped(Index v) const {
    Cut c = *this;
    c.s_[static_cast<std::size_t>(v)] = -c.s_[static_cast<std::size_t>(v)];
    return c;
  }

  /// Representative with vertex 0 on the +1 side.
  Cut canonical() const { return (!s_.empty() && s_.front() == -1) ? negated() : *this; }

  bool same_partition(const Cut& o) const {
    return s_ == o.s_ || s_ == o.negated().s_;
  }

  std::vector<Index> side(int sign) const {
    std::vector<Index> out;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (s_[i] == sign) out.push_back(static_cast<Index>(i));
    }
    return out;
  }

  Vector as_vector() const {
    Vector v(size());
    for (Index i = 0; i < size(); ++i) v(i) = (*this)[i];
    return v;
  }

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  std::vector<int> s_;
};

inline void require_same_size(const WeightedGraph& g, const Cut& c) {
  if (c.size() != g.size()) {
    throw DimensionError("cut has length " + std::to_string(c.size()) + " but graph has " +
                         std::to_string(g.size()) + " vertices");
  }
}

/// Total weight of edges whose endpoints lie on different sides.
inline double cut_value(const WeightedGraph& g, const Cut& c) {
  require_same_size(g, c);
  double total = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    for (Index j = i + 1; j < g.size(); ++j) {
      if (c[i] != c[j]) total += g.weight(i, j);
    }
  }
  return total;
}

/// Weight of v's edges to the other side minus weight to its own side.
inline double flip_gain(const WeightedGraph& g, const Cut& c, Index v) {
  double gain = 0.0;
  for (Index j = 0; j < g.size(); ++j) {
    if (j != v) gain += c[v] == c[j] ? g.weight(v, j) : -g.weight(v, j);
  }
  return gain;
}

/// Cuts are equivalent when they separate the same set of support edges.
inline bool equivalent_cuts(const WeightedGraph& g, const Cut& a, const Cut& b) {
  require_same_size(g, a);
  require_same_size(g, b);
  for (const Edge& e : g.edges()) {
    if ((a[e.u] != a[e.v]) != (b[e.u] != b[e.v])) return false;
  }
  return true;
}

struct DegreeStats {
  std::vector<double> weighted;  // w(i) = sum_j W_ij
  Index max_degree = 0;          // Δ over the support graph
  Index min_degree = 0;          // δ over the support graph
  double min_weighted = 0.0;     // δ̃ = min_i w(i)
};

inline DegreeStats weighted_degrees(const WeightedGraph& g) {
  DegreeStats out;
  const Index n = g.size();
  if (n == 0) return out;
  out.weighted.resize(static_cast<std::size_t>(n));
  out.max_degree = 0;
  out.min_degree = n;
  out.min_weighted = kInfinity;
  for (Index i = 0; i < n; ++i) {
    double w = 0.0;
    Index d = 0;
    for (Index j = 0; j < n; ++j) {
      w += g.weight(i, j);
      d += g.adjacent(i, j) ? 1 : 0;
    }
    out.weighted[static_cast<std::size_t>(i)] = w;
    out.max_degree = std::max(out.max_degree, d);
    out.min_degree = std::min(out.min_degree, d);
    out.min_weighted = std::min(out.min_weighted, w);
  }
  return out;
}

/// Multiplicative edge-weight perturbation with factors in [1, gamma].
struct Perturbation {
  Matrix factors;
  double gamma = 1.0;

  static Perturbation identity(Index n) { return {Matrix::Ones(n, n), 1.0}; }
};

inline WeightedGraph apply_perturbation(const WeightedGraph& g, const Perturbation& p) {
  const Index n = g.size();
  if (p.factors.rows() != n || p.factors.cols() != n) {
    throw DimensionError("perturbation size does not match graph");
  }
  if (!(p.gamma >= 1.0)) throw ValidationError("perturbation gamma must be >= 1");
  Matrix w = g.weights();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (!g.adjacent(i, j)) continue;
      const double f = p.factors(i, j);
      if (f != p.factors(j, i)) throw ValidationError("perturbation factors must be symmetric");
      if (!(f >= 1.0 && f <= p.gamma)) {
        throw ValidationError("perturbation factor outside [1, gamma]");
      }
      w(i, j) *= f;
      w(j, i) = w(i, j);
    }
  }
  return WeightedGraph(std::move(w));
}

/// Result of collapsing groups of vertices: `map[old]` is the new index.
struct Contraction {
  WeightedGraph graph;
  std::vector<Index> map;

  /// Pulls a cut of the contracted graph back to the original vertices.
  Cut lift(const Cut& c) const {
    std::vector<int> s(map.size());
    for (std::size_t v = 0; v < map.size(); ++v) s[v] = c[map[v]];
    return Cut(std::move(s));
  }
};

/// Collapses every label class into one vertex. Labels must be 0..k-1 with
/// every class nonempty; new vertex order follows label order. Parallel
/// edges are summed and edges inside a class disappear.
inline Contraction contract(const WeightedGraph& g, std::span<const Index> labels) {
  const Index n = g.size();
  if (static_cast<Index>(labels.size()) != n) throw DimensionError("label vector size mismatch");
  Index k = 0;
  for (Index l : labels) {
    if (l < 0) throw ValidationError("negative contraction label");
    k = std::max(k, l + 1);
  }
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (Index l : labels) seen[static_cast<std::size_t>(l)] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ValidationError("contraction labels must be contiguous");
  }
  Matrix w = Matrix::Zero(k, k);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Index a = labels[static_cast<std::size_t>(i)];
      const Index b = labels[static_cast<std::size_t>(j)];
      if (a != b) w(a, b) += g.weight(i, j);
    }
  }
  return {WeightedGraph(std::move(w)), std::vector<Index>(labels.begin(), labels.end())};
}

/// Merges j into i. Surviving vertices keep their relative order; the merged
/// vertex takes the position of min(i, j).
inline Contraction merge_vertices(const WeightedGraph& g, Index i, Index j) {
  if (i == j) throw std::invalid_argument("cannot merge a vertex with itself");
  if (i < 0 || j < 0 || i >= g.size() || j >= g.size()) {
    throw DimensionError("vertex out of range");
  }
  const Index keep = std::min(i, j);
  const Index drop = std::max(i, j);
  std::vector<Index> labels(static_cast<std::size_t>(g.size()));
  for (Index v = 0; v < g.size(); ++v) {
    Index l = v < drop ? v : v - 1;
    if (v == drop) l = keep;
    labels[static_cast<std::size_t>(v)] = l;
  }
  return contract(g, labels);
}

/// Connected components of the support graph, labelled in order of their
/// lowest vertex.
inline std::vector<Index> support_components(const WeightedGraph& g, Index* count = nullptr) {
  const Index n = g.size();
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  Index next = 0;
  std::vector<Index> stack;
  for (Index s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (Index u = 0; u < n; ++u) {
        if (g.adjacent(v, u) && label[static_cast<std::size_t>(u)] < 0) {
          label[static_cast<std::size_t>(u)] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return label;
}

inline bool is_connected(const WeightedGraph& g) {
  Index k = 0;
  support_components(g, &k);
  return k <= 1;
}

/// Flips single vertices while any flip increases the cut value by more than
/// `rel_tol` of the current value. The largest gain (lowest index on ties)
/// is taken each round.
inline Cut improve_by_flips(const WeightedGraph& g, Cut c, double rel_tol = 1e-12) {
  require_same_size(g, c);
  const Index n = g.size();
  Vector x = c.as_vector();
  Vector field = g.weights() * x;
  double value = cut_value(g, c);
  for (;;) {
    Index best = -1;
    double best_gain = 0.0;
    for (Index v = 0; v < n; ++v) {
      const double gain = x(v) * field(v);  // same-side weight minus cross weight
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    if (best < 0 || best_gain <= rel_tol * std::max(1.0, value)) break;
    field -= 2.0 * x(best) * g.weights().col(best);
    x(best) = -x(best);
    value += best_gain;
  }
  return Cut::from_signs_of(x);
}

}  // namespace stablecut

#endif  // STABLECUT_GRAPH_HPP
