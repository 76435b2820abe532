#ifndef STABLECUT_COMBINATORIAL_HPP
#define STABLECUT_COMBINATORIAL_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/oracle.hpp"

namespace stablecut {

/// One iteration of the greedy component-growing algorithm.
struct MergeStep {
  int iteration = 0;
  /// Sizes of the current components, ordered by lowest contained vertex.
  std::vector<Index> component_sizes;
  /// Position of the smallest component in that order.
  Index chosen_i = 0;
  /// Position of the component it was joined to.
  Index chosen_j = 0;
  /// 0: join L_i with R_j and R_i with L_j's opposite (E^0 edges become cut);
  /// 1: E^1 edges become cut.
  int chosen_c = 0;
  double edge_weight_added = 0.0;
  /// max over c of |{j : E_j^c nonempty}| for the chosen component.
  Index nonempty_neighbors = 0;
};

struct GreedyResult {
  Cut cut;
  std::vector<MergeStep> trace;
};

namespace detail {

// Runs the algorithm on a connected graph. Returns side labels 0/1.
inline std::vector<int> grow_bipartite_components(const WeightedGraph& g, int& iteration,
                                                  std::vector<MergeStep>& trace) {
  const Index n = g.size();
  std::vector<int> side(static_cast<std::size_t>(n), 0);
  // Components kept sorted by lowest vertex; each member list stays sorted.
  std::vector<std::vector<Index>> comps;
  for (Index v = 0; v < n; ++v) comps.push_back({v});

  while (comps.size() > 1) {
    std::size_t ci = 0;
    for (std::size_t k = 1; k < comps.size(); ++k) {
      if (comps[k].size() < comps[ci].size()) ci = k;
    }

    MergeStep step;
    step.iteration = ++iteration;
    for (const auto& c : comps) step.component_sizes.push_back(static_cast<Index>(c.size()));
    step.chosen_i = static_cast<Index>(ci);

    double best = -1.0;
    std::size_t best_j = 0;
    int best_c = 0;
    Index nonempty[2] = {0, 0};
    for (std::size_t cj = 0; cj < comps.size(); ++cj) {
      if (cj == ci) continue;
      double weight[2] = {0.0, 0.0};
      bool has_edge[2] = {false, false};
      for (Index a : comps[ci]) {
        for (Index b : comps[cj]) {
          const double w = g.weight(a, b);
          if (w <= 0.0) continue;
          const int c = side[static_cast<std::size_t>(a)] == side[static_cast<std::size_t>(b)] ? 0 : 1;
          weight[c] += w;
          has_edge[c] = true;
        }
      }
      for (int c = 0; c < 2; ++c) {
        nonempty[c] += has_edge[c] ? 1 : 0;
        if (weight[c] > best) {
          best = weight[c];
          best_j = cj;
          best_c = c;
        }
      }
    }

    step.chosen_j = static_cast<Index>(best_j);
    step.chosen_c = best_c;
    step.edge_weight_added = best;
    step.nonempty_neighbors = std::max(nonempty[0], nonempty[1]);
    trace.push_back(std::move(step));

    // Same-label edges must end up crossing: flip the joined component.
    if (best_c == 0) {
      for (Index b : comps[best_j]) side[static_cast<std::size_t>(b)] ^= 1;
    }
    std::vector<Index> merged;
    std::merge(comps[ci].begin(), comps[ci].end(), comps[best_j].begin(), comps[best_j].end(),
               std::back_inserter(merged));
    const std::size_t lo = std::min(ci, best_j);
    const std::size_t hi = std::max(ci, best_j);
    comps[lo] = std::move(merged);
    comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  return side;
}

inline WeightedGraph induced_subgraph(const WeightedGraph& g, const std::vector<Index>& verts) {
  const auto k = static_cast<Index>(verts.size());
  Matrix w(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      w(a, b) = g.weight(verts[static_cast<std::size_t>(a)], verts[static_cast<std::size_t>(b)]);
    }
  }
  return WeightedGraph(std::move(w));
}

}  // namespace detail

/// Greedy bipartite-component growing: repeatedly take the smallest component
/// of the working bipartite forest and attach it, along the heaviest edge
/// class E_j^c, to another component. Disconnected inputs are solved per
/// support component; each component's lowest vertex is put on the +1 side.
///
/// Ties: the smallest component is the one with the lowest vertex among
/// those of minimum size; the heaviest class is the lowest j, then c = 0.
inline GreedyResult find_max_cut_greedy(const WeightedGraph& g) {
  const Index n = g.size();
  Index k = 0;
  const auto label = support_components(g, &k);
  std::vector<std::vector<Index>> groups(static_cast<std::size_t>(k));
  for (Index v = 0; v < n; ++v) groups[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])].push_back(v);

  GreedyResult out;
  std::vector<int> signs(static_cast<std::size_t>(n), 1);
  int iteration = 0;
  for (const auto& verts : groups) {
    const WeightedGraph sub = detail::induced_subgraph(g, verts);
    const auto side = detail::grow_bipartite_components(sub, iteration, out.trace);
    const int flip = side.front() == 0 ? 1 : -1;
    for (std::size_t a = 0; a < verts.size(); ++a) {
      signs[static_cast<std::size_t>(verts[a])] = side[a] == 0 ? flip : -flip;
    }
  }
  out.cut = Cut(std::move(signs));
  return out;
}

struct Applicability {
  /// Whether the chosen component had fewer than gamma nonempty neighbor
  /// classes for both c = 0 and c = 1.
  std::vector<bool> per_iteration;
  bool all = true;
};

/// Evaluates the refined correctness condition along a greedy run. When it
/// holds at every iteration and the input is gamma-stable, the output is the
/// maximum cut.
inline Applicability greedy_applicability(const GreedyResult& run, double gamma) {
  Applicability out;
  for (const MergeStep& s : run.trace) {
    const bool ok = static_cast<double>(s.nonempty_neighbors) < gamma;
    out.per_iteration.push_back(ok);
    out.all = out.all && ok;
  }
  return out;
}

inline Applicability greedy_applicability(const WeightedGraph& g, double gamma) {
  return greedy_applicability(find_max_cut_greedy(g), gamma);
}

inline void require_simple(const WeightedGraph& g) {
  if (!g.is_simple()) throw ValidationError("operation requires a simple (unit-weight) graph");
}

/// Default threshold 2n / δ for the contraction algorithm; +inf when δ = 0.
inline double default_contraction_gamma(const WeightedGraph& g) {
  const DegreeStats d = weighted_degrees(g);
  if (d.min_degree == 0) return kInfinity;
  return 2.0 * static_cast<double>(g.size()) / static_cast<double>(d.min_degree);
}

/// Vertices i and j are adjacent in the result when their neighborhoods
/// share more than min(d_i, d_j) / (gamma + 1) vertices.
inline WeightedGraph build_conflict_graph(const WeightedGraph& g, double gamma) {
  require_simple(g);
  if (!(gamma >= 1.0)) throw DomainError("gamma must be >= 1");
  const Index n = g.size();
  const Matrix adj = g.weights();
  const Matrix common = adj * adj;  // common(i, j) = |N_i ∩ N_j|
  const DegreeStats deg = weighted_degrees(g);
  Matrix h = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dmin = std::min(deg.weighted[static_cast<std::size_t>(i)],
                                   deg.weighted[static_cast<std::size_t>(j)]);
      const double threshold = std::isinf(gamma) ? 0.0 : dmin / (gamma + 1.0);
      if (std::round(common(i, j)) > threshold) {
        h(i, j) = 1.0;
        h(j, i) = 1.0;
      }
    }
  }
  return WeightedGraph(std::move(h));
}

struct ContractionSolveOptions {
  /// Solve the contracted graph exhaustively when it has at most this many
  /// vertices (2^c <= 2^20); otherwise fall back to the greedy algorithm.
  Index exhaustive_limit = 20;
};

struct ContractionSolveResult {
  Cut cut;
  double gamma = 0.0;
  /// Number of components of the conflict graph.
  Index components = 0;
  bool exhaustive = false;
  /// components < gamma, the case the correctness argument covers. When
  /// false the result is heuristic.
  bool within_bound = true;
  /// Cut value found on the contracted graph (equals the lifted value).
  double contracted_value = 0.0;
};

/// Contracts each component of the conflict graph to a single vertex, solves
/// the contracted weighted graph and lifts the cut back.
inline ContractionSolveResult high_degree_solve(const WeightedGraph& g,
                                                std::optional<double> gamma = std::nullopt,
                                                const ContractionSolveOptions& opts = {}) {
  require_simple(g);
  ContractionSolveResult out;
  out.gamma = gamma.value_or(default_contraction_gamma(g));
  const WeightedGraph h = build_conflict_graph(g, out.gamma);
  Index k = 0;
  const auto label = support_components(h, &k);
  out.components = k;
  out.within_bound = static_cast<double>(k) < out.gamma;
  const Contraction con = contract(g, label);

  Cut small;
  if (k <= opts.exhaustive_limit) {
    OracleOptions oracle;
    oracle.max_n = std::max<Index>(opts.exhaustive_limit, 1);
    small = brute_force_max_cut(con.graph, oracle).cut;
    out.exhaustive = true;
  } else {
    small = find_max_cut_greedy(con.graph).cut;
  }
  out.contracted_value = cut_value(con.graph, small);
  out.cut = con.lift(small).canonical();
  return out;
}

}  // namespace stablecut

#endif  // STABLECUT_COMBINATORIAL_HPP
