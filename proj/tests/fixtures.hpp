#ifndef STABLECUT_TESTS_FIXTURES_HPP
#define STABLECUT_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "reference_oracles.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/graph.hpp"

namespace fixtures {

using stablecut::Index;
using stablecut::WeightedGraph;

inline WeightedGraph k2() { return WeightedGraph::from_edges(2, {{0, 1, 1.0}}); }

/// w01 = 2, w12 = 3, w02 = 1.
inline WeightedGraph triangle() {
  return WeightedGraph::from_edges(3, {{0, 1, 2.0}, {1, 2, 3.0}, {0, 2, 1.0}});
}

inline WeightedGraph unit_triangle() {
  return WeightedGraph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
}

inline WeightedGraph c4() {
  return WeightedGraph::from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
}

inline WeightedGraph p3() { return WeightedGraph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }

inline WeightedGraph complete(Index n) {
  stablecut::Matrix w = stablecut::Matrix::Ones(n, n);
  w.diagonal().setZero();
  return WeightedGraph(w);
}

/// Sides {0..m-1} and {m..2m-1}.
inline WeightedGraph complete_bipartite(Index m) {
  stablecut::Matrix w = stablecut::Matrix::Zero(2 * m, 2 * m);
  w.topRightCorner(m, m).setOnes();
  w.bottomLeftCorner(m, m).setOnes();
  return WeightedGraph(w);
}

/// K_{m,m} without the edges (i, m + i).
inline WeightedGraph complete_bipartite_minus_matching(Index m) {
  stablecut::Matrix w = complete_bipartite(m).weights();
  for (Index i = 0; i < m; ++i) {
    w(i, m + i) = 0.0;
    w(m + i, i) = 0.0;
  }
  return WeightedGraph(w);
}

inline WeightedGraph star(Index leaves) {
  stablecut::Matrix w = stablecut::Matrix::Zero(leaves + 1, leaves + 1);
  for (Index i = 1; i <= leaves; ++i) {
    w(0, i) = 1.0;
    w(i, 0) = 1.0;
  }
  return WeightedGraph(w);
}

inline reference::Weights to_reference(const WeightedGraph& g) {
  reference::Weights w(static_cast<std::size_t>(g.size()), std::vector<double>(static_cast<std::size_t>(g.size())));
  for (Index i = 0; i < g.size(); ++i) {
    for (Index j = 0; j < g.size(); ++j) w[i][j] = g.weight(i, j);
  }
  return w;
}

inline stablecut::Cut reference_cut(Index n, std::uint64_t mask) {
  return stablecut::Cut::from_mask(n, mask).canonical();
}

/// Random weighted graph with uniform(0.5, 1.5) weights, used as a generic
/// corpus.
inline WeightedGraph random_weighted(Index n, double p, std::uint64_t seed) {
  return stablecut::gen_gnp_weighted(n, p, stablecut::WeightDistribution::uniform(0.5, 1.5), seed);
}

/// Random bipartite simple graph: sides are chosen by a seeded coin and
/// edges across sides appear with probability p. The result may be
/// disconnected; callers filter.
inline WeightedGraph random_bipartite(Index n, double p, std::uint64_t seed, std::vector<int>* sides) {
  auto rng = stablecut::make_stream(seed, stablecut::StreamTag::kPartition, 0);
  std::vector<int> s(static_cast<std::size_t>(n));
  for (auto& x : s) x = rng.uniform01() < 0.5 ? 1 : -1;
  stablecut::Matrix w = stablecut::Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (s[i] != s[j] && rng.uniform01() < p) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
    }
  }
  if (sides) *sides = s;
  return WeightedGraph(w);
}

}  // namespace fixtures

#endif  // STABLECUT_TESTS_FIXTURES_HPP
