#pragma once

// Shared fixtures for the test suite: tiny canonical graphs, a reference
// mt19937 wrapper for test-local randomness (independent of the library's
// own streams), and small numeric helpers.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <graphembed/graphembed.hpp>

namespace testutil {

using namespace graphembed;

// Path 0-1-2.
inline CsrGraph path3() {
  return graph_from_edges(3, std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}});
}

// Two disjoint triangles {0,1,2} and {3,4,5}.
inline CsrGraph two_triangles() {
  return graph_from_edges(6, std::vector<std::pair<VertexId, VertexId>>{
                                 {0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

// k disjoint cliques of size c, vertices block-contiguous.
inline CsrGraph disjoint_cliques(std::size_t k, std::size_t c) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = i + 1; j < c; ++j)
        edges.emplace_back(static_cast<VertexId>(b * c + i),
                           static_cast<VertexId>(b * c + j));
  return graph_from_edges(k * c, edges);
}

// Erdos-Renyi-ish random graph from a test-local generator; guarantees at
// least a spanning chain so no vertex is isolated unless allow_isolated.
inline CsrGraph random_graph(std::size_t n, double p, std::uint64_t seed,
                             bool allow_isolated = true) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (unif(gen) < p) edges.emplace_back(u, v);
  if (!allow_isolated)
    for (std::size_t u = 0; u + 1 < n; ++u)
      edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(u + 1));
  return graph_from_edges(n, edges);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double cosine(const double* a, const double* b, std::size_t d) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t c = 0; c < d; ++c) {
    dot += a[c] * b[c];
    na += a[c] * a[c];
    nb += b[c] * b[c];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Random embedding with entries in [-r, r] from a test-local generator.
inline Embedding random_embedding(std::size_t n, std::size_t d, double r,
                                  std::uint64_t seed) {
  Embedding z(n, d);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(-r, r);
  for (double& v : z.data) v = unif(gen);
  return z;
}

}  // namespace testutil
