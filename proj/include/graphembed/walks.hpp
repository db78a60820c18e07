#pragma once

#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "graphembed/csr_graph.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/rng.hpp"
#include "graphembed/train.hpp"

namespace graphembed {

// Uniform random-walk corpus for skip-gram training.  Walks are grouped by
// source vertex; each contains at most walk_length vertices starting with the
// source (shorter only when a dead end truncates it).
struct WalkCorpus {
  std::vector<std::vector<VertexId>> walks;
  std::size_t walks_per_vertex = 0;
  std::size_t walk_length = 0;
  std::size_t window = 0;

  std::size_t token_count() const {
    std::size_t t = 0;
    for (const auto& w : walks) t += w.size();
    return t;
  }
};

// walks_per_vertex uniform walks of walk_length vertices from every source.
// Walk (u, k) draws from its own stream, so the corpus is identical for any
// seed regardless of generation order or thread count.
inline WalkCorpus generate_walks(const CsrGraph& g, std::size_t walks_per_vertex,
                                 std::size_t walk_length, std::uint64_t seed,
                                 std::size_t window = 10) {
  if (walk_length < 1) throw ValidationError("walk length must be >= 1");
  if (walks_per_vertex < 1) throw ValidationError("walks per vertex must be >= 1");
  WalkCorpus corpus;
  corpus.walks_per_vertex = walks_per_vertex;
  corpus.walk_length = walk_length;
  corpus.window = window;
  corpus.walks.resize(g.n * walks_per_vertex);

#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t ui = 0; ui < static_cast<std::ptrdiff_t>(g.n); ++ui) {
    const VertexId u = static_cast<VertexId>(ui);
    for (std::size_t k = 0; k < walks_per_vertex; ++k) {
      std::vector<VertexId>& walk = corpus.walks[u * walks_per_vertex + k];
      walk.clear();
      walk.push_back(u);
      RngStream rng(seed, rng_tag::kCorpusWalk, u, k);
      VertexId j = u;
      for (std::size_t step = 1; step < walk_length; ++step) {
        std::size_t deg = g.degree(j);
        if (deg == 0) break;
        j = g.col_ids[g.row_ptr[j] + rng.uniform_index(deg)];
        walk.push_back(j);
      }
    }
  }
  return corpus;
}

}  // namespace graphembed
