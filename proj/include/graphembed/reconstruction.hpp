#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "graphembed/csr_graph.hpp"
#include "graphembed/embedding.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

// Neighborhood recovery score: sample vertices, rank all other vertices by
// cosine similarity to each sampled vertex, and measure what fraction of the
// top-deg(u) ranks are true neighbors; the result is the mean over sampled
// vertices with nonzero degree.  The query vertex itself never competes, and
// zero-norm rows have similarity 0 to everything.
inline double reconstruction_accuracy(const CsrGraph& g, const Embedding& z,
                                      std::size_t sample, std::uint64_t seed) {
  if (sample < 1) throw ValidationError("sample count must be >= 1");
  if (z.n != g.n) throw ValidationError("embedding does not match graph");
  const std::size_t n = g.n, d = z.d;

  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  const std::size_t count = std::min(sample, n);
  RngStream rng(seed, rng_tag::kSample);
  for (std::size_t i = 0; i < count && i + 1 < n; ++i)
    std::swap(ids[i], ids[i + rng.uniform_index(n - i)]);

  std::vector<double> norms(n);
  for (std::size_t v = 0; v < n; ++v) {
    double acc = 0.0;
    const double* row = z.row(v);
    for (std::size_t j = 0; j < d; ++j) acc += row[j] * row[j];
    norms[v] = std::sqrt(acc);
  }

  std::vector<double> scores(count, -1.0);  // -1 marks skipped (isolated) vertices

#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(count); ++si) {
    const std::size_t u = ids[static_cast<std::size_t>(si)];
    const std::size_t k = g.degree(static_cast<VertexId>(u));
    if (k == 0) continue;

    std::vector<double> sim(n, 0.0);
    const double* zu = z.row(u);
    if (norms[u] > 0.0) {
      for (std::size_t v = 0; v < n; ++v) {
        if (norms[v] == 0.0) continue;
        double dot = 0.0;
        const double* zv = z.row(v);
        for (std::size_t j = 0; j < d; ++j) dot += zu[j] * zv[j];
        sim[v] = dot / (norms[u] * norms[v]);
      }
    }

    std::vector<std::size_t> cand;
    cand.reserve(n - 1);
    for (std::size_t v = 0; v < n; ++v)
      if (v != u) cand.push_back(v);
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (sim[a] != sim[b]) return sim[a] > sim[b];
                        return a < b;
                      });

    double hits = 0.0;
    for (std::size_t r = 0; r < k; ++r)
      if (g.has_edge(static_cast<VertexId>(u), static_cast<VertexId>(cand[r])))
        hits += 1.0;
    scores[static_cast<std::size_t>(si)] = hits / static_cast<double>(k);
  }

  double total = 0.0;
  std::size_t scored = 0;
  for (double s : scores) {
    if (s >= 0.0) {
      total += s;
      ++scored;
    }
  }
  if (scored == 0)
    throw ValidationError("every sampled vertex is isolated; reconstruction undefined");
  return total / static_cast<double>(scored);
}

}  // namespace graphembed
