#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "graphembed/embedding.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/gradient_models.hpp"
#include "graphembed/rng.hpp"
#include "graphembed/walks.hpp"

namespace graphembed {

namespace detail {

struct SkipgramPair {
  VertexId target;
  VertexId context;
};

// Sliding-window (target, context) enumeration in a fixed global order:
// walks in corpus order, positions left to right, contexts by ascending
// offset.  The order defines the per-pair negative streams.
inline std::vector<SkipgramPair> enumerate_pairs(const WalkCorpus& corpus) {
  std::vector<SkipgramPair> pairs;
  const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(corpus.window);
  for (const auto& walk : corpus.walks) {
    const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(walk.size());
    for (std::ptrdiff_t i = 0; i < len; ++i) {
      for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - w);
           j < std::min(len, i + w + 1); ++j) {
        if (j == i) continue;
        pairs.push_back({walk[i], walk[j]});
      }
    }
  }
  return pairs;
}

}  // namespace detail

// Two-matrix skip-gram with negative sampling over a walk corpus.  The pair
// kernel is exactly the sigmoid model of gradient_models.hpp (same inline
// code path).  Pairs are processed in fixed batches under the same two-phase
// barrier contract as the force trainer: phase one computes gradient packets
// for a batch of pairs from the coordinates as they stood at batch start,
// phase two applies them in pair order — output is byte-identical for any
// thread count.  The target matrix initializes like the force models; the
// context matrix starts at zero (word-embedding convention).  Returns the
// target matrix.
inline Embedding skipgram_train(const WalkCorpus& corpus, std::size_t n, std::size_t d,
                                std::size_t s, double eta, std::size_t epochs,
                                std::uint64_t seed, int threads = 0) {
  if (corpus.window < 1) throw ValidationError("window must be >= 1");
  if (corpus.window > corpus.walk_length)
    throw ValidationError("window exceeds walk length");
  if (d < 1 || s < 1 || epochs < 1 || !(eta > 0.0))
    throw ValidationError("skip-gram hyper-parameters out of range");
  for (const auto& walk : corpus.walks)
    for (VertexId v : walk)
      if (v >= n) throw ValidationError("walk vertex id out of range");

  Embedding target = init_embedding(n, d, seed);
  Embedding context(n, d);  // zero-initialized

  const std::vector<detail::SkipgramPair> pairs = detail::enumerate_pairs(corpus);
  if (pairs.empty()) return target;

  const std::size_t kPairBatch = 1024;
  const std::size_t batch = std::min(kPairBatch, pairs.size());
  std::vector<double> tgrad(batch * d), cgrad(batch * d), ngrad(batch * s * d);
  std::vector<VertexId> negs(batch * s);
  const int nt = detail::resolve_threads(threads);

  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t base = 0; base < pairs.size(); base += batch) {
      const std::size_t count = std::min(batch, pairs.size() - base);

      // Phase 1: gradient packets only; matrices are read, never written.
#if defined(_OPENMP)
#pragma omp parallel for num_threads(nt) schedule(static)
#endif
      for (std::ptrdiff_t pi = 0; pi < static_cast<std::ptrdiff_t>(count); ++pi) {
        const std::size_t p = base + static_cast<std::size_t>(pi);
        const auto [t, c] = pairs[p];
        const double* zt = target.row(t);
        double* tg = tgrad.data() + pi * d;
        double* cg = cgrad.data() + pi * d;
        std::fill(tg, tg + d, 0.0);
        std::fill(cg, cg + d, 0.0);
        add_attractive_gradient(Model::Sigmoid, zt, context.row(c), d, tg);
        add_attractive_gradient(Model::Sigmoid, context.row(c), zt, d, cg);
        RngStream rng(seed, rng_tag::kSkipNeg, epoch, p);
        for (std::size_t i = 0; i < s; ++i) {
          const VertexId v = static_cast<VertexId>(rng.uniform_index(n));
          negs[pi * s + i] = v;
          double* ng = ngrad.data() + (pi * s + i) * d;
          std::fill(ng, ng + d, 0.0);
          add_repulsive_gradient(Model::Sigmoid, zt, context.row(v), d, tg);
          add_repulsive_gradient(Model::Sigmoid, context.row(v), zt, d, ng);
        }
      }

      // Phase 2: apply packets sequentially in pair order.
      for (std::size_t pi = 0; pi < count; ++pi) {
        const auto [t, c] = pairs[base + pi];
        double* zt = target.row(t);
        double* zc = context.row(c);
        const double* tg = tgrad.data() + pi * d;
        const double* cg = cgrad.data() + pi * d;
        for (std::size_t j = 0; j < d; ++j) zt[j] -= eta * tg[j];
        for (std::size_t j = 0; j < d; ++j) zc[j] -= eta * cg[j];
        for (std::size_t i = 0; i < s; ++i) {
          double* zn = context.row(negs[pi * s + i]);
          const double* ng = ngrad.data() + (pi * s + i) * d;
          for (std::size_t j = 0; j < d; ++j) zn[j] -= eta * ng[j];
        }
      }
    }
  }
  return target;
}

// DeepWalk-style pipeline: corpus generation plus skip-gram.
inline Embedding deepwalk_embed(const CsrGraph& g, std::size_t walks_per_vertex,
                                std::size_t walk_length, std::size_t window,
                                std::size_t d, std::size_t s, double eta,
                                std::size_t epochs, std::uint64_t seed,
                                int threads = 0) {
  WalkCorpus corpus = generate_walks(g, walks_per_vertex, walk_length, seed, window);
  return skipgram_train(corpus, g.n, d, s, eta, epochs, seed, threads);
}

}  // namespace graphembed
