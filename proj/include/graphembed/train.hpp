#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "graphembed/csr_graph.hpp"
#include "graphembed/embedding.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/gradient_models.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

struct TrainConfig {
  Model model = Model::TDist;
  std::size_t dim = 128;
  double lr = 0.02;
  std::size_t negatives = 5;    // negative samples per draw
  std::size_t batch_size = 256; // vertices updated per barrier
  std::size_t iterations = 600; // outer iterations
  std::size_t walk_length = 80; // walk-variant only: vertices visited per walk
  std::uint64_t seed = 42;
  int threads = 0;              // 0 = library default
  bool lr_decay = false;        // optional linear decay of lr to ~0 over the run

  void validate() const {
    if (dim < 1) throw ValidationError("dim must be >= 1");
    if (!(lr > 0.0)) throw ValidationError("learning rate must be > 0");
    if (negatives < 1) throw ValidationError("negative sample count must be >= 1");
    if (batch_size < 1) throw ValidationError("batch size must be >= 1");
    if (iterations < 1) throw ValidationError("iteration count must be >= 1");
    if (walk_length < 1) throw ValidationError("walk length must be >= 1");
  }
};

// s i.i.d. uniform draws over [0, n), with replacement; true neighbors are
// deliberately not filtered out.
inline std::vector<VertexId> sample_negatives(std::size_t s, std::size_t n,
                                              RngStream& rng) {
  std::vector<VertexId> out(s);
  for (std::size_t i = 0; i < s; ++i)
    out[i] = static_cast<VertexId>(rng.uniform_index(n));
  return out;
}

namespace detail {

inline int resolve_threads(int requested) {
#if defined(_OPENMP)
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

// One uniform random walk: from u, take up to steps neighbor jumps, recording
// each visited vertex.  A dead end (isolated vertex) ends the walk early.
inline void random_walk(const CsrGraph& g, VertexId u, std::size_t steps,
                        RngStream& rng, std::vector<VertexId>& out) {
  out.clear();
  VertexId j = u;
  for (std::size_t step = 0; step < steps; ++step) {
    std::size_t deg = g.degree(j);
    if (deg == 0) break;
    j = g.col_ids[g.row_ptr[j] + rng.uniform_index(deg)];
    out.push_back(j);
  }
}

// Shared minibatch descent.  Two phases per batch: (1) every batch member's
// force is accumulated from coordinates as they stood when the batch began
// (no writes happen during this phase), (2) all members step at once.  Each
// vertex's accumulation runs on a single thread in a fixed order (CSR
// neighbors, then negatives in draw order), so the result is bit-identical
// for any thread count.  `use_walks` switches the attractive term from the
// neighbor list to a fresh per-vertex random walk, and moves the negative
// draw from once-per-batch to once-per-iteration.
inline Embedding train_core(const CsrGraph& g, const TrainConfig& cfg, Embedding z,
                            bool use_walks) {
  cfg.validate();
  if (g.n == 0) throw ValidationError("cannot train on an empty graph");
  if (z.n != g.n || z.d != cfg.dim)
    throw ValidationError("initial embedding shape does not match graph/config");

  const std::size_t n = g.n, d = cfg.dim, B = cfg.batch_size;
  const std::size_t batches = (n + B - 1) / B;
  const int threads = detail::resolve_threads(cfg.threads);
  const std::size_t walk_steps = cfg.walk_length - 1;

  std::vector<double> force(std::min(B, n) * d);
  std::vector<VertexId> negatives;
  std::vector<double> neg_coords;  // coordinates snapshotted at draw time
  std::vector<unsigned char> bad(std::min(B, n), 0);

  auto snapshot_negatives = [&](RngStream&& rng) {
    negatives = sample_negatives(cfg.negatives, n, rng);
    neg_coords.resize(negatives.size() * d);
    for (std::size_t i = 0; i < negatives.size(); ++i)
      std::copy(z.row(negatives[i]), z.row(negatives[i]) + d, neg_coords.data() + i * d);
  };

  for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
    const double eta =
        cfg.lr_decay
            ? cfg.lr * (1.0 - static_cast<double>(iter) / static_cast<double>(cfg.iterations))
            : cfg.lr;
    if (use_walks)
      snapshot_negatives(RngStream(cfg.seed, rng_tag::kNegIter, iter));

    for (std::size_t b = 0; b < batches; ++b) {
      const std::size_t lo = b * B, hi = std::min(n, lo + B);
      if (!use_walks)
        snapshot_negatives(RngStream(cfg.seed, rng_tag::kNegBatch, iter, b));

      // Phase 1: forces only; z is read, never written.
#if defined(_OPENMP)
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
      for (std::ptrdiff_t ui = static_cast<std::ptrdiff_t>(lo);
           ui < static_cast<std::ptrdiff_t>(hi); ++ui) {
        const VertexId u = static_cast<VertexId>(ui);
        double* f = force.data() + (u - lo) * d;
        std::fill(f, f + d, 0.0);
        const double* zu = z.row(u);
        if (use_walks) {
          std::vector<VertexId> walk;
          RngStream wrng(cfg.seed, rng_tag::kWalk, iter, u);
          detail::random_walk(g, u, walk_steps, wrng, walk);
          for (VertexId v : walk)
            add_attractive_gradient(cfg.model, zu, z.row(v), d, f);
        } else {
          for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e)
            add_attractive_gradient(cfg.model, zu, z.row(g.col_ids[e]), d, f,
                                    g.weights[e]);
        }
        for (std::size_t i = 0; i < negatives.size(); ++i)
          add_repulsive_gradient(cfg.model, zu, neg_coords.data() + i * d, d, f);
      }

      // Phase 2: apply the steps; rows are disjoint.
#if defined(_OPENMP)
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
      for (std::ptrdiff_t ui = static_cast<std::ptrdiff_t>(lo);
           ui < static_cast<std::ptrdiff_t>(hi); ++ui) {
        const VertexId u = static_cast<VertexId>(ui);
        const double* f = force.data() + (u - lo) * d;
        double* zu = z.row(u);
        unsigned char ok = 1;
        for (std::size_t j = 0; j < d; ++j) {
          zu[j] -= eta * f[j];
          if (!std::isfinite(zu[j])) ok = 0;
        }
        bad[u - lo] = static_cast<unsigned char>(1 - ok);
      }
      for (std::size_t i = lo; i < hi; ++i) {
        if (bad[i - lo]) {
          throw NumericError("non-finite coordinate during update at iteration " +
                             std::to_string(iter) + ", vertex " +
                             std::to_string(g.orig_ids[i]));
        }
      }
    }
  }
  return z;
}

}  // namespace detail

// Minibatch force training over the neighbor lists; fresh negatives per batch.
inline Embedding train_from(const CsrGraph& g, const TrainConfig& cfg, Embedding initial) {
  return detail::train_core(g, cfg, std::move(initial), /*use_walks=*/false);
}

inline Embedding train(const CsrGraph& g, const TrainConfig& cfg) {
  return train_from(g, cfg, init_embedding(g.n, cfg.dim, cfg.seed));
}

// Walk variant: the attractive neighborhood of u is a fresh uniform random
// walk of cfg.walk_length − 1 jumps from u; one negative set per iteration.
inline Embedding train_walk_from(const CsrGraph& g, const TrainConfig& cfg,
                                 Embedding initial) {
  return detail::train_core(g, cfg, std::move(initial), /*use_walks=*/true);
}

inline Embedding train_walk(const CsrGraph& g, const TrainConfig& cfg) {
  return train_walk_from(g, cfg, init_embedding(g.n, cfg.dim, cfg.seed));
}

// Full objective value: weighted attractive terms over every arc plus, for
// every vertex, repulsive terms against the supplied negative list.
inline double compute_loss(const CsrGraph& g, const Embedding& z, Model model,
                           const std::vector<VertexId>& negatives) {
  if (negatives.empty()) throw ValidationError("negative list must be nonempty");
  if (z.n != g.n) throw ValidationError("embedding does not match graph");
  double total = 0.0;
  for (std::size_t u = 0; u < g.n; ++u) {
    const double* zu = z.row(u);
    for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e)
      total += g.weights[e] * attractive_loss(model, zu, z.row(g.col_ids[e]), z.d);
    for (VertexId v : negatives)
      total += repulsive_loss(model, zu, z.row(v), z.d);
  }
  return total;
}

}  // namespace graphembed
