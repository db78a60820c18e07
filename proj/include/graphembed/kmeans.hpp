#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "graphembed/csr_graph.hpp"
#include "graphembed/embedding.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/metrics.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

namespace detail {

inline double sqdist(const double* a, const double* b, std::size_t d) {
  double acc = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double diff = a[j] - b[j];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace detail

// Lloyd iterations with distance-squared-weighted seeding: the first center
// is uniform, each further center is drawn with probability proportional to
// the squared distance from the nearest chosen center.  Assignment ties go
// to the lower center index; an emptied cluster is reseeded to the point
// farthest from its current center.  Stops after max_iter rounds or when no
// centroid moves more than 1e-8.
inline std::vector<int> kmeans(const Embedding& z, std::size_t k, std::uint64_t seed,
                               std::size_t max_iter = 100) {
  const std::size_t n = z.n, d = z.d;
  if (k < 1) throw ValidationError("k must be >= 1");
  if (k > n) throw ValidationError("k exceeds the number of points");

  RngStream rng(seed, rng_tag::kKmeans);
  std::vector<double> centers(k * d);
  std::vector<double> nearest(n, std::numeric_limits<double>::max());

  // Seeding.
  {
    std::size_t first = rng.uniform_index(n);
    std::copy(z.row(first), z.row(first) + d, centers.data());
    for (std::size_t i = 0; i < n; ++i)
      nearest[i] = detail::sqdist(z.row(i), centers.data(), d);
    for (std::size_t c = 1; c < k; ++c) {
      double total = 0.0;
      for (double v : nearest) total += v;
      std::size_t pick;
      if (total > 0.0) {
        double r = rng.next_double() * total;
        double acc = 0.0;
        pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          acc += nearest[i];
          if (r < acc) {
            pick = i;
            break;
          }
        }
      } else {
        pick = rng.uniform_index(n);  // all points coincide with a center
      }
      std::copy(z.row(pick), z.row(pick) + d, centers.data() + c * d);
      for (std::size_t i = 0; i < n; ++i)
        nearest[i] = std::min(nearest[i],
                              detail::sqdist(z.row(i), centers.data() + c * d, d));
    }
  }

  std::vector<int> assign(n, 0);
  std::vector<double> sums(k * d);
  std::vector<std::size_t> counts(k);

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      double best = detail::sqdist(z.row(i), centers.data(), d);
      int best_c = 0;
      for (std::size_t c = 1; c < k; ++c) {
        double dist = detail::sqdist(z.row(i), centers.data() + c * d, d);
        if (dist < best) {
          best = dist;
          best_c = static_cast<int>(c);
        }
      }
      assign[i] = best_c;
    }

    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      double* s = sums.data() + static_cast<std::size_t>(assign[i]) * d;
      const double* p = z.row(i);
      for (std::size_t j = 0; j < d; ++j) s[j] += p[j];
      ++counts[static_cast<std::size_t>(assign[i])];
    }

    double max_move_sq = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      double* center = centers.data() + c * d;
      if (counts[c] == 0) {
        // Reseed to the globally farthest point from its own center.
        double far_dist = -1.0;
        std::size_t far_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
          double dist = detail::sqdist(
              z.row(i), centers.data() + static_cast<std::size_t>(assign[i]) * d, d);
          if (dist > far_dist) {
            far_dist = dist;
            far_i = i;
          }
        }
        max_move_sq = std::max(max_move_sq, detail::sqdist(center, z.row(far_i), d));
        std::copy(z.row(far_i), z.row(far_i) + d, center);
        continue;
      }
      double move = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        double next = sums[c * d + j] / static_cast<double>(counts[c]);
        double diff = next - center[j];
        move += diff * diff;
        center[j] = next;
      }
      max_move_sq = std::max(max_move_sq, move);
    }
    if (max_move_sq < 1e-8 * 1e-8) break;
  }

  // Final assignment against the settled centers.
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    double best = detail::sqdist(z.row(i), centers.data(), d);
    int best_c = 0;
    for (std::size_t c = 1; c < k; ++c) {
      double dist = detail::sqdist(z.row(i), centers.data() + c * d, d);
      if (dist < best) {
        best = dist;
        best_c = static_cast<int>(c);
      }
    }
    assign[i] = best_c;
  }
  return assign;
}

// Within-cluster sum of squared distances to the cluster means (the Lloyd
// objective), used by tests to check monotone improvement.
inline double kmeans_wcss(const Embedding& z, const std::vector<int>& assign) {
  if (assign.size() != z.n) throw ValidationError("assignment size mismatch");
  int k = 0;
  for (int c : assign) k = std::max(k, c + 1);
  std::vector<double> sums(static_cast<std::size_t>(k) * z.d, 0.0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < z.n; ++i) {
    double* s = sums.data() + static_cast<std::size_t>(assign[i]) * z.d;
    for (std::size_t j = 0; j < z.d; ++j) s[j] += z.row(i)[j];
    ++counts[static_cast<std::size_t>(assign[i])];
  }
  for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c)
    if (counts[c] > 0)
      for (std::size_t j = 0; j < z.d; ++j)
        sums[c * z.d + j] /= static_cast<double>(counts[c]);
  double acc = 0.0;
  for (std::size_t i = 0; i < z.n; ++i)
    acc += detail::sqdist(z.row(i), sums.data() + static_cast<std::size_t>(assign[i]) * z.d,
                          z.d);
  return acc;
}

struct SweepResult {
  std::size_t best_k = 0;
  double best_q = 0.0;
  std::vector<int> clusters;
};

// Try every k in [k_min, k_max], score each clustering by modularity, keep
// the best; ties resolve to the smaller k.
inline SweepResult cluster_sweep(const CsrGraph& g, const Embedding& z,
                                 std::size_t k_min, std::size_t k_max,
                                 std::uint64_t seed) {
  if (k_min < 1 || k_min > k_max) throw ValidationError("bad k range");
  SweepResult best;
  bool have = false;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    std::vector<int> ids = kmeans(z, k, seed);
    double q = modularity(g, ids);
    if (!have || q > best.best_q) {
      have = true;
      best.best_k = k;
      best.best_q = q;
      best.clusters = std::move(ids);
    }
  }
  return best;
}

}  // namespace graphembed
