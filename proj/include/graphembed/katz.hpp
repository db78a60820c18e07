#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "graphembed/csr_graph.hpp"
#include "graphembed/dense.hpp"
#include "graphembed/errors.hpp"

namespace graphembed {

// Decayed all-walk-count proximity S = Σ_{l≥1} β^l A^l = (I − βA)^{-1} βA,
// stored dense.  Practical only up to a few tens of thousands of vertices
// (three n×n buffers live while summing the series).
struct ProximityMatrix {
  DenseMatrix S;
  double beta = 0.0;
};

// Largest eigenvalue magnitude of the weighted adjacency, estimated with
// normalized power iterations from the all-ones vector (nonnegative matrices
// keep a positive overlap with the dominant eigenvector).
inline double spectral_radius_estimate(const CsrGraph& g, int iterations = 50) {
  if (g.n == 0) return 0.0;
  std::vector<double> x(g.n, 1.0 / std::sqrt(static_cast<double>(g.n)));
  std::vector<double> y(g.n, 0.0);
  double rho = 0.0;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t u = 0; u < g.n; ++u) {
      double acc = 0.0;
      for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e)
        acc += g.weights[e] * x[g.col_ids[e]];
      y[u] = acc;
    }
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (std::size_t u = 0; u < g.n; ++u) x[u] = y[u] / norm;
    rho = norm;
  }
  return rho;
}

// Truncated Neumann series: terms T_l = β^l A^l accumulate until the latest
// term's max-norm drops below 1e-10, which bounds the distance to the exact
// solve by the remaining geometric tail.  Convergence requires β·ρ(A) < 1.
inline ProximityMatrix katz_proximity(const CsrGraph& g, double beta) {
  if (g.n == 0) throw ValidationError("katz proximity needs a nonempty graph");
  if (!(beta >= 0.0)) throw ValidationError("katz decay beta must be >= 0");

  const double rho = spectral_radius_estimate(g);
  if (beta * rho >= 1.0) {
    throw ValidationError(
        "katz decay beta=" + std::to_string(beta) +
        " too large for convergence: beta * rho >= 1 with estimated spectral radius rho=" +
        std::to_string(rho));
  }

  const std::size_t n = g.n;
  ProximityMatrix out;
  out.beta = beta;
  out.S = DenseMatrix(n, n);
  DenseMatrix term(n, n), next(n, n);

  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e)
      term(u, g.col_ids[e]) = beta * g.weights[e];

  const double tol = 1e-10;
  const int max_terms = 100000;
  for (int l = 0;; ++l) {
    for (std::size_t i = 0; i < out.S.data.size(); ++i) out.S.data[i] += term.data[i];
    if (max_abs(term) < tol) break;
    if (l + 1 >= max_terms)
      throw NumericError("katz series failed to converge within " +
                         std::to_string(max_terms) + " terms");

    // next = beta * A * term, sparse-by-dense row products.
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t ui = 0; ui < static_cast<std::ptrdiff_t>(n); ++ui) {
      const std::size_t u = static_cast<std::size_t>(ui);
      double* dst = next.row(u);
      std::fill(dst, dst + n, 0.0);
      for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e) {
        const double scale = beta * g.weights[e];
        const double* src = term.row(g.col_ids[e]);
        for (std::size_t j = 0; j < n; ++j) dst[j] += scale * src[j];
      }
    }
    std::swap(term.data, next.data);
  }
  return out;
}

}  // namespace graphembed
