#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "graphembed/dense.hpp"
#include "graphembed/embedding.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/katz.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

namespace detail {

// Modified Gram-Schmidt on columns, two passes for stability.  Columns that
// collapse numerically are zeroed (the matrix may be rank-deficient).
inline void orthonormalize_columns(DenseMatrix& y) {
  const std::size_t n = y.rows, p = y.cols;
  for (std::size_t j = 0; j < p; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        double r = 0.0;
        for (std::size_t row = 0; row < n; ++row) r += y(row, i) * y(row, j);
        for (std::size_t row = 0; row < n; ++row) y(row, j) -= r * y(row, i);
      }
    }
    double norm = 0.0;
    for (std::size_t row = 0; row < n; ++row) norm += y(row, j) * y(row, j);
    norm = std::sqrt(norm);
    if (norm > 1e-154) {
      for (std::size_t row = 0; row < n; ++row) y(row, j) /= norm;
    } else {
      for (std::size_t row = 0; row < n; ++row) y(row, j) = 0.0;
    }
  }
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix.  Returns
// eigenvalues in descending order; the columns of vecs are the matching
// eigenvectors.
inline std::vector<double> jacobi_eigh_desc(DenseMatrix a, DenseMatrix& vecs) {
  const std::size_t p = a.rows;
  vecs = DenseMatrix(p, p);
  for (std::size_t i = 0; i < p; ++i) vecs(i, i) = 1.0;

  const double frob = frobenius_norm(a);
  const double stop = std::max(1e-14 * frob, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(off) <= stop) break;

    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        const double apq = a(i, j);
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (a(j, j) - a(i, i)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < p; ++k) {
          const double aki = a(k, i), akj = a(k, j);
          a(k, i) = c * aki - s * akj;
          a(k, j) = s * aki + c * akj;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double aik = a(i, k), ajk = a(j, k);
          a(i, k) = c * aik - s * ajk;
          a(j, k) = s * aik + c * ajk;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double vki = vecs(k, i), vkj = vecs(k, j);
          vecs(k, i) = c * vki - s * vkj;
          vecs(k, j) = s * vki + c * vkj;
        }
      }
    }
  }

  std::vector<double> eig(p);
  for (std::size_t i = 0; i < p; ++i) eig[i] = a(i, i);
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return eig[x] > eig[y]; });
  std::vector<double> sorted(p);
  DenseMatrix vsorted(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    sorted[j] = eig[order[j]];
    for (std::size_t i = 0; i < p; ++i) vsorted(i, j) = vecs(i, order[j]);
  }
  vecs = std::move(vsorted);
  return sorted;
}

}  // namespace detail

struct SvdResult {
  DenseMatrix u;              // n×k, left singular vectors
  DenseMatrix v;              // n×k, right singular vectors
  std::vector<double> sigma;  // k singular values, descending
};

// Rank-k truncated SVD of a square matrix by randomized subspace iteration:
// Gaussian sketch with 8 oversampling columns, 4 power steps with
// re-orthonormalization, then an exact small eigensolve of B·Bᵀ where
// B = YᵀS.  Deterministic for a fixed seed.
inline SvdResult randomized_svd(const DenseMatrix& s, std::size_t k, std::uint64_t seed) {
  if (s.rows != s.cols) throw ValidationError("randomized svd expects a square matrix");
  const std::size_t n = s.rows;
  if (k < 1 || k > n) throw ValidationError("svd rank must be in [1, n]");
  const std::size_t p = std::min(n, k + 8);

  DenseMatrix omega(n, p);
  RngStream rng(seed, rng_tag::kGauss);
  for (double& v : omega.data) v = rng.next_gaussian();

  const DenseMatrix st = transpose(s);
  DenseMatrix y = matmul(s, omega);
  detail::orthonormalize_columns(y);
  for (int step = 0; step < 4; ++step) {
    DenseMatrix z = matmul(st, y);
    detail::orthonormalize_columns(z);
    y = matmul(s, z);
    detail::orthonormalize_columns(y);
  }

  DenseMatrix b = matmul(transpose(y), s);    // p×n
  DenseMatrix gram = matmul(b, transpose(b)); // p×p, symmetric PSD
  DenseMatrix w;
  std::vector<double> lambda = detail::jacobi_eigh_desc(std::move(gram), w);

  SvdResult out;
  out.sigma.resize(k);
  out.u = DenseMatrix(n, k);
  out.v = DenseMatrix(n, k);
  double sigma_max = lambda.empty() ? 0.0 : std::sqrt(std::max(lambda[0], 0.0));
  DenseMatrix bt = transpose(b);  // n×p
  for (std::size_t j = 0; j < k; ++j) {
    const double sig = std::sqrt(std::max(lambda[j], 0.0));
    out.sigma[j] = sig;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t c = 0; c < p; ++c) acc += y(i, c) * w(c, j);
      out.u(i, j) = acc;
    }
    if (sig > 1e-13 * std::max(sigma_max, 1e-300)) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < p; ++c) acc += bt(i, c) * w(c, j);
        out.v(i, j) = acc / sig;
      }
    }  // else: negligible singular value, right vector left at zero
  }
  return out;
}

// Katz-proximity factorization: S ≈ U_s·U_tᵀ with U_s = U·√Σ, U_t = V·√Σ.
// Downstream consumers use the source embedding U_s.
inline std::pair<Embedding, Embedding> hope_embed(const ProximityMatrix& prox,
                                                  std::size_t d,
                                                  std::uint64_t seed = 42) {
  const std::size_t n = prox.S.rows;
  if (d > n)
    throw ValidationError("hope dimension d=" + std::to_string(d) +
                          " exceeds vertex count n=" + std::to_string(n));
  SvdResult svd = randomized_svd(prox.S, d, seed);
  Embedding us(n, d), ut(n, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double root = std::sqrt(std::max(svd.sigma[j], 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      us.row(i)[j] = svd.u(i, j) * root;
      ut.row(i)[j] = svd.v(i, j) * root;
    }
  }
  return {std::move(us), std::move(ut)};
}

// Frobenius distance between S and the rank-d reconstruction U_s·U_tᵀ.
inline double factorization_residual(const DenseMatrix& s, const Embedding& us,
                                     const Embedding& ut) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.rows; ++i) {
    for (std::size_t j = 0; j < s.cols; ++j) {
      double r = s(i, j);
      const double* a = us.row(i);
      const double* b = ut.row(j);
      for (std::size_t c = 0; c < us.d; ++c) r -= a[c] * b[c];
      acc += r * r;
    }
  }
  return std::sqrt(acc);
}

}  // namespace graphembed
