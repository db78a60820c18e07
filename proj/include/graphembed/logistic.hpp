#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "graphembed/dense.hpp"
#include "graphembed/errors.hpp"

namespace graphembed {

// Linear classifier trained by full-batch gradient descent: multinomial
// softmax in single-label mode, independent one-vs-rest binary logistic in
// multilabel mode.  Zero initialization, fixed iteration count, L2 penalty
// on everything except the bias, and a fixed step chosen once from a power
// iteration bound on the feature Gram spectrum — fully deterministic.
struct LogisticModel {
  DenseMatrix w;  // num_classes × (dim + 1); bias in the last column
  int num_classes = 0;
  bool multilabel = false;
  bool degenerate = false;  // training set contained a single class
  int constant_class = -1;  // the class predicted when degenerate
};

namespace detail {

// Largest eigenvalue of (1/N) X̃ᵀX̃ (bias column included), power iteration.
inline double gram_spectral_bound(const DenseMatrix& x) {
  const std::size_t n = x.rows, d = x.cols + 1;
  std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
  std::vector<double> xv(n), gv(d);
  double lambda = 0.0;
  for (int it = 0; it < 30; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = v[d - 1];  // bias column of X̃ is all ones
      const double* row = x.row(i);
      for (std::size_t j = 0; j + 1 < d; ++j) acc += row[j] * v[j];
      xv[i] = acc;
    }
    std::fill(gv.begin(), gv.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = x.row(i);
      for (std::size_t j = 0; j + 1 < d; ++j) gv[j] += row[j] * xv[i];
      gv[d - 1] += xv[i];
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      gv[j] /= static_cast<double>(n);
      norm += gv[j] * gv[j];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (std::size_t j = 0; j < d; ++j) v[j] = gv[j] / norm;
    lambda = norm;
  }
  return lambda;
}

}  // namespace detail

inline LogisticModel logistic_fit(const DenseMatrix& x,
                                  const std::vector<std::vector<int>>& y,
                                  int num_classes, bool multilabel,
                                  double l2 = 1e-4, int iters = 300) {
  if (x.rows != y.size()) throw ValidationError("feature/label row mismatch");
  if (x.rows == 0) throw ValidationError("cannot fit a classifier on zero rows");
  if (num_classes < 1) throw ValidationError("need at least one class");
  for (double v : x.data)
    if (!std::isfinite(v)) throw ValidationError("non-finite feature value");

  const std::size_t n = x.rows, dim = x.cols, cols = dim + 1;
  LogisticModel model;
  model.num_classes = num_classes;
  model.multilabel = multilabel;
  model.w = DenseMatrix(static_cast<std::size_t>(num_classes), cols);

  if (!multilabel) {
    int first = y[0].empty() ? -1 : y[0][0];
    bool constant = true;
    for (const auto& row : y) {
      if (row.size() != 1) throw ValidationError("single-label fit expects one class per row");
      if (row[0] != first) constant = false;
    }
    if (constant) {
      model.degenerate = true;
      model.constant_class = first;
      return model;
    }
  }

  const double lambda_max = detail::gram_spectral_bound(x);
  // Curvature bounds: 1/4 per logit for the binary loss, 1/2 for softmax.
  const double lips = (multilabel ? 0.25 : 0.5) * lambda_max + l2;
  const double step = lips > 0.0 ? 1.0 / lips : 1.0;

  const std::size_t c_count = static_cast<std::size_t>(num_classes);
  std::vector<double> logits(c_count), probs(c_count);
  DenseMatrix grad(c_count, cols);

  for (int it = 0; it < iters; ++it) {
    std::fill(grad.data.begin(), grad.data.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = x.row(i);
      for (std::size_t c = 0; c < c_count; ++c) {
        const double* wc = model.w.row(c);
        double acc = wc[cols - 1];
        for (std::size_t j = 0; j < dim; ++j) acc += wc[j] * row[j];
        logits[c] = acc;
      }
      if (multilabel) {
        for (std::size_t c = 0; c < c_count; ++c)
          probs[c] = 1.0 / (1.0 + std::exp(-logits[c]));
      } else {
        double mx = *std::max_element(logits.begin(), logits.end());
        double sum = 0.0;
        for (std::size_t c = 0; c < c_count; ++c) {
          probs[c] = std::exp(logits[c] - mx);
          sum += probs[c];
        }
        for (std::size_t c = 0; c < c_count; ++c) probs[c] /= sum;
      }
      for (int cls : y[i]) probs[static_cast<std::size_t>(cls)] -= 1.0;
      for (std::size_t c = 0; c < c_count; ++c) {
        if (probs[c] == 0.0) continue;
        double* gc = grad.row(c);
        for (std::size_t j = 0; j < dim; ++j) gc[j] += probs[c] * row[j];
        gc[cols - 1] += probs[c];
      }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t c = 0; c < c_count; ++c) {
      double* wc = model.w.row(c);
      const double* gc = grad.row(c);
      for (std::size_t j = 0; j < cols; ++j) {
        double g = gc[j] * inv_n;
        if (j + 1 < cols) g += l2 * wc[j];  // bias unpenalized
        wc[j] -= step * g;
      }
    }
  }
  return model;
}

// Single-label: the argmax class (ties to the smaller id), one entry per row.
// Multilabel: every class whose probability clears 0.5 (possibly none).
inline std::vector<std::vector<int>> logistic_predict(const LogisticModel& model,
                                                      const DenseMatrix& x) {
  const std::size_t n = x.rows, dim = x.cols;
  const std::size_t cols = dim + 1;
  std::vector<std::vector<int>> out(n);
  if (model.degenerate) {
    for (auto& row : out) row = {model.constant_class};
    return out;
  }
  const std::size_t c_count = static_cast<std::size_t>(model.num_classes);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = x.row(i);
    double best = 0.0;
    int best_c = 0;
    for (std::size_t c = 0; c < c_count; ++c) {
      const double* wc = model.w.row(c);
      double acc = wc[cols - 1];
      for (std::size_t j = 0; j < dim; ++j) acc += wc[j] * row[j];
      if (model.multilabel) {
        if (acc > 0.0) out[i].push_back(static_cast<int>(c));  // sigmoid > 0.5
      } else if (c == 0 || acc > best) {
        best = acc;
        best_c = static_cast<int>(c);
      }
    }
    if (!model.multilabel) out[i] = {best_c};
  }
  return out;
}

}  // namespace graphembed
