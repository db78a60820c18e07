#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "graphembed/csr_graph.hpp"
#include "graphembed/errors.hpp"

namespace graphembed {

struct Metrics {
  double accuracy = 0.0;
  double f1_micro = 0.0;
  double f1_macro = 0.0;
};

// Accuracy plus micro/macro F1.  Single-label mode: accuracy is the correct
// fraction, micro counts pool per-vertex TP/FP/FN (so micro-F1 equals
// accuracy when every vertex gets exactly one prediction), macro averages
// per-class F1 over all classes with F1 = 0 for classes that never occur.
// Multilabel mode pools per-(vertex,class) binary decisions, including true
// negatives for the accuracy term.
inline Metrics classification_metrics(const std::vector<std::vector<int>>& y_true,
                                      const std::vector<std::vector<int>>& y_pred,
                                      int num_classes, bool multilabel) {
  if (y_true.size() != y_pred.size())
    throw ValidationError("prediction/label length mismatch");
  if (y_true.empty()) throw ValidationError("cannot score an empty set");
  const std::size_t n = y_true.size();
  const std::size_t c_count = static_cast<std::size_t>(num_classes);

  std::vector<double> tp(c_count, 0.0), fp(c_count, 0.0), fn(c_count, 0.0);
  double tn_total = 0.0;
  double exact = 0.0;

  std::vector<char> t_mask(c_count), p_mask(c_count);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(t_mask.begin(), t_mask.end(), 0);
    std::fill(p_mask.begin(), p_mask.end(), 0);
    for (int c : y_true[i]) t_mask[static_cast<std::size_t>(c)] = 1;
    for (int c : y_pred[i]) p_mask[static_cast<std::size_t>(c)] = 1;
    bool all_equal = true;
    for (std::size_t c = 0; c < c_count; ++c) {
      if (t_mask[c] && p_mask[c]) tp[c] += 1.0;
      else if (!t_mask[c] && p_mask[c]) fp[c] += 1.0;
      else if (t_mask[c] && !p_mask[c]) fn[c] += 1.0;
      else tn_total += 1.0;
      if (t_mask[c] != p_mask[c]) all_equal = false;
    }
    if (all_equal) exact += 1.0;
  }

  double tp_sum = 0.0, fp_sum = 0.0, fn_sum = 0.0;
  double macro = 0.0;
  for (std::size_t c = 0; c < c_count; ++c) {
    tp_sum += tp[c];
    fp_sum += fp[c];
    fn_sum += fn[c];
    double denom = 2.0 * tp[c] + fp[c] + fn[c];
    macro += denom > 0.0 ? 2.0 * tp[c] / denom : 0.0;
  }
  macro /= static_cast<double>(c_count);

  Metrics out;
  double micro_denom = 2.0 * tp_sum + fp_sum + fn_sum;
  out.f1_micro = micro_denom > 0.0 ? 2.0 * tp_sum / micro_denom : 0.0;
  out.f1_macro = macro;
  if (multilabel) {
    out.accuracy =
        (tp_sum + tn_total) / static_cast<double>(n * c_count);
  } else {
    out.accuracy = exact / static_cast<double>(n);
  }
  return out;
}

// Newman modularity of a clustering: the within-cluster share of edge weight
// minus its expectation under the degree-preserving null model.  Computed
// from one pass over arcs plus per-cluster degree sums, O(n + m).
inline double modularity(const CsrGraph& g, const std::vector<int>& clusters) {
  if (clusters.size() != g.n)
    throw ValidationError("cluster assignment must cover every vertex");
  if (g.m == 0) throw ValidationError("modularity is undefined on an edgeless graph");

  int max_id = 0;
  for (int c : clusters) {
    if (c < 0) throw ValidationError("cluster ids must be nonnegative");
    max_id = std::max(max_id, c);
  }
  const std::size_t k = static_cast<std::size_t>(max_id) + 1;

  const double total = g.total_arc_weight();  // = 2 · (sum of edge weights)
  std::vector<double> intra(k, 0.0);          // within-cluster arc weight
  std::vector<double> degsum(k, 0.0);         // weighted degree mass

  for (std::size_t u = 0; u < g.n; ++u) {
    const std::size_t cu = static_cast<std::size_t>(clusters[u]);
    for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e) {
      degsum[cu] += g.weights[e];
      if (static_cast<std::size_t>(clusters[g.col_ids[e]]) == cu)
        intra[cu] += g.weights[e];
    }
  }

  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double frac = degsum[c] / total;
    q += intra[c] / total - frac * frac;
  }
  return q;
}

}  // namespace graphembed
