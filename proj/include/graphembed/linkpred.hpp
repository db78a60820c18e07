#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "graphembed/csr_graph.hpp"
#include "graphembed/dense.hpp"
#include "graphembed/embedding.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/logistic.hpp"
#include "graphembed/metrics.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

// Edge-feature operators: elementwise product, absolute difference, and
// squared difference of the endpoint embeddings.
enum class LinkOperator { Hadamard, WL1, WL2 };

inline LinkOperator parse_operator(const std::string& name) {
  if (name == "hadamard") return LinkOperator::Hadamard;
  if (name == "wl1") return LinkOperator::WL1;
  if (name == "wl2") return LinkOperator::WL2;
  throw ValidationError("unknown operator \"" + name + "\" (expected hadamard|wl1|wl2)");
}

inline const char* operator_name(LinkOperator op) {
  switch (op) {
    case LinkOperator::Hadamard: return "hadamard";
    case LinkOperator::WL1: return "wl1";
    case LinkOperator::WL2: return "wl2";
  }
  return "?";
}

inline void link_features(LinkOperator op, const double* zi, const double* zj,
                          std::size_t d, double* out) {
  switch (op) {
    case LinkOperator::Hadamard:
      for (std::size_t c = 0; c < d; ++c) out[c] = zi[c] * zj[c];
      break;
    case LinkOperator::WL1:
      for (std::size_t c = 0; c < d; ++c) out[c] = std::abs(zi[c] - zj[c]);
      break;
    case LinkOperator::WL2:
      for (std::size_t c = 0; c < d; ++c) {
        double diff = zi[c] - zj[c];
        out[c] = diff * diff;
      }
      break;
  }
}

// Balanced edge-classification instances: every graph edge is a positive,
// an equal number of verified non-edges are negatives, features come from
// the chosen operator, labels are 1/0.
struct LinkDataset {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  DenseMatrix features;
  std::vector<int> labels;
};

// Split the edge set train_frac/rest, then sample as many distinct non-edges
// (uniformly, with rejection) and split them likewise.  Gives up with an
// error if 100·m rejection draws cannot find enough non-edges (near-complete
// graphs).  Deterministic per seed.
inline std::pair<LinkDataset, LinkDataset> build_link_dataset(const CsrGraph& g,
                                                              const Embedding& z,
                                                              LinkOperator op,
                                                              double train_frac,
                                                              std::uint64_t seed) {
  if (g.m < 2) throw ValidationError("link prediction needs at least two edges");
  if (z.n != g.n) throw ValidationError("embedding does not match graph");
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw ValidationError("train fraction must lie strictly between 0 and 1");

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(g.m);
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e)
      if (g.col_ids[e] > u)
        edges.emplace_back(static_cast<VertexId>(u), g.col_ids[e]);

  RngStream shuffle_rng(seed, rng_tag::kLinkNeg, 0);
  for (std::size_t i = edges.size(); i > 1; --i)
    std::swap(edges[i - 1], edges[shuffle_rng.uniform_index(i)]);

  const std::size_t m = edges.size();
  const std::size_t train_m = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(train_frac * static_cast<double>(m))), 1,
      m - 1);

  // Distinct non-edges, the same count as positives.
  RngStream neg_rng(seed, rng_tag::kLinkNeg, 1);
  std::unordered_set<std::uint64_t> taken;
  std::vector<std::pair<VertexId, VertexId>> negatives;
  negatives.reserve(m);
  const std::size_t max_draws = 100 * m;
  std::size_t draws = 0;
  while (negatives.size() < m) {
    if (draws++ >= max_draws)
      throw ValidationError("could not sample enough non-edges (graph too dense)");
    VertexId a = static_cast<VertexId>(neg_rng.uniform_index(g.n));
    VertexId b = static_cast<VertexId>(neg_rng.uniform_index(g.n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (g.has_edge(a, b)) continue;
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (!taken.insert(key).second) continue;
    negatives.emplace_back(a, b);
  }

  auto assemble = [&](std::size_t pos_lo, std::size_t pos_hi) {
    LinkDataset ds;
    const std::size_t count = pos_hi - pos_lo;
    ds.pairs.reserve(2 * count);
    ds.features = DenseMatrix(2 * count, z.d);
    ds.labels.reserve(2 * count);
    std::size_t row = 0;
    for (std::size_t i = pos_lo; i < pos_hi; ++i, ++row) {
      ds.pairs.push_back(edges[i]);
      link_features(op, z.row(edges[i].first), z.row(edges[i].second), z.d,
                    ds.features.row(row));
      ds.labels.push_back(1);
    }
    for (std::size_t i = pos_lo; i < pos_hi; ++i, ++row) {
      ds.pairs.push_back(negatives[i]);
      link_features(op, z.row(negatives[i].first), z.row(negatives[i].second), z.d,
                    ds.features.row(row));
      ds.labels.push_back(0);
    }
    return ds;
  };

  return {assemble(0, train_m), assemble(train_m, m)};
}

// Full protocol: build the datasets, fit the binary classifier on the train
// half, report accuracy on the held-out half.
inline double link_prediction_accuracy(const CsrGraph& g, const Embedding& z,
                                       LinkOperator op, double train_frac,
                                       std::uint64_t seed) {
  auto [train, test] = build_link_dataset(g, z, op, train_frac, seed);
  std::vector<std::vector<int>> y_train(train.labels.size());
  for (std::size_t i = 0; i < train.labels.size(); ++i) y_train[i] = {train.labels[i]};
  LogisticModel model = logistic_fit(train.features, y_train, 2, /*multilabel=*/false);
  std::vector<std::vector<int>> pred = logistic_predict(model, test.features);
  double correct = 0.0;
  for (std::size_t i = 0; i < test.labels.size(); ++i)
    if (pred[i][0] == test.labels[i]) correct += 1.0;
  return correct / static_cast<double>(test.labels.size());
}

}  // namespace graphembed
