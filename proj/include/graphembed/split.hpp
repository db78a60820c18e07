#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <utility>
#include <vector>

#include "graphembed/errors.hpp"
#include "graphembed/labels.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

namespace detail {

// Choose `take` distinct elements from pool by partial Fisher-Yates; the
// chosen prefix and the remainder keep deterministic (sorted) order.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> pick(
    std::vector<std::size_t> pool, std::size_t take, RngStream& rng) {
  for (std::size_t i = 0; i < take && i + 1 < pool.size(); ++i) {
    std::size_t j = i + rng.uniform_index(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> chosen(pool.begin(), pool.begin() + take);
  std::vector<std::size_t> rest(pool.begin() + take, pool.end());
  std::sort(chosen.begin(), chosen.end());
  std::sort(rest.begin(), rest.end());
  return {std::move(chosen), std::move(rest)};
}

}  // namespace detail

// Train/test split over labeled vertices.  Single-label mode stratifies:
// the train side totals ceil(train_frac * labeled) with per-class quotas by
// largest remainder, and every class with at least two members keeps at
// least one vertex on each side.  A single-member class cannot be
// stratified; its vertex goes to train with a warning.  Multilabel mode
// splits uniformly.  Deterministic for a fixed seed.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_labeled(
    const LabelSet& ls, double train_frac, std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw ValidationError("train fraction must lie strictly between 0 and 1");

  std::vector<std::size_t> labeled;
  for (std::size_t u = 0; u < ls.labels.size(); ++u)
    if (ls.labeled(u)) labeled.push_back(u);
  if (labeled.size() < 2)
    throw ValidationError("need at least two labeled vertices to split");

  const std::size_t want_train = static_cast<std::size_t>(
      std::ceil(train_frac * static_cast<double>(labeled.size())));

  if (ls.multilabel) {
    RngStream rng(seed, rng_tag::kSplit);
    std::size_t take = std::clamp<std::size_t>(want_train, 1, labeled.size() - 1);
    return detail::pick(std::move(labeled), take, rng);
  }

  // Group by (single) class.
  std::vector<std::vector<std::size_t>> members(ls.num_classes);
  for (std::size_t u : labeled) members[ls.labels[u][0]].push_back(u);

  std::vector<std::size_t> train, test;
  std::size_t reserved = 0;  // singleton-class vertices forced into train
  struct Quota {
    int cls;
    std::size_t count;
    std::size_t base;
    double remainder;
  };
  std::vector<Quota> quotas;
  for (int c = 0; c < ls.num_classes; ++c) {
    if (members[c].empty()) continue;
    if (members[c].size() == 1) {
      std::cerr << "warning: class " << c
                << " has a single labeled vertex; placing it in the train side\n";
      train.push_back(members[c][0]);
      ++reserved;
      continue;
    }
    double q = train_frac * static_cast<double>(members[c].size());
    std::size_t base = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(q)),
                                               1, members[c].size() - 1);
    quotas.push_back({c, members[c].size(), base, q - std::floor(q)});
  }

  std::size_t target = want_train > reserved ? want_train - reserved : 0;
  std::size_t assigned = 0;
  for (const Quota& q : quotas) assigned += q.base;

  // Largest-remainder adjustment toward the target, respecting the
  // one-per-side floor for each class.
  if (assigned < target) {
    std::vector<std::size_t> order(quotas.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return quotas[a].remainder > quotas[b].remainder;
    });
    std::size_t need = target - assigned;
    while (need > 0) {
      bool progressed = false;
      for (std::size_t idx : order) {
        if (need == 0) break;
        if (quotas[idx].base < quotas[idx].count - 1) {
          ++quotas[idx].base;
          --need;
          progressed = true;
        }
      }
      if (!progressed) break;
    }
  } else if (assigned > target) {
    std::vector<std::size_t> order(quotas.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return quotas[a].remainder < quotas[b].remainder;
    });
    std::size_t drop = assigned - target;
    while (drop > 0) {
      bool progressed = false;
      for (std::size_t idx : order) {
        if (drop == 0) break;
        if (quotas[idx].base > 1) {
          --quotas[idx].base;
          --drop;
          progressed = true;
        }
      }
      if (!progressed) break;
    }
  }

  for (const Quota& q : quotas) {
    RngStream rng(seed, rng_tag::kSplit, static_cast<std::uint64_t>(q.cls));
    auto [cls_train, cls_test] = detail::pick(members[q.cls], q.base, rng);
    train.insert(train.end(), cls_train.begin(), cls_train.end());
    test.insert(test.end(), cls_test.begin(), cls_test.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

}  // namespace graphembed
