#pragma once

#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "graphembed/csr_graph.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/labels.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

namespace detail {

// Index -> (row, col) within the strict upper triangle of an s×s block,
// positions ordered row-major: (0,1),(0,2),...,(0,s-1),(1,2),...
// pairs_before(r) = r*(2s-r-1)/2 counts positions with first index < r.
inline std::pair<std::size_t, std::size_t> triangle_decode(std::size_t pos, std::size_t s) {
  auto pairs_before = [s](std::size_t r) { return r * (2 * s - r - 1) / 2; };
  double sd = static_cast<double>(s) - 0.5;
  double est = sd - std::sqrt(std::max(sd * sd - 2.0 * static_cast<double>(pos), 0.0));
  std::size_t r = static_cast<std::size_t>(std::max(est, 0.0));
  if (r >= s) r = s - 1;
  while (r + 1 < s && pairs_before(r + 1) <= pos) ++r;
  while (r > 0 && pairs_before(r) > pos) --r;
  std::size_t c = r + 1 + (pos - pairs_before(r));
  return {r, c};
}

// Visit each position of a region independently with probability p, emitting
// positions in ascending order via geometric jumps (O(edges), not O(pairs)).
template <typename Emit>
void sample_region(std::size_t total, double p, RngStream& rng, Emit emit) {
  if (total == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::size_t pos = 0; pos < total; ++pos) emit(pos);
    return;
  }
  const double log1mp = std::log1p(-p);
  std::size_t pos = 0;
  double u = rng.next_double();
  double skip = std::floor(std::log1p(-u) / log1mp);
  while (true) {
    if (skip >= static_cast<double>(total - pos)) return;
    pos += static_cast<std::size_t>(skip);
    emit(pos);
    if (++pos >= total) return;
    u = rng.next_double();
    skip = std::floor(std::log1p(-u) / log1mp);
  }
}

}  // namespace detail

// Planted-partition generator: every intra-block vertex pair becomes an edge
// with probability p_in, every inter-block pair with p_out.  Labels carry
// the block index.  Each block-pair region draws from its own keyed stream,
// so output is bit-identical for a fixed seed on any machine or thread count.
inline std::pair<CsrGraph, LabelSet> generate_sbm(const std::vector<std::size_t>& blocks,
                                                  double p_in, double p_out,
                                                  std::uint64_t seed) {
  if (blocks.empty()) throw ValidationError("block list must be nonempty");
  for (std::size_t b : blocks)
    if (b == 0) throw ValidationError("block sizes must be positive");
  if (!(p_out >= 0.0 && p_in >= p_out && p_in <= 1.0))
    throw ValidationError("need 0 <= p_out <= p_in <= 1");

  std::vector<std::size_t> offset(blocks.size() + 1, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) offset[b + 1] = offset[b] + blocks[b];
  const std::size_t n = offset.back();

  std::vector<detail::Arc> arcs;
  std::size_t seq = 0;
  auto add_edge = [&](std::size_t u, std::size_t v) {
    arcs.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 1.0, seq});
    arcs.push_back({static_cast<VertexId>(v), static_cast<VertexId>(u), 1.0, seq});
    ++seq;
  };

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (std::size_t bj = bi; bj < blocks.size(); ++bj) {
      RngStream rng(seed, rng_tag::kSbm, bi, bj);
      if (bi == bj) {
        std::size_t s = blocks[bi];
        std::size_t total = s * (s - 1) / 2;
        detail::sample_region(total, p_in, rng, [&](std::size_t pos) {
          auto [r, c] = detail::triangle_decode(pos, s);
          add_edge(offset[bi] + r, offset[bi] + c);
        });
      } else {
        std::size_t rows = blocks[bi], cols = blocks[bj];
        detail::sample_region(rows * cols, p_out, rng, [&](std::size_t pos) {
          add_edge(offset[bi] + pos / cols, offset[bj] + pos % cols);
        });
      }
    }
  }

  CsrGraph g = detail::build_csr(n, std::move(arcs), {});

  LabelSet planted;
  planted.labels.resize(n);
  planted.num_classes = static_cast<int>(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t u = offset[b]; u < offset[b + 1]; ++u)
      planted.labels[u] = {static_cast<int>(b)};
  return {std::move(g), std::move(planted)};
}

}  // namespace graphembed
