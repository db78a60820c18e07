#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphembed/errors.hpp"

namespace graphembed {

using VertexId = std::uint32_t;

// Undirected graph in compressed sparse row form.  Every edge {u,v} is stored
// as two arcs with equal weight; within a row, neighbor ids are strictly
// increasing (no self-loops, no duplicates).  Vertex ids from the input are
// compacted to 0..n-1 in first-appearance order; orig_ids maps back.
// Immutable after construction and safe to share across threads.
struct CsrGraph {
  std::size_t n = 0;                    // vertex count
  std::size_t m = 0;                    // undirected edge count (arcs = 2m)
  std::vector<std::size_t> row_ptr;     // n+1 offsets, row_ptr[0]=0, row_ptr[n]=2m
  std::vector<VertexId> col_ids;        // arc targets, sorted within each row
  std::vector<double> weights;          // arc weights, parallel to col_ids
  std::vector<std::uint64_t> orig_ids;  // compact id -> id used in the input
  std::unordered_map<std::uint64_t, VertexId> orig_to_compact;

  std::size_t degree(VertexId u) const { return row_ptr[u + 1] - row_ptr[u]; }

  std::span<const VertexId> neighbors(VertexId u) const {
    return {col_ids.data() + row_ptr[u], col_ids.data() + row_ptr[u + 1]};
  }

  std::span<const double> neighbor_weights(VertexId u) const {
    return {weights.data() + row_ptr[u], weights.data() + row_ptr[u + 1]};
  }

  bool has_edge(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  double weighted_degree(VertexId u) const {
    double s = 0.0;
    for (std::size_t e = row_ptr[u]; e < row_ptr[u + 1]; ++e) s += weights[e];
    return s;
  }

  // Sum of all arc weights (= twice the total undirected edge weight).
  double total_arc_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  friend bool operator==(const CsrGraph& a, const CsrGraph& b) {
    return a.n == b.n && a.m == b.m && a.row_ptr == b.row_ptr &&
           a.col_ids == b.col_ids && a.weights == b.weights &&
           a.orig_ids == b.orig_ids;
  }
};

namespace detail {

struct Arc {
  VertexId u, v;
  double w;
  std::size_t seq;  // input order; ties on (u,v) keep the smallest
};

// Assemble a CSR from symmetric arcs.  Within a row, arcs are ordered by
// target id; duplicate targets collapse to the earliest-seen weight;
// self-loops are dropped.
inline CsrGraph build_csr(std::size_t n, std::vector<Arc> arcs,
                          std::vector<std::uint64_t> orig_ids) {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.seq < b.seq;
  });

  CsrGraph g;
  g.n = n;
  g.row_ptr.assign(n + 1, 0);
  g.col_ids.reserve(arcs.size());
  g.weights.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (a.u == a.v) continue;
    if (i > 0 && arcs[i - 1].u == a.u && arcs[i - 1].v == a.v) {
      continue;  // duplicate; the earliest weight was already kept
    }
    g.col_ids.push_back(a.v);
    g.weights.push_back(a.w);
    ++g.row_ptr[a.u + 1];
  }
  for (std::size_t u = 0; u < n; ++u) g.row_ptr[u + 1] += g.row_ptr[u];
  g.m = g.col_ids.size() / 2;

  if (orig_ids.empty()) {
    orig_ids.resize(n);
    for (std::size_t u = 0; u < n; ++u) orig_ids[u] = u;
  }
  g.orig_ids = std::move(orig_ids);
  g.orig_to_compact.reserve(n);
  for (std::size_t u = 0; u < n; ++u)
    g.orig_to_compact.emplace(g.orig_ids[u], static_cast<VertexId>(u));
  return g;
}

}  // namespace detail

// Build a graph from an explicit undirected edge list with identity ids
// (handy for fixtures and generators).  Pairs may arrive in any order.
inline CsrGraph graph_from_edges(
    std::size_t n, const std::vector<std::tuple<VertexId, VertexId, double>>& edges) {
  std::vector<detail::Arc> arcs;
  arcs.reserve(edges.size() * 2);
  std::size_t seq = 0;
  for (const auto& [u, v, w] : edges) {
    if (u >= n || v >= n) throw ValidationError("edge endpoint out of range");
    arcs.push_back({u, v, w, seq});
    arcs.push_back({v, u, w, seq});
    ++seq;
  }
  return detail::build_csr(n, std::move(arcs), {});
}

inline CsrGraph graph_from_edges(std::size_t n,
                                 const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::vector<std::tuple<VertexId, VertexId, double>> weighted;
  weighted.reserve(edges.size());
  for (auto [u, v] : edges) weighted.emplace_back(u, v, 1.0);
  return graph_from_edges(n, weighted);
}

// Parse a whitespace-separated edge list: one "u v" or "u v w" per line,
// nonnegative integer ids, positive real weight (default 1.0).  Lines whose
// first non-blank character is '#' or '%' are comments.  The input is
// symmetrized, self-loops are dropped, duplicate edges keep the weight seen
// first, and ids are compacted to 0..n-1 in first-appearance order.
inline CsrGraph parse_edge_list(std::istream& in) {
  std::vector<detail::Arc> arcs;
  std::vector<std::uint64_t> orig_ids;
  std::unordered_map<std::uint64_t, VertexId> compact;
  std::string line;
  std::size_t line_no = 0;
  std::size_t seq = 0;

  auto intern = [&](std::uint64_t orig) -> VertexId {
    auto [it, fresh] = compact.emplace(orig, static_cast<VertexId>(orig_ids.size()));
    if (fresh) orig_ids.push_back(orig);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#' || line[start] == '%') continue;

    std::istringstream ls(line);
    std::uint64_t u_orig, v_orig;
    if (!(ls >> u_orig >> v_orig)) {
      throw ValidationError("edge list line " + std::to_string(line_no) +
                            ": expected \"u v\" or \"u v w\"");
    }
    double w = 1.0;
    std::string tail;
    if (ls >> tail) {
      std::size_t used = 0;
      try {
        w = std::stod(tail, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tail.size()) {
        throw ValidationError("edge list line " + std::to_string(line_no) +
                              ": bad weight token \"" + tail + "\"");
      }
      if (!(w > 0.0)) {
        throw ValidationError("edge list line " + std::to_string(line_no) +
                              ": weight must be positive");
      }
      std::string extra;
      if (ls >> extra) {
        throw ValidationError("edge list line " + std::to_string(line_no) +
                              ": unexpected trailing token \"" + extra + "\"");
      }
    }
    VertexId u = intern(u_orig);
    VertexId v = intern(v_orig);
    arcs.push_back({u, v, w, seq});
    arcs.push_back({v, u, w, seq});
    ++seq;
  }
  const std::size_t n = orig_ids.size();
  return detail::build_csr(n, std::move(arcs), std::move(orig_ids));
}

inline CsrGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

// Emit one line per undirected edge using original ids.  Lines are ordered so
// that a reparse discovers vertices in compact-id order: iterating k upward we
// first emit k's edges to smaller ids, and a vertex with no smaller neighbor
// is introduced by the line to its smallest neighbor.  Any graph that itself
// came from parse_edge_list therefore reparses to an identical CsrGraph, ids
// included, and reparsing is idempotent for every graph.  Isolated vertices
// cannot be expressed in an edge list and are dropped.  Unit weights are
// omitted; others print with full precision.
inline void serialize(const CsrGraph& g, std::ostream& out) {
  auto emit = [&](std::size_t a, std::size_t b, double w) {
    out << g.orig_ids[a] << ' ' << g.orig_ids[b];
    if (w != 1.0) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", w);
      out << ' ' << buf;
    }
    out << '\n';
  };
  // One flag per edge, stored on the arc whose row is the smaller endpoint.
  std::vector<bool> done(g.col_ids.size(), false);
  for (std::size_t k = 0; k < g.n; ++k) {
    const std::size_t begin = g.row_ptr[k], end = g.row_ptr[k + 1];
    if (begin == end) continue;
    if (g.col_ids[begin] > static_cast<VertexId>(k)) {
      done[begin] = true;
      emit(k, g.col_ids[begin], g.weights[begin]);
      continue;
    }
    for (std::size_t e = begin; e < end && g.col_ids[e] < static_cast<VertexId>(k);
         ++e) {
      const std::size_t j = g.col_ids[e];
      auto first = g.col_ids.begin() + static_cast<std::ptrdiff_t>(g.row_ptr[j]);
      auto last = g.col_ids.begin() + static_cast<std::ptrdiff_t>(g.row_ptr[j + 1]);
      auto a = static_cast<std::size_t>(
          std::lower_bound(first, last, static_cast<VertexId>(k)) -
          g.col_ids.begin());
      if (done[a]) continue;
      done[a] = true;
      emit(j, k, g.weights[a]);
    }
  }
}

inline std::string serialize(const CsrGraph& g) {
  std::ostringstream out;
  serialize(g, out);
  return out.str();
}

}  // namespace graphembed
