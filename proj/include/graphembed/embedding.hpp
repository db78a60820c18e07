#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "graphembed/csr_graph.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

// Row-major n×d coordinate table; row u is the embedding of vertex u.
struct Embedding {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> data;

  Embedding() = default;
  Embedding(std::size_t n_, std::size_t d_) : n(n_), d(d_), data(n_ * d_, 0.0) {}

  double* row(std::size_t u) { return data.data() + u * d; }
  const double* row(std::size_t u) const { return data.data() + u * d; }
  std::span<const double> row_span(std::size_t u) const { return {row(u), d}; }

  friend bool operator==(const Embedding& a, const Embedding& b) {
    return a.n == b.n && a.d == b.d && a.data == b.data;
  }
};

// Initial coordinates: i.i.d. uniform in [-0.5/d, +0.5/d), drawn from a
// stream keyed by the seed alone, so initialization never depends on thread
// count or on what else has consumed randomness.
inline Embedding init_embedding(std::size_t n, std::size_t d, std::uint64_t seed) {
  Embedding z(n, d);
  RngStream rng(seed, rng_tag::kInit);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (double& v : z.data) v = (rng.next_double() - 0.5) * inv_d;
  return z;
}

// Text format, one file per embedding:
//   line 1:  "n d"
//   line i+1: "<vertex id> <f_1> ... <f_d>"   (coordinates, 6 decimal places)
// Vertex ids are the ids from the original input file.  Fixed formatting keeps
// equal embeddings byte-identical on disk.
inline void write_embedding(const Embedding& z, const std::vector<std::uint64_t>& ids,
                            std::ostream& out) {
  if (ids.size() != z.n) throw ValidationError("id column does not match embedding rows");
  out << z.n << ' ' << z.d << '\n';
  char buf[32];
  for (std::size_t u = 0; u < z.n; ++u) {
    out << ids[u];
    const double* row = z.row(u);
    for (std::size_t j = 0; j < z.d; ++j) {
      std::snprintf(buf, sizeof(buf), " %.6f", row[j]);
      out << buf;
    }
    out << '\n';
  }
}

struct NamedEmbedding {
  std::vector<std::uint64_t> ids;
  Embedding z;
};

inline NamedEmbedding read_embedding(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("embedding file: empty");
  std::istringstream header(line);
  std::size_t n = 0, d = 0;
  if (!(header >> n >> d) || d == 0)
    throw ValidationError("embedding file: header must be \"n d\"");
  NamedEmbedding out;
  out.ids.resize(n);
  out.z = Embedding(n, d);
  for (std::size_t u = 0; u < n; ++u) {
    if (!std::getline(in, line))
      throw ValidationError("embedding file: expected " + std::to_string(n) +
                            " rows, got " + std::to_string(u));
    std::istringstream ls(line);
    if (!(ls >> out.ids[u]))
      throw ValidationError("embedding file line " + std::to_string(u + 2) +
                            ": bad vertex id");
    double* row = out.z.row(u);
    for (std::size_t j = 0; j < d; ++j) {
      if (!(ls >> row[j]))
        throw ValidationError("embedding file line " + std::to_string(u + 2) +
                              ": expected " + std::to_string(d) + " coordinates");
    }
  }
  return out;
}

// Reorder file rows into graph (compact) vertex order.  Every graph vertex
// must appear exactly once in the file.
inline Embedding align_to_graph(const NamedEmbedding& ne, const CsrGraph& g) {
  if (ne.z.n != g.n)
    throw ValidationError("embedding has " + std::to_string(ne.z.n) +
                          " rows but graph has " + std::to_string(g.n) + " vertices");
  Embedding out(g.n, ne.z.d);
  std::vector<bool> seen(g.n, false);
  for (std::size_t r = 0; r < ne.z.n; ++r) {
    auto it = g.orig_to_compact.find(ne.ids[r]);
    if (it == g.orig_to_compact.end())
      throw ValidationError("embedding row vertex " + std::to_string(ne.ids[r]) +
                            " does not appear in the graph");
    if (seen[it->second])
      throw ValidationError("embedding lists vertex " + std::to_string(ne.ids[r]) +
                            " twice");
    seen[it->second] = true;
    std::copy(ne.z.row(r), ne.z.row(r) + ne.z.d, out.row(it->second));
  }
  return out;
}

}  // namespace graphembed
