#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "graphembed/csr_graph.hpp"
#include "graphembed/errors.hpp"

namespace graphembed {

// Per-vertex class assignments.  labels[u] is empty for unlabeled vertices;
// such vertices are skipped by classification splits.  Class ids form a dense
// vocabulary 0..num_classes-1 where num_classes = max seen id + 1 (ids with
// zero support are legal classes).
struct LabelSet {
  std::vector<std::vector<int>> labels;
  int num_classes = 0;
  bool multilabel = false;

  bool labeled(std::size_t u) const { return !labels[u].empty(); }

  std::size_t labeled_count() const {
    std::size_t c = 0;
    for (const auto& l : labels) c += l.empty() ? 0 : 1;
    return c;
  }
};

namespace detail {

inline void add_label_line(LabelSet& ls, std::size_t u, const std::string& class_field,
                           std::size_t line_no) {
  std::vector<int>& out = ls.labels[u];
  std::size_t pos = 0;
  while (pos <= class_field.size()) {
    std::size_t comma = class_field.find(',', pos);
    std::string piece = class_field.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    long c = -1;
    try {
      c = std::stol(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != piece.size() || piece.empty() || c < 0) {
      throw ValidationError("label file line " + std::to_string(line_no) +
                            ": bad class id \"" + piece + "\"");
    }
    if (std::find(out.begin(), out.end(), static_cast<int>(c)) == out.end())
      out.push_back(static_cast<int>(c));
    if (c + 1 > ls.num_classes) ls.num_classes = static_cast<int>(c) + 1;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() > 1) ls.multilabel = true;
}

template <typename Resolve>
LabelSet load_labels_impl(std::istream& in, std::size_t n, Resolve resolve) {
  LabelSet ls;
  ls.labels.resize(n);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#' || line[start] == '%') continue;
    std::istringstream lsr(line);
    std::uint64_t id;
    std::string classes;
    if (!(lsr >> id >> classes)) {
      throw ValidationError("label file line " + std::to_string(line_no) +
                            ": expected \"vertex_id class[,class...]\"");
    }
    std::string extra;
    if (lsr >> extra) {
      throw ValidationError("label file line " + std::to_string(line_no) +
                            ": unexpected trailing token \"" + extra + "\"");
    }
    std::size_t u = resolve(id, line_no);
    detail::add_label_line(ls, u, classes, line_no);
  }
  return ls;
}

}  // namespace detail

// Labels keyed by internal vertex ids 0..n-1.
inline LabelSet load_labels(std::istream& in, std::size_t n) {
  return detail::load_labels_impl(in, n, [n](std::uint64_t id, std::size_t line_no) {
    if (id >= n) {
      throw ValidationError("label file line " + std::to_string(line_no) +
                            ": vertex id " + std::to_string(id) +
                            " out of range (n=" + std::to_string(n) + ")");
    }
    return static_cast<std::size_t>(id);
  });
}

inline LabelSet load_labels(const std::string& text, std::size_t n) {
  std::istringstream in(text);
  return load_labels(in, n);
}

// Labels keyed by the ids that appeared in the graph's input file.
inline LabelSet load_labels(std::istream& in, const CsrGraph& g) {
  return detail::load_labels_impl(in, g.n, [&g](std::uint64_t id, std::size_t line_no) {
    auto it = g.orig_to_compact.find(id);
    if (it == g.orig_to_compact.end()) {
      throw ValidationError("label file line " + std::to_string(line_no) +
                            ": vertex id " + std::to_string(id) +
                            " does not appear in the graph");
    }
    return static_cast<std::size_t>(it->second);
  });
}

}  // namespace graphembed
