#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "graphembed/embedding.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/labels.hpp"

namespace graphembed {

// Class colors, cycled when there are more than twelve classes.
inline constexpr const char* kSvgPalette[12] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

// 2-D scatter of an embedding: one circle per vertex, coordinates min-max
// normalized into a 1000×1000 viewbox, colored by class when labels are
// given (unlabeled vertices in gray).  Output bytes are deterministic.
inline std::string svg_scatter(const Embedding& z, const LabelSet* labels = nullptr) {
  if (z.d != 2)
    throw ValidationError("svg export needs a 2-D embedding (retrain with --dim 2)");
  if (labels && labels->labels.size() != z.n)
    throw ValidationError("label set does not match embedding rows");

  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  for (std::size_t u = 0; u < z.n; ++u) {
    const double* row = z.row(u);
    if (u == 0) {
      min_x = max_x = row[0];
      min_y = max_y = row[1];
    } else {
      min_x = std::min(min_x, row[0]);
      max_x = std::max(max_x, row[0]);
      min_y = std::min(min_y, row[1]);
      max_y = std::max(max_y, row[1]);
    }
  }
  const double span_x = max_x - min_x, span_y = max_y - min_y;

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" "
      "width=\"1000\" height=\"1000\">\n";
  char buf[160];
  for (std::size_t u = 0; u < z.n; ++u) {
    const double* row = z.row(u);
    const double x = span_x > 0.0 ? (row[0] - min_x) / span_x * 1000.0 : 500.0;
    // SVG y grows downward; flip so larger coordinates plot higher.
    const double y = span_y > 0.0 ? (max_y - row[1]) / span_y * 1000.0 : 500.0;
    const char* color = "#808080";
    if (labels && labels->labeled(u))
      color = kSvgPalette[static_cast<std::size_t>(labels->labels[u][0]) % 12];
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", x, y,
                  color);
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

inline void write_svg(const Embedding& z, const LabelSet* labels,
                      const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  out << svg_scatter(z, labels);
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace graphembed
