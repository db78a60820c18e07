#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "graphembed/errors.hpp"

namespace graphembed {

// One evaluation outcome: a task name, its metric values, and an echo of the
// configuration that produced them.  Serialized as CSV rows
//   task,metric,value,param,param_value,param,param_value,...
// (one row per metric, ragged tail of param pairs).
struct EvalReport {
  std::string task;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::string>> params;
};

inline std::string format_metric_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::string eval_csv_rows(const std::vector<EvalReport>& reports) {
  std::string out;
  for (const EvalReport& r : reports) {
    for (const auto& [metric, value] : r.metrics) {
      out += r.task;
      out += ',';
      out += metric;
      out += ',';
      out += format_metric_value(value);
      for (const auto& [k, v] : r.params) {
        out += ',';
        out += k;
        out += ',';
        out += v;
      }
      out += '\n';
    }
  }
  return out;
}

inline constexpr const char* kEvalCsvHeader = "task,metric,value,param,param_value,...";

// Write reports to path.  overwrite=true truncates and writes the header;
// otherwise rows are appended, with the header written only when the file
// does not yet exist (or is empty).
inline void emit_csv(const std::vector<EvalReport>& reports, const std::string& path,
                     bool overwrite) {
  namespace fs = std::filesystem;
  bool need_header = overwrite;
  if (!overwrite) {
    std::error_code ec;
    need_header = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
  }
  std::ofstream out(path, overwrite ? std::ios::trunc : std::ios::app);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  if (need_header) out << kEvalCsvHeader << '\n';
  out << eval_csv_rows(reports);
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace graphembed
