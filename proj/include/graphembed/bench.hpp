#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "graphembed/csr_graph.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/sbm.hpp"
#include "graphembed/train.hpp"

namespace graphembed {

struct BenchResult {
  std::string kind;    // single | strong | weak | graph
  std::string method;  // e.g. force2vec-tdist
  std::size_t n = 0;
  std::size_t m = 0;
  int threads = 1;
  double wall_seconds = 0.0;
  std::size_t peak_rss_bytes = 0;
  std::size_t iters = 0;
};

namespace detail {

inline std::size_t read_rss_bytes() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmRSS:", 0) == 0) {
      std::istringstream ls(line.substr(6));
      std::size_t kb = 0;
      ls >> kb;
      return kb * 1024;
    }
  }
  return 0;
}

// Background thread polling the process resident set every 50 ms; the peak
// observed value stands in for peak memory of the measured section.
class RssSampler {
 public:
  RssSampler() : peak_(read_rss_bytes()), running_(true), worker_([this] {
    while (running_.load(std::memory_order_relaxed)) {
      std::size_t now = read_rss_bytes();
      std::size_t prev = peak_.load(std::memory_order_relaxed);
      while (now > prev &&
             !peak_.compare_exchange_weak(prev, now, std::memory_order_relaxed)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  }) {}

  ~RssSampler() {
    if (worker_.joinable()) stop();
  }

  std::size_t stop() {
    running_.store(false, std::memory_order_relaxed);
    worker_.join();
    std::size_t final_rss = read_rss_bytes();
    std::size_t prev = peak_.load(std::memory_order_relaxed);
    return std::max(final_rss, prev);
  }

 private:
  std::atomic<std::size_t> peak_;
  std::atomic<bool> running_;
  std::thread worker_;
};

inline int hardware_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Cap a requested worker count at the physical concurrency, with a warning.
inline int cap_threads(int requested) {
  const int hw = hardware_threads();
  if (requested > hw) {
    std::cerr << "warning: " << requested << " threads requested but only " << hw
              << " hardware thread(s) available; capping\n";
    return hw;
  }
  return requested < 1 ? 1 : requested;
}

}  // namespace detail

// Mean wall time of the train call over `repeats` runs (loading, config, and
// seeding excluded from the measured section), plus the peak sampled RSS.
inline BenchResult time_embed(const CsrGraph& g, const TrainConfig& cfg, int repeats,
                              bool use_walks = false, const std::string& kind = "single") {
  if (repeats < 1) throw ValidationError("repeats must be >= 1");
  BenchResult r;
  r.kind = kind;
  r.method = use_walks ? "force2vec-walk" : std::string("force2vec-") + model_name(cfg.model);
  r.n = g.n;
  r.m = g.m;
  r.threads = cfg.threads > 0 ? cfg.threads : detail::hardware_threads();
  r.iters = cfg.iterations;

  double total = 0.0;
  std::size_t peak = 0;
  for (int rep = 0; rep < repeats; ++rep) {
    detail::RssSampler sampler;
    const auto t0 = std::chrono::steady_clock::now();
    Embedding z = use_walks ? train_walk(g, cfg) : train(g, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    peak = std::max(peak, sampler.stop());
    total += std::chrono::duration<double>(t1 - t0).count();
    (void)z;
  }
  r.wall_seconds = total / repeats;
  r.peak_rss_bytes = peak;
  return r;
}

// Planted-partition benchmark graph with average degree near 10 (8 intra + 2
// inter per vertex), 8 blocks; size n, deterministic in the seed.
inline CsrGraph make_bench_graph(std::size_t n, std::uint64_t seed) {
  const std::size_t nblocks = 8;
  if (n < 2 * nblocks) throw ValidationError("benchmark graph too small");
  std::vector<std::size_t> blocks(nblocks, n / nblocks);
  for (std::size_t i = 0; i < n % nblocks; ++i) ++blocks[i];
  const double bavg = static_cast<double>(n) / nblocks;
  const double p_in = std::min(1.0, 8.0 / (bavg - 1.0));
  const double p_out = std::min(p_in, 2.0 / static_cast<double>(n - bavg));
  return generate_sbm(blocks, p_in, p_out, seed).first;
}

// Three experiment families over planted-partition graphs:
//   strong — one graph of base_n vertices, workers 1,2,4,...,max_threads;
//   weak   — graphs of {1,2,4,8,16}×base_n vertices with matching workers;
//   graph  — graphs of {1,2,4,8}×base_n vertices at a fixed worker count.
// Requested worker counts above the hardware concurrency are capped with a
// warning.  cfg supplies the trainer settings (model, dim, iterations, ...).
inline std::vector<BenchResult> scaling_experiment(const std::string& kind,
                                                   std::size_t base_n,
                                                   std::uint64_t seed,
                                                   TrainConfig cfg,
                                                   int max_threads = 8,
                                                   int repeats = 1) {
  if (base_n < 1000) throw ValidationError("scaling experiments need base_n >= 1000");
  std::vector<BenchResult> out;

  if (kind == "strong") {
    CsrGraph g = make_bench_graph(base_n, seed);
    for (int t = 1; t <= max_threads; t *= 2) {
      cfg.threads = detail::cap_threads(t);
      out.push_back(time_embed(g, cfg, repeats, false, "strong"));
    }
  } else if (kind == "weak") {
    for (std::size_t f : {1, 2, 4, 8, 16}) {
      CsrGraph g = make_bench_graph(base_n * f, seed);
      cfg.threads = detail::cap_threads(static_cast<int>(f));
      out.push_back(time_embed(g, cfg, repeats, false, "weak"));
    }
  } else if (kind == "graph") {
    const int fixed = detail::cap_threads(cfg.threads > 0 ? cfg.threads : 1);
    cfg.threads = fixed;
    for (std::size_t f : {1, 2, 4, 8}) {
      CsrGraph g = make_bench_graph(base_n * f, seed);
      out.push_back(time_embed(g, cfg, repeats, false, "graph"));
    }
  } else {
    throw ValidationError("unknown scaling kind \"" + kind +
                          "\" (expected strong|weak|graph)");
  }
  return out;
}

inline constexpr const char* kBenchCsvHeader =
    "kind,method,n,m,threads,wall_seconds,peak_rss_bytes,iters";

inline std::string bench_csv_rows(const std::vector<BenchResult>& results) {
  std::string out;
  char buf[64];
  for (const BenchResult& r : results) {
    out += r.kind;
    out += ',';
    out += r.method;
    std::snprintf(buf, sizeof(buf), ",%zu,%zu,%d,%.6f,%zu,%zu", r.n, r.m, r.threads,
                  r.wall_seconds, r.peak_rss_bytes, r.iters);
    out += buf;
    out += '\n';
  }
  return out;
}

inline void emit_csv(const std::vector<BenchResult>& results, const std::string& path,
                     bool overwrite) {
  namespace fs = std::filesystem;
  bool need_header = overwrite;
  if (!overwrite) {
    std::error_code ec;
    need_header = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
  }
  std::ofstream out(path, overwrite ? std::ios::trunc : std::ios::app);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  if (need_header) out << kBenchCsvHeader << '\n';
  out << bench_csv_rows(results);
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace graphembed
