// Acceptance gate: twelve end-to-end checks, one line of output each.
//
//   usage: acceptance [criterion-number...]
//
// With no arguments all twelve run.  Exit status: 0 if everything that ran
// passed, 77 if everything that ran was skipped (missing optional dataset),
// 1 otherwise.  The checks use independent oracles (finite differences,
// double loops, dense solves) rather than the library's own formulas.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <graphembed/graphembed.hpp>

using namespace graphembed;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass(std::string detail) { return {Status::Pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Status::Fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Status::Skip, std::move(detail)}; }

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

// ---------------------------------------------------------------- helpers

Eigen::MatrixXd adjacency(const CsrGraph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (std::size_t u = 0; u < g.n; ++u) {
    auto nbrs = g.neighbors(u);
    auto wts = g.neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) a(u, nbrs[i]) = wts[i];
  }
  return a;
}

CsrGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (unif(gen) < p) edges.emplace_back(u, v);
  for (std::size_t u = 0; u + 1 < n; ++u)
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(u + 1));
  return graph_from_edges(n, edges);
}

// The standard four-block graph used by the quality checks.
std::pair<CsrGraph, LabelSet> quality_sbm() {
  return generate_sbm({250, 250, 250, 250}, 0.05, 0.002, 42);
}

Embedding quality_embedding(const CsrGraph& g) {
  TrainConfig cfg;  // defaults: tdist, d=128, lr=0.02, neg=5, batch=256, 600 iters
  cfg.seed = 42;
  return train(g, cfg);
}

// ------------------------------------------------------------- criterion 1

// Analytic sigmoid and t-distribution gradients vs central finite
// differences of locally re-derived losses; 100 pairs, d in {2, 8}.
Outcome criterion1() {
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double h = 1e-6;
  double worst = 0.0;
  for (std::size_t d : {2u, 8u}) {
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> zu(d), zv(d);
      double dist = 0.0;
      do {
        dist = 0.0;
        for (auto& v : zu) v = unif(gen);
        for (auto& v : zv) v = unif(gen);
        for (std::size_t j = 0; j < d; ++j) dist += (zu[j] - zv[j]) * (zu[j] - zv[j]);
        dist = std::sqrt(dist);
      } while (dist < 0.05);

      auto check = [&](auto loss, const std::vector<double>& analytic) {
        double scale = 1e-8;
        for (double v : analytic) scale = std::max(scale, std::abs(v));
        for (std::size_t j = 0; j < d; ++j) {
          double keep = zu[j];
          zu[j] = keep + h;
          double up = loss();
          zu[j] = keep - h;
          double down = loss();
          zu[j] = keep;
          worst = std::max(worst,
                           std::abs((up - down) / (2 * h) - analytic[j]) / scale);
        }
      };

      GradPair sig = sigmoid_grads(zu.data(), zv.data(), d);
      check(
          [&] {
            double dot = 0.0;
            for (std::size_t j = 0; j < d; ++j) dot += zu[j] * zv[j];
            return std::log(1.0 + std::exp(-dot));
          },
          sig.attractive);
      check(
          [&] {
            double dot = 0.0;
            for (std::size_t j = 0; j < d; ++j) dot += zu[j] * zv[j];
            return std::log(1.0 + std::exp(dot));
          },
          sig.repulsive);

      GradPair td = tdist_grads(zu.data(), zv.data(), d);
      auto tval = [&] {
        double sq = 0.0;
        for (std::size_t j = 0; j < d; ++j) sq += (zu[j] - zv[j]) * (zu[j] - zv[j]);
        return std::sqrt(sq);
      };
      check([&] { double t = tval(); return std::log(1.0 + t * t); }, td.attractive);
      check([&] { double t = tval(); return std::log(1.0 + t * t) - std::log(t * t); },
            td.repulsive);
    }
  }
  if (worst > 1e-4) return fail("max relative gradient error " + fmt(worst) + " > 1e-4");
  return pass("max relative gradient error " + fmt(worst) + " over 400 pair checks");
}

// ------------------------------------------------------------- criterion 2

Outcome criterion2() {
  std::mt19937_64 gen(505);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t n = 8 + gen() % 53;  // up to 60
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::tuple<VertexId, VertexId, double>> edges;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (unif(gen) < 0.15) edges.emplace_back(u, v, 0.2 + 2.0 * unif(gen));
    if (edges.empty()) edges.emplace_back(0, 1, 1.0);
    CsrGraph g = graph_from_edges(n, edges);
    std::uniform_int_distribution<int> cluster(0, 1 + static_cast<int>(gen() % 5));
    std::vector<int> clusters(n);
    for (auto& c : clusters) c = cluster(gen);

    // O(n^2) oracle.
    double total = g.total_arc_weight();
    double slow = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        if (clusters[u] != clusters[v]) continue;
        double a_uv = 0.0;
        auto nbrs = g.neighbors(u);
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), static_cast<VertexId>(v));
        if (it != nbrs.end() && *it == v)
          a_uv = g.neighbor_weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
        slow += a_uv / total -
                (g.weighted_degree(u) / total) * (g.weighted_degree(v) / total);
      }
    worst = std::max(worst, std::abs(modularity(g, clusters) - slow));
  }
  if (worst > 1e-12) return fail("fast vs double-loop gap " + fmt(worst) + " > 1e-12");

  CsrGraph tri2 = graph_from_edges(
      6, std::vector<std::pair<VertexId, VertexId>>{
             {0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  double one = modularity(tri2, std::vector<int>(6, 0));
  double two = modularity(tri2, {0, 0, 0, 1, 1, 1});
  if (one != 0.0) return fail("one-cluster Q = " + fmt(one) + ", want exactly 0");
  if (two != 0.5) return fail("two-triangle Q = " + fmt(two) + ", want exactly 0.5");
  return pass("100 random instances within 1e-12; closed forms exact");
}

// ------------------------------------------------------------- criterion 3

Outcome criterion3() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::size_t n = 5 + seed % 26;
    CsrGraph g = random_graph(n, 0.2, seed);
    Eigen::MatrixXd a = adjacency(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    double rho = 0.0;
    for (double v : es.eigenvalues()) rho = std::max(rho, std::abs(v));
    for (double beta : {0.01, 0.9 / rho}) {
      ProximityMatrix prox = katz_proximity(g, beta);
      Eigen::MatrixXd direct =
          (Eigen::MatrixXd::Identity(n, n) - beta * a).partialPivLu().solve(beta * a);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          worst = std::max(worst, std::abs(prox.S(i, j) - direct(i, j)));
    }
  }
  if (worst > 1e-8) return fail("series vs dense solve gap " + fmt(worst) + " > 1e-8");
  return pass("max gap to the dense solve " + fmt(worst) + " over 100 solves");
}

// ------------------------------------------------------------- criterion 4

Outcome criterion4() {
  CsrGraph g = make_bench_graph(5000, 17);
  auto embed_file = [&](const Embedding& z) {
    std::ostringstream out;
    write_embedding(z, g.orig_ids, out);
    return out.str();
  };
  std::vector<std::string> names = {"force2vec-tdist", "force2vec-sigmoid", "deepwalk",
                                    "force2vec-walk"};
  for (const std::string& name : names) {
    std::string first;
    for (int threads : {1, 4, 8}) {
      Embedding z;
      if (name == "deepwalk") {
        z = deepwalk_embed(g, 2, 10, 3, 16, 3, 0.025, 1, 33, threads);
      } else {
        TrainConfig cfg;
        cfg.dim = 16;
        cfg.iterations = 5;
        cfg.seed = 33;
        cfg.threads = threads;
        cfg.walk_length = 8;
        if (name == "force2vec-sigmoid") cfg.model = Model::Sigmoid;
        z = name == "force2vec-walk" ? train_walk(g, cfg) : train(g, cfg);
      }
      std::string file = embed_file(z);
      if (first.empty()) {
        first = std::move(file);
      } else if (file != first) {
        return fail(name + ": embedding file differs between 1 and " +
                    std::to_string(threads) + " threads");
      }
    }
  }
  return pass("4 methods byte-identical across threads {1,4,8} on a 5k-vertex graph");
}

// ------------------------------------------------------------- criterion 5

Outcome criterion5() {
  auto [g, planted] = quality_sbm();
  std::vector<int> truth(g.n);
  for (std::size_t u = 0; u < g.n; ++u) truth[u] = planted.labels[u][0];
  double planted_q = modularity(g, truth);
  Embedding z = quality_embedding(g);
  SweepResult sweep = cluster_sweep(g, z, 2, 8, 42);
  if (sweep.best_q < 0.9 * planted_q)
    return fail("sweep Q " + fmt(sweep.best_q) + " < 0.9 x planted Q " + fmt(planted_q));
  return pass("sweep Q " + fmt(sweep.best_q) + " (k=" + std::to_string(sweep.best_k) +
              ") vs planted Q " + fmt(planted_q));
}

// ------------------------------------------------------------- criterion 6

Outcome criterion6() {
  auto [g, planted] = quality_sbm();
  // The Hadamard operator feeds coordinatewise products to the classifier,
  // so use the variant whose objective is the pairwise dot product.
  TrainConfig cfg;
  cfg.model = Model::Sigmoid;
  cfg.seed = 42;
  Embedding z = train(g, cfg);
  double hadamard = link_prediction_accuracy(g, z, LinkOperator::Hadamard, 0.5, 42);
  double wl1 = link_prediction_accuracy(g, z, LinkOperator::WL1, 0.5, 42);
  if (hadamard < 0.85) return fail("hadamard accuracy " + fmt(hadamard) + " < 0.85");
  if (hadamard < wl1 - 0.05)
    return fail("hadamard " + fmt(hadamard) + " trails wl1 " + fmt(wl1) +
                " by more than 0.05");
  return pass("hadamard " + fmt(hadamard) + ", wl1 " + fmt(wl1));
}

// ------------------------------------------------------------- criterion 7

Outcome criterion7() {
  auto [g, planted] = quality_sbm();
  Embedding z = quality_embedding(g);
  auto [train_ids, test_ids] = split_labeled(planted, 0.2, 42);
  DenseMatrix xtr(train_ids.size(), z.d), xte(test_ids.size(), z.d);
  std::vector<std::vector<int>> ytr(train_ids.size()), yte(test_ids.size());
  for (std::size_t i = 0; i < train_ids.size(); ++i) {
    std::copy(z.row(train_ids[i]), z.row(train_ids[i]) + z.d, xtr.row(i));
    ytr[i] = planted.labels[train_ids[i]];
  }
  for (std::size_t i = 0; i < test_ids.size(); ++i) {
    std::copy(z.row(test_ids[i]), z.row(test_ids[i]) + z.d, xte.row(i));
    yte[i] = planted.labels[test_ids[i]];
  }
  LogisticModel model = logistic_fit(xtr, ytr, planted.num_classes, false);
  Metrics m = classification_metrics(yte, logistic_predict(model, xte),
                                     planted.num_classes, false);
  if (m.f1_micro < 0.90) return fail("micro F1 " + fmt(m.f1_micro) + " < 0.90");
  if (std::abs(m.f1_micro - m.accuracy) > 1e-12)
    return fail("micro F1 " + fmt(m.f1_micro) + " != accuracy " + fmt(m.accuracy));
  return pass("micro F1 " + fmt(m.f1_micro) + " at 20% training");
}

// ------------------------------------------------------------- criterion 8

Outcome criterion8() {
  auto locate = [](const char* env, const char* fallback1,
                   const char* fallback2) -> std::string {
    if (const char* v = std::getenv(env); v && *v) return v;
    if (std::filesystem::exists(fallback1)) return fallback1;
    if (std::filesystem::exists(fallback2)) return fallback2;
    return {};
  };
  std::string edges = locate("CORA_EDGES", "data/cora.edges", "../data/cora.edges");
  std::string labels = locate("CORA_LABELS", "data/cora.labels", "../data/cora.labels");
  if (edges.empty() || labels.empty())
    return skip("optional dataset not present (set CORA_EDGES/CORA_LABELS or put "
                "cora.edges/cora.labels under data/)");

  std::ifstream ein(edges);
  if (!ein) return fail("cannot read " + edges);
  CsrGraph g = parse_edge_list(ein);
  if (g.n != 2708 || g.m != 5429)
    return fail("loader reports n=" + std::to_string(g.n) + " m=" + std::to_string(g.m) +
                ", want n=2708 m=5429");

  std::ifstream lin(labels);
  if (!lin) return fail("cannot read " + labels);
  LabelSet ls = load_labels(lin, g);

  Embedding z = quality_embedding(g);
  auto [train_ids, test_ids] = split_labeled(ls, 0.5, 42);
  DenseMatrix xtr(train_ids.size(), z.d), xte(test_ids.size(), z.d);
  std::vector<std::vector<int>> ytr(train_ids.size()), yte(test_ids.size());
  for (std::size_t i = 0; i < train_ids.size(); ++i) {
    std::copy(z.row(train_ids[i]), z.row(train_ids[i]) + z.d, xtr.row(i));
    ytr[i] = ls.labels[train_ids[i]];
  }
  for (std::size_t i = 0; i < test_ids.size(); ++i) {
    std::copy(z.row(test_ids[i]), z.row(test_ids[i]) + z.d, xte.row(i));
    yte[i] = ls.labels[test_ids[i]];
  }
  LogisticModel model = logistic_fit(xtr, ytr, ls.num_classes, ls.multilabel);
  Metrics m = classification_metrics(yte, logistic_predict(model, xte), ls.num_classes,
                                     ls.multilabel);
  if (m.f1_micro < 0.70) return fail("micro F1 " + fmt(m.f1_micro) + " < 0.70");
  SweepResult sweep = cluster_sweep(g, z, 2, 8, 42);
  if (sweep.best_q < 0.55) return fail("sweep Q " + fmt(sweep.best_q) + " < 0.55");
  return pass("n/m exact, micro F1 " + fmt(m.f1_micro) + ", sweep Q " +
              fmt(sweep.best_q));
}

// ------------------------------------------------------------- criterion 9

Outcome criterion9() {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t b = 0; b < 10; ++b)
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = i + 1; j < 10; ++j)
        edges.emplace_back(static_cast<VertexId>(b * 10 + i),
                           static_cast<VertexId>(b * 10 + j));
  CsrGraph g = graph_from_edges(100, edges);

  TrainConfig cfg;
  cfg.model = Model::Sigmoid;  // dot-product objective matches cosine retrieval
  cfg.dim = 32;
  cfg.iterations = 600;
  cfg.seed = 42;
  Embedding trained = train(g, cfg);
  double hit = reconstruction_accuracy(g, trained, 1000, 42);
  if (hit != 1.0) return fail("trained reconstruction " + fmt(hit) + " != 1.0");

  Embedding untrained = init_embedding(g.n, cfg.dim, 42);
  double base = reconstruction_accuracy(g, untrained, 1000, 42);
  if (base >= 0.3) return fail("untrained reconstruction " + fmt(base) + " >= 0.3");
  return pass("trained 1.0, untrained " + fmt(base));
}

// ------------------------------------------------------------ criterion 10

Outcome criterion10() {
  TrainConfig cfg;
  cfg.dim = 16;
  cfg.iterations = 10;
  cfg.threads = 1;

  // Strong scaling on a ~200k-edge graph (n=40k, average degree ~10).
  auto strong = scaling_experiment("strong", 40000, 7, cfg, 8, 1);
  double speedup = strong.front().wall_seconds / strong.back().wall_seconds;
  int top_threads = strong.back().threads;

  // Graph scaling: log-log linear fit over n in {10k, 20k, 40k, 80k}.
  auto graph_pts = scaling_experiment("graph", 10000, 7, cfg, 8, 1);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double npts = static_cast<double>(graph_pts.size());
  for (const auto& p : graph_pts) {
    double x = std::log(static_cast<double>(p.n));
    double y = std::log(p.wall_seconds);
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
  }
  double sxx_c = sxx - sx * sx / npts;
  double sxy_c = sxy - sx * sy / npts;
  double syy_c = syy - sy * sy / npts;
  double r2 = syy_c > 0 ? (sxy_c * sxy_c) / (sxx_c * syy_c) : 1.0;

  std::string detail = "speedup 1->" + std::to_string(top_threads) + " threads = " +
                       fmt(speedup) + " (want >= 3), log-log R^2 = " + fmt(r2) +
                       " (want >= 0.95)";
  if (top_threads < 8)
    detail += "; hardware exposes only " + std::to_string(detail::hardware_threads()) +
              " core(s), thread ladder capped";
  if (speedup < 3.0 || r2 < 0.95) return fail(detail);
  return pass(detail);
}

// ------------------------------------------------------------ criterion 11

Outcome criterion11() {
  CsrGraph g = graph_from_edges(
      6, std::vector<std::pair<VertexId, VertexId>>{
             {0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    WalkCorpus corpus = generate_walks(g, 10, 12, seed, 3);
    Embedding z = skipgram_train(corpus, g.n, 8, 4, 0.05, 5, seed);
    double intra = 0.0, inter = 0.0;
    int ni = 0, nx = 0;
    for (std::size_t u = 0; u < 6; ++u)
      for (std::size_t v = u + 1; v < 6; ++v) {
        double dot = 0, nu = 0, nv = 0;
        for (std::size_t j = 0; j < 8; ++j) {
          dot += z.row(u)[j] * z.row(v)[j];
          nu += z.row(u)[j] * z.row(u)[j];
          nv += z.row(v)[j] * z.row(v)[j];
        }
        double c = (nu == 0 || nv == 0) ? 0.0 : dot / std::sqrt(nu * nv);
        if ((u < 3) == (v < 3)) { intra += c; ++ni; }
        else { inter += c; ++nx; }
      }
    if (intra / ni > inter / nx) ++passes;
  }
  if (passes < 9)
    return fail("triangle separation held for only " + std::to_string(passes) +
                "/10 seeds (want >= 9)");
  return pass("triangle separation held for " + std::to_string(passes) + "/10 seeds");
}

// ------------------------------------------------------------ criterion 12

Outcome criterion12() {
  CsrGraph g = random_graph(20, 0.3, 2025);
  ProximityMatrix prox = katz_proximity(g, 0.05);
  double snorm = frobenius_norm(prox.S);
  double prev = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (std::size_t d = 1; d <= 20; ++d) {
    auto [us, ut] = hope_embed(prox, d, 42);
    double resid = factorization_residual(prox.S, us, ut);
    if (resid > prev + 1e-9 * snorm)
      return fail("residual rose from " + fmt(prev) + " to " + fmt(resid) + " at d=" +
                  std::to_string(d));
    prev = resid;
    last = resid;
  }
  if (last > 1e-6 * snorm)
    return fail("full-rank residual " + fmt(last) + " > 1e-6 x ||S||_F = " +
                fmt(1e-6 * snorm));
  return pass("residual nonincreasing over d=1..20, full rank at " + fmt(last));
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  const char* names[] = {
      "gradients match finite differences",
      "modularity matches the double-loop oracle",
      "katz series matches the dense solve",
      "thread-count determinism of all trainers",
      "clustering recovers planted blocks",
      "link prediction accuracy on planted blocks",
      "node classification accuracy on planted blocks",
      "cora dataset checks (optional)",
      "reconstruction of disjoint cliques",
      "strong and graph scaling",
      "skip-gram separates disjoint triangles",
      "factorization rank sweep",
  };

  std::vector<int> to_run;
  for (int i = 1; i < argc; ++i) {
    int k = std::atoi(argv[i]);
    if (k < 1 || k > 12) {
      std::cerr << "usage: acceptance [1..12]...\n";
      return 1;
    }
    to_run.push_back(k);
  }
  if (to_run.empty())
    for (int k = 1; k <= 12; ++k) to_run.push_back(k);

  int failed = 0, skipped = 0;
  for (int k : to_run) {
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = fail(std::string("unexpected error: ") + e.what());
    }
    const char* tag = o.status == Status::Pass ? "PASS"
                      : o.status == Status::Fail ? "FAIL"
                                                 : "SKIP";
    std::cout << "criterion " << k << " (" << names[k - 1] << "): " << tag << " — "
              << o.detail << '\n';
    if (o.status == Status::Fail) ++failed;
    if (o.status == Status::Skip) ++skipped;
  }
  if (failed > 0) return 1;
  if (skipped == static_cast<int>(to_run.size())) return 77;
  return 0;
}
