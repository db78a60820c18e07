// graphembed: train graph embeddings, evaluate them on downstream tasks,
// benchmark scaling, generate synthetic graphs, and export 2-D layouts.
//
// File formats (all plain UTF-8 text):
//   edge list   one edge per line, "u v" or "u v w" with nonnegative integer
//               ids and positive weight (default 1.0); '#'/'%' comment lines;
//               input is symmetrized, self-loops dropped, duplicate edges
//               keep the first weight.
//   labels      "vertex_id class[,class...]" per line, ids as in the edge file.
//   embedding   header "n d", then n lines "vertex_id f_1 ... f_d" (6-decimal
//               fixed formatting, original vertex ids).
//   eval CSV    "task,metric,value,param,param_value,..."
//   bench CSV   "kind,method,n,m,threads,wall_seconds,peak_rss_bytes,iters"
//
// Exit codes: 0 success, 1 usage error, 2 invalid input, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include <graphembed/graphembed.hpp>

namespace {

using namespace graphembed;

CsrGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read graph file: " + path);
  return parse_edge_list(in);
}

LabelSet load_label_file(const std::string& path, const CsrGraph& g) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read label file: " + path);
  return load_labels(in, g);
}

NamedEmbedding load_embedding_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read embedding file: " + path);
  return read_embedding(in);
}

void write_embedding_file(const Embedding& z, const std::vector<std::uint64_t>& ids,
                          const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  write_embedding(z, ids, out);
  if (!out) throw ValidationError("write failed: " + path);
}

std::vector<double> parse_fraction_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("bad fraction \"" + piece + "\" in list \"" + text + "\"");
    }
  }
  if (out.empty()) throw ValidationError("empty fraction list");
  return out;
}

struct EmbedOptions {
  std::string input, output;
  std::string model = "force2vec-tdist";
  std::size_t dim = 128;
  double lr = 0.02;
  std::size_t neg = 5;
  std::size_t batch = 256;
  std::size_t iters = 600;
  std::size_t walk_length = 80;
  std::size_t walks = 10;
  std::size_t window = 10;
  double beta = 0.01;
  std::uint64_t seed = 42;
  int threads = 0;
  bool lr_decay = false;
};

void run_embed(const EmbedOptions& opt) {
  CsrGraph g = load_graph(opt.input);
  if (g.n == 0) throw ValidationError("graph is empty: " + opt.input);

  Embedding z;
  if (opt.model == "deepwalk") {
    z = deepwalk_embed(g, opt.walks, opt.walk_length, opt.window, opt.dim, opt.neg,
                       opt.lr, opt.iters, opt.seed, opt.threads);
  } else if (opt.model == "hope") {
    if (g.n > 20000)
      throw ValidationError(
          "hope stores a dense n x n proximity matrix; refusing n=" +
          std::to_string(g.n) + " > 20000 (dense-matrix limit)");
    if (opt.dim > g.n)
      throw ValidationError("hope needs --dim <= n (" + std::to_string(g.n) + ")");
    ProximityMatrix prox = katz_proximity(g, opt.beta);
    auto [us, ut] = hope_embed(prox, opt.dim, opt.seed);
    z = std::move(us);
  } else {
    TrainConfig cfg;
    cfg.dim = opt.dim;
    cfg.lr = opt.lr;
    cfg.negatives = opt.neg;
    cfg.batch_size = opt.batch;
    cfg.iterations = opt.iters;
    cfg.walk_length = opt.walk_length;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    cfg.lr_decay = opt.lr_decay;
    if (opt.model == "force2vec-walk") {
      cfg.model = Model::TDist;
      z = train_walk(g, cfg);
    } else {
      cfg.model = parse_model(opt.model.substr(std::string("force2vec-").size()));
      z = train(g, cfg);
    }
  }
  write_embedding_file(z, g.orig_ids, opt.output);
}

struct EvaluateOptions {
  std::string embedding, graph, labels, out;
  std::string task;
  std::string train_fracs = "0.5";
  std::string op = "hadamard";
  std::size_t k_min = 2, k_max = 8;
  std::size_t sample = 1000;
  std::uint64_t seed = 42;
  bool overwrite = false;
};

void deliver_reports(const std::vector<EvalReport>& reports, const EvaluateOptions& opt) {
  if (opt.out.empty()) {
    std::cout << kEvalCsvHeader << '\n' << eval_csv_rows(reports);
  } else {
    emit_csv(reports, opt.out, opt.overwrite);
  }
}

void run_evaluate(const EvaluateOptions& opt) {
  CsrGraph g = load_graph(opt.graph);
  Embedding z = align_to_graph(load_embedding_file(opt.embedding), g);
  std::vector<EvalReport> reports;

  if (opt.task == "nc") {
    LabelSet ls = load_label_file(opt.labels, g);
    for (double frac : parse_fraction_list(opt.train_fracs)) {
      auto [train_ids, test_ids] = split_labeled(ls, frac, opt.seed);
      DenseMatrix x_train(train_ids.size(), z.d), x_test(test_ids.size(), z.d);
      std::vector<std::vector<int>> y_train(train_ids.size()), y_test(test_ids.size());
      for (std::size_t i = 0; i < train_ids.size(); ++i) {
        std::copy(z.row(train_ids[i]), z.row(train_ids[i]) + z.d, x_train.row(i));
        y_train[i] = ls.labels[train_ids[i]];
      }
      for (std::size_t i = 0; i < test_ids.size(); ++i) {
        std::copy(z.row(test_ids[i]), z.row(test_ids[i]) + z.d, x_test.row(i));
        y_test[i] = ls.labels[test_ids[i]];
      }
      LogisticModel model =
          logistic_fit(x_train, y_train, ls.num_classes, ls.multilabel);
      Metrics m = classification_metrics(y_test, logistic_predict(model, x_test),
                                         ls.num_classes, ls.multilabel);
      EvalReport r;
      r.task = "nc";
      r.metrics = {{"accuracy", m.accuracy},
                   {"f1_micro", m.f1_micro},
                   {"f1_macro", m.f1_macro}};
      r.params = {{"train_frac", format_metric_value(frac)},
                  {"seed", std::to_string(opt.seed)}};
      if (model.degenerate) r.params.emplace_back("degenerate", "1");
      reports.push_back(std::move(r));
    }
  } else if (opt.task == "lp") {
    std::vector<LinkOperator> ops;
    if (opt.op == "all") {
      ops = {LinkOperator::Hadamard, LinkOperator::WL1, LinkOperator::WL2};
    } else {
      ops = {parse_operator(opt.op)};
    }
    for (LinkOperator op : ops) {
      double acc = 0.0;
      for (double frac : parse_fraction_list(opt.train_fracs)) {
        acc = link_prediction_accuracy(g, z, op, frac, opt.seed);
        EvalReport r;
        r.task = "lp";
        r.metrics = {{"accuracy", acc}};
        r.params = {{"operator", operator_name(op)},
                    {"train_frac", format_metric_value(frac)},
                    {"seed", std::to_string(opt.seed)}};
        reports.push_back(std::move(r));
      }
    }
  } else if (opt.task == "cluster") {
    SweepResult sweep = cluster_sweep(g, z, opt.k_min, opt.k_max, opt.seed);
    EvalReport r;
    r.task = "cluster";
    r.metrics = {{"modularity", sweep.best_q}};
    r.params = {{"best_k", std::to_string(sweep.best_k)},
                {"k_min", std::to_string(opt.k_min)},
                {"k_max", std::to_string(opt.k_max)},
                {"seed", std::to_string(opt.seed)}};
    reports.push_back(std::move(r));
  } else if (opt.task == "recon") {
    double acc = reconstruction_accuracy(g, z, opt.sample, opt.seed);
    EvalReport r;
    r.task = "recon";
    r.metrics = {{"reconstruction_accuracy", acc}};
    r.params = {{"sample", std::to_string(opt.sample)},
                {"seed", std::to_string(opt.seed)}};
    reports.push_back(std::move(r));
  }
  deliver_reports(reports, opt);
}

struct BenchOptions {
  std::string mode = "graph";
  std::string input;  // single mode may time an existing graph file
  std::string out;
  std::string model = "tdist";
  std::size_t base_n = 10000;
  std::size_t dim = 16;
  std::size_t iters = 10;
  std::size_t neg = 5;
  std::size_t batch = 256;
  int threads = 1;
  int max_threads = 8;
  int repeats = 3;
  std::uint64_t seed = 42;
  bool overwrite = false;
};

void run_bench(const BenchOptions& opt) {
  TrainConfig cfg;
  cfg.model = parse_model(opt.model);
  cfg.dim = opt.dim;
  cfg.iterations = opt.iters;
  cfg.negatives = opt.neg;
  cfg.batch_size = opt.batch;
  cfg.threads = opt.threads;
  cfg.seed = opt.seed;

  std::vector<BenchResult> results;
  if (opt.mode == "single") {
    CsrGraph g = opt.input.empty() ? make_bench_graph(opt.base_n, opt.seed)
                                   : load_graph(opt.input);
    cfg.threads = detail::cap_threads(opt.threads);
    results.push_back(time_embed(g, cfg, opt.repeats));
  } else {
    results = scaling_experiment(opt.mode, opt.base_n, opt.seed, cfg,
                                 opt.max_threads, opt.repeats);
  }
  if (opt.out.empty()) {
    std::cout << kBenchCsvHeader << '\n' << bench_csv_rows(results);
  } else {
    emit_csv(results, opt.out, opt.overwrite);
  }
}

struct GenerateOptions {
  std::string out, labels_out;
  std::string block_sizes;  // explicit comma list; wins over --n/--blocks
  std::size_t n = 1000;
  std::size_t blocks = 4;
  double p_in = 0.05;
  double p_out = 0.002;
  std::uint64_t seed = 42;
};

void run_generate(const GenerateOptions& opt) {
  std::vector<std::size_t> sizes;
  if (!opt.block_sizes.empty()) {
    std::stringstream ss(opt.block_sizes);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      try {
        long v = std::stol(piece);
        if (v <= 0) throw std::invalid_argument(piece);
        sizes.push_back(static_cast<std::size_t>(v));
      } catch (const std::exception&) {
        throw ValidationError("bad block size \"" + piece + "\"");
      }
    }
  } else {
    if (opt.blocks == 0 || opt.n == 0)
      throw ValidationError("need positive --n and --blocks");
    sizes.assign(opt.blocks, opt.n / opt.blocks);
    for (std::size_t i = 0; i < opt.n % opt.blocks; ++i) ++sizes[i];
  }
  auto [g, planted] = generate_sbm(sizes, opt.p_in, opt.p_out, opt.seed);

  std::ofstream out(opt.out, std::ios::trunc);
  if (!out) throw ValidationError("cannot open for writing: " + opt.out);
  serialize(g, out);
  if (!out) throw ValidationError("write failed: " + opt.out);

  if (!opt.labels_out.empty()) {
    std::ofstream lout(opt.labels_out, std::ios::trunc);
    if (!lout) throw ValidationError("cannot open for writing: " + opt.labels_out);
    for (std::size_t u = 0; u < g.n; ++u)
      lout << g.orig_ids[u] << ' ' << planted.labels[u][0] << '\n';
    if (!lout) throw ValidationError("write failed: " + opt.labels_out);
  }
}

struct SvgOptions {
  std::string embedding, labels, out;
};

void run_export_svg(const SvgOptions& opt) {
  NamedEmbedding ne = load_embedding_file(opt.embedding);
  LabelSet ls;
  bool have_labels = false;
  if (!opt.labels.empty()) {
    std::unordered_map<std::uint64_t, std::size_t> row_of;
    for (std::size_t r = 0; r < ne.ids.size(); ++r) row_of.emplace(ne.ids[r], r);
    std::ifstream in(opt.labels);
    if (!in) throw ValidationError("cannot read label file: " + opt.labels);
    ls = detail::load_labels_impl(
        in, ne.z.n, [&row_of](std::uint64_t id, std::size_t line_no) {
          auto it = row_of.find(id);
          if (it == row_of.end())
            throw ValidationError("label file line " + std::to_string(line_no) +
                                  ": vertex id " + std::to_string(id) +
                                  " not present in the embedding");
          return it->second;
        });
    have_labels = true;
  }
  write_svg(ne.z, have_labels ? &ls : nullptr, opt.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph embedding trainer, evaluator, and benchmark harness"};
  app.require_subcommand(1);
  std::function<void()> run;

  // ---- embed ----
  EmbedOptions embed_opt;
  CLI::App* embed = app.add_subcommand("embed", "train an embedding and write it");
  embed->add_option("--input", embed_opt.input, "edge-list file (\"u v [w]\" per line)")
      ->required();
  embed->add_option("--output", embed_opt.output, "embedding file to write")->required();
  embed
      ->add_option("--model", embed_opt.model,
                   "embedding method (default force2vec-tdist)")
      ->check(CLI::IsMember({"force2vec-tdist", "force2vec-sigmoid", "force2vec-fr",
                             "force2vec-linlog", "force2vec-fa", "force2vec-walk",
                             "deepwalk", "hope"}));
  embed->add_option("--dim", embed_opt.dim, "embedding dimension (default 128)");
  embed->add_option("--lr", embed_opt.lr, "learning rate (default 0.02)");
  embed->add_option("--neg", embed_opt.neg, "negative samples (default 5)");
  embed->add_option("--batch", embed_opt.batch, "minibatch size (default 256)");
  embed->add_option("--iters", embed_opt.iters,
                    "iterations; epochs for deepwalk (default 600)");
  embed->add_option("--walk-length", embed_opt.walk_length,
                    "walk length for walk-based models (default 80)");
  embed->add_option("--walks", embed_opt.walks, "walks per vertex, deepwalk (default 10)");
  embed->add_option("--window", embed_opt.window, "context window, deepwalk (default 10)");
  embed->add_option("--beta", embed_opt.beta, "decay for hope (default 0.01)");
  embed->add_option("--seed", embed_opt.seed, "random seed (default 42)");
  embed->add_option("--threads", embed_opt.threads, "worker threads (0 = hardware)");
  embed->add_flag("--lr-decay", embed_opt.lr_decay, "linearly decay the learning rate");
  embed->callback([&] { run = [&] { run_embed(embed_opt); }; });

  // ---- evaluate ----
  EvaluateOptions eval_opt;
  CLI::App* evaluate = app.add_subcommand("evaluate", "score an embedding on a task");
  evaluate->require_subcommand(1);
  auto add_common = [&](CLI::App* sub, bool needs_labels) {
    sub->add_option("--embedding", eval_opt.embedding, "embedding file")->required();
    sub->add_option("--graph", eval_opt.graph, "edge-list file")->required();
    if (needs_labels)
      sub->add_option("--labels", eval_opt.labels, "label file")->required();
    sub->add_option("--seed", eval_opt.seed, "random seed (default 42)");
    sub->add_option("--out", eval_opt.out, "CSV output path (default: stdout)");
    sub->add_flag("--overwrite", eval_opt.overwrite,
                  "truncate --out instead of appending");
  };
  CLI::App* nc = evaluate->add_subcommand("nc", "node classification");
  add_common(nc, true);
  nc->add_option("--train-frac", eval_opt.train_fracs,
                 "train fraction or comma list (default 0.5)");
  nc->callback([&] { run = [&] { eval_opt.task = "nc"; run_evaluate(eval_opt); }; });

  CLI::App* lp = evaluate->add_subcommand("lp", "link prediction");
  add_common(lp, false);
  lp->add_option("--operator", eval_opt.op, "hadamard|wl1|wl2|all (default hadamard)")
      ->check(CLI::IsMember({"hadamard", "wl1", "wl2", "all"}));
  lp->add_option("--train-frac", eval_opt.train_fracs,
                 "edge train fraction (default 0.5)");
  lp->callback([&] { run = [&] { eval_opt.task = "lp"; run_evaluate(eval_opt); }; });

  CLI::App* cluster = evaluate->add_subcommand("cluster", "k-means + modularity sweep");
  add_common(cluster, false);
  cluster->add_option("--k-min", eval_opt.k_min, "smallest k (default 2)");
  cluster->add_option("--k-max", eval_opt.k_max, "largest k (default 8)");
  cluster->callback(
      [&] { run = [&] { eval_opt.task = "cluster"; run_evaluate(eval_opt); }; });

  CLI::App* recon = evaluate->add_subcommand("recon", "graph reconstruction");
  add_common(recon, false);
  recon->add_option("--sample", eval_opt.sample, "sampled vertices (default 1000)");
  recon->callback(
      [&] { run = [&] { eval_opt.task = "recon"; run_evaluate(eval_opt); }; });

  // ---- bench ----
  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "scaling and timing experiments");
  bench->add_option("--mode", bench_opt.mode, "single|strong|weak|graph (default graph)")
      ->check(CLI::IsMember({"single", "strong", "weak", "graph"}));
  bench->add_option("--input", bench_opt.input,
                    "edge-list file for --mode single (default: generated)");
  bench->add_option("--base-n", bench_opt.base_n,
                    "base vertex count for generated graphs (default 10000)");
  bench->add_option("--model", bench_opt.model,
                    "force model: sigmoid|tdist|fr|linlog|forceatlas");
  bench->add_option("--dim", bench_opt.dim, "embedding dimension (default 16)");
  bench->add_option("--iters", bench_opt.iters, "training iterations (default 10)");
  bench->add_option("--neg", bench_opt.neg, "negative samples (default 5)");
  bench->add_option("--batch", bench_opt.batch, "minibatch size (default 256)");
  bench->add_option("--threads", bench_opt.threads,
                    "fixed worker count for graph/single modes (default 1)");
  bench->add_option("--max-threads", bench_opt.max_threads,
                    "top of the thread ladder for strong mode (default 8)");
  bench->add_option("--repeats", bench_opt.repeats, "runs per point (default 3)");
  bench->add_option("--seed", bench_opt.seed, "random seed (default 42)");
  bench->add_option("--out", bench_opt.out, "CSV output path (default: stdout)");
  bench->add_flag("--overwrite", bench_opt.overwrite,
                  "truncate --out instead of appending");
  bench->callback([&] { run = [&] { run_bench(bench_opt); }; });

  // ---- generate ----
  GenerateOptions gen_opt;
  CLI::App* generate = app.add_subcommand("generate", "write a planted-partition graph");
  generate->add_option("--out", gen_opt.out, "edge-list output path")->required();
  generate->add_option("--labels-out", gen_opt.labels_out,
                       "also write planted block labels");
  generate->add_option("--n", gen_opt.n, "vertex count (default 1000)");
  generate->add_option("--blocks", gen_opt.blocks, "number of equal blocks (default 4)");
  generate->add_option("--block-sizes", gen_opt.block_sizes,
                       "explicit comma-separated block sizes (overrides --n/--blocks)");
  generate->add_option("--p-in", gen_opt.p_in, "intra-block edge probability");
  generate->add_option("--p-out", gen_opt.p_out, "inter-block edge probability");
  generate->add_option("--seed", gen_opt.seed, "random seed (default 42)");
  generate->callback([&] { run = [&] { run_generate(gen_opt); }; });

  // ---- export-svg ----
  SvgOptions svg_opt;
  CLI::App* svg = app.add_subcommand("export-svg", "render a 2-D embedding as SVG");
  svg->add_option("--embedding", svg_opt.embedding, "embedding file (d must be 2)")
      ->required();
  svg->add_option("--labels", svg_opt.labels, "optional label file for colors");
  svg->add_option("--out", svg_opt.out, "SVG output path")->required();
  svg->callback([&] { run = [&] { run_export_svg(svg_opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    run();
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
