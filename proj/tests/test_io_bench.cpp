#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "helpers.hpp"

using namespace graphembed;

TEST_CASE("embedding files round-trip through write and read") {
  Embedding z = testutil::random_embedding(7, 3, 0.4, 9);
  std::vector<std::uint64_t> ids = {5, 0, 99, 3, 12, 7, 42};
  std::ostringstream out;
  write_embedding(z, ids, out);

  std::istringstream header_check(out.str());
  std::string first;
  std::getline(header_check, first);
  REQUIRE(first == "7 3");

  std::istringstream in(out.str());
  NamedEmbedding ne = read_embedding(in);
  REQUIRE(ne.ids == ids);
  REQUIRE(ne.z.n == 7);
  REQUIRE(ne.z.d == 3);
  for (std::size_t i = 0; i < z.data.size(); ++i)
    REQUIRE(std::abs(ne.z.data[i] - z.data[i]) <= 5e-7);  // 6-decimal fixed format
}

TEST_CASE("embedding reader: malformed inputs fail with line context") {
  std::istringstream empty("");
  REQUIRE_THROWS_AS(read_embedding(empty), ValidationError);
  std::istringstream bad_header("x 3\n");
  REQUIRE_THROWS_AS(read_embedding(bad_header), ValidationError);
  std::istringstream short_row("2 3\n0 1.0 2.0 3.0\n1 1.0 2.0\n");
  REQUIRE_THROWS_WITH(read_embedding(short_row),
                      Catch::Matchers::ContainsSubstring("line 3"));
  std::istringstream missing_row("2 2\n0 1.0 2.0\n");
  REQUIRE_THROWS_AS(read_embedding(missing_row), ValidationError);
  std::istringstream bad_value("1 2\n0 1.0 zzz\n");
  REQUIRE_THROWS_AS(read_embedding(bad_value), ValidationError);

  REQUIRE_THROWS_AS(write_embedding(Embedding(2, 2), {1}, std::cout), ValidationError);
}

TEST_CASE("align_to_graph reorders rows by original vertex id") {
  CsrGraph g = parse_edge_list("10 20\n20 30\n");
  NamedEmbedding ne;
  ne.ids = {30, 10, 20};  // a permutation of the graph's original ids
  ne.z = Embedding(3, 2);
  for (std::size_t i = 0; i < 3; ++i) ne.z.row(i)[0] = static_cast<double>(i);
  Embedding aligned = align_to_graph(ne, g);
  REQUIRE(aligned.row(0)[0] == 1.0);  // vertex 10 took row 1 of the file
  REQUIRE(aligned.row(1)[0] == 2.0);
  REQUIRE(aligned.row(2)[0] == 0.0);

  NamedEmbedding wrong = ne;
  wrong.ids = {30, 10, 99};
  REQUIRE_THROWS_AS(align_to_graph(wrong, g), ValidationError);
  NamedEmbedding dup = ne;
  dup.ids = {30, 10, 10};
  REQUIRE_THROWS_AS(align_to_graph(dup, g), ValidationError);
  NamedEmbedding small;
  small.ids = {10};
  small.z = Embedding(1, 2);
  REQUIRE_THROWS_AS(align_to_graph(small, g), ValidationError);
}

TEST_CASE("svg export: frame, one dot per vertex, class colors") {
  Embedding z(3, 2);
  z.row(0)[0] = -1.0;
  z.row(0)[1] = -1.0;
  z.row(1)[0] = 1.0;
  z.row(1)[1] = 1.0;
  z.row(2)[0] = 0.0;
  z.row(2)[1] = 0.0;
  LabelSet ls;
  ls.labels = {{0}, {1}, {}};
  ls.num_classes = 2;

  std::string svg = svg_scatter(z, &ls);
  REQUIRE(svg.find("<svg") != std::string::npos);
  REQUIRE(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
  std::size_t circles = 0, at = 0;
  while ((at = svg.find("<circle", at)) != std::string::npos) {
    ++circles;
    ++at;
  }
  REQUIRE(circles == 3);
  REQUIRE(svg.find(kSvgPalette[0]) != std::string::npos);
  REQUIRE(svg.find(kSvgPalette[1]) != std::string::npos);
  REQUIRE(svg.find("</svg>") != std::string::npos);

  std::string plain = svg_scatter(z, nullptr);  // unlabeled: neutral gray dots
  REQUIRE(plain.find(kSvgPalette[0]) == std::string::npos);

  Embedding wrong(3, 3);
  REQUIRE_THROWS_WITH(svg_scatter(wrong, nullptr),
                      Catch::Matchers::ContainsSubstring("--dim 2"));

  Embedding single(1, 2);  // degenerate span centers the dot
  std::string centered = svg_scatter(single, nullptr);
  REQUIRE(centered.find("cx=\"500.00\"") != std::string::npos);
}

TEST_CASE("rss sampling sees the current process footprint") {
  REQUIRE(detail::read_rss_bytes() > 0);
  detail::RssSampler sampler;
  std::vector<double> ballast(4 << 20, 1.5);  // ~32 MB so the peak moves
  std::this_thread::sleep_for(std::chrono::milliseconds(120));
  std::size_t peak = sampler.stop();
  REQUIRE(peak > 32u * 1024 * 1024);
  REQUIRE(ballast[123] == 1.5);
}

TEST_CASE("time_embed reports the configured run shape") {
  CsrGraph g = make_bench_graph(1000, 3);
  TrainConfig cfg;
  cfg.dim = 4;
  cfg.iterations = 2;
  cfg.threads = 1;
  BenchResult r = time_embed(g, cfg, 2);
  REQUIRE(r.kind == "single");
  REQUIRE(r.method == "force2vec-tdist");
  REQUIRE(r.n == g.n);
  REQUIRE(r.m == g.m);
  REQUIRE(r.threads == 1);
  REQUIRE(r.iters == 2);
  REQUIRE(r.wall_seconds > 0.0);
  REQUIRE(r.peak_rss_bytes > 0);
  REQUIRE_THROWS_AS(time_embed(g, cfg, 0), ValidationError);
}

TEST_CASE("doubling the iteration budget roughly doubles the wall time") {
  CsrGraph g = make_bench_graph(4000, 5);
  TrainConfig cfg;
  cfg.dim = 16;
  cfg.threads = 1;
  cfg.iterations = 20;
  double t1 = time_embed(g, cfg, 3).wall_seconds;
  cfg.iterations = 40;
  double t2 = time_embed(g, cfg, 3).wall_seconds;
  REQUIRE(t2 / t1 > 1.4);  // generous band around the 2.0 ideal
  REQUIRE(t2 / t1 < 2.9);
}

TEST_CASE("benchmark graph: size, degree, determinism") {
  CsrGraph g = make_bench_graph(2000, 11);
  REQUIRE(g.n == 2000);
  double avg_degree = 2.0 * static_cast<double>(g.m) / static_cast<double>(g.n);
  REQUIRE(avg_degree > 6.0);
  REQUIRE(avg_degree < 14.0);
  REQUIRE(make_bench_graph(2000, 11) == g);
  REQUIRE_THROWS_AS(make_bench_graph(10, 1), ValidationError);
}

TEST_CASE("scaling experiments produce the documented ladders") {
  TrainConfig cfg;
  cfg.dim = 4;
  cfg.iterations = 1;
  cfg.threads = 1;

  auto graph_pts = scaling_experiment("graph", 1000, 2, cfg, 8, 1);
  REQUIRE(graph_pts.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(graph_pts[i].kind == "graph");
    REQUIRE(graph_pts[i].n == 1000u << i);
    REQUIRE(graph_pts[i].threads == graph_pts[0].threads);
  }

  auto strong_pts = scaling_experiment("strong", 1000, 2, cfg, 4, 1);
  REQUIRE(strong_pts.size() == 3);  // 1, 2, 4 before capping
  for (const auto& p : strong_pts) {
    REQUIRE(p.n == 1000);
    REQUIRE(p.threads >= 1);
  }

  auto weak_pts = scaling_experiment("weak", 1000, 2, cfg, 8, 1);
  REQUIRE(weak_pts.size() == 5);
  REQUIRE(weak_pts[4].n == 16000);

  REQUIRE_THROWS_AS(scaling_experiment("diagonal", 1000, 2, cfg), ValidationError);
  REQUIRE_THROWS_AS(scaling_experiment("graph", 10, 2, cfg), ValidationError);
}

TEST_CASE("bench results serialize to the documented CSV schema") {
  BenchResult r;
  r.kind = "strong";
  r.method = "force2vec-tdist";
  r.n = 10;
  r.m = 20;
  r.threads = 2;
  r.wall_seconds = 0.125;
  r.peak_rss_bytes = 4096;
  r.iters = 7;
  REQUIRE(bench_csv_rows({r}) == "strong,force2vec-tdist,10,20,2,0.125000,4096,7\n");

  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "graphembed_bench_csv_test.csv";
  fs::remove(tmp);
  emit_csv(std::vector<BenchResult>{r}, tmp.string(), false);
  emit_csv(std::vector<BenchResult>{r}, tmp.string(), false);
  std::ifstream in(tmp);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  REQUIRE(lines[0] == kBenchCsvHeader);
  REQUIRE(lines[1] == lines[2]);

  // Round trip: the emitted row parses back to the same values.
  std::stringstream row(lines[1]);
  std::string kind, method, rest;
  std::getline(row, kind, ',');
  std::getline(row, method, ',');
  REQUIRE(kind == "strong");
  REQUIRE(method == "force2vec-tdist");
  std::size_t n, m, rss, iters;
  int threads;
  double wall;
  char c;
  row >> n >> c >> m >> c >> threads >> c >> wall >> c >> rss >> c >> iters;
  REQUIRE(n == 10);
  REQUIRE(m == 20);
  REQUIRE(threads == 2);
  REQUIRE(wall == 0.125);
  REQUIRE(rss == 4096);
  REQUIRE(iters == 7);
  fs::remove(tmp);
}

TEST_CASE("thread cap respects the hardware limit") {
  int hw = detail::hardware_threads();
  REQUIRE(hw >= 1);
  REQUIRE(detail::cap_threads(1) == 1);
  REQUIRE(detail::cap_threads(hw) == hw);
  REQUIRE(detail::cap_threads(hw + 100) == hw);
}

TEST_CASE("dense matrix kernels: multiply, transpose, norms") {
  DenseMatrix a(2, 3);
  a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
  a(1, 0) = 4; a(1, 1) = 5; a(1, 2) = 6;
  DenseMatrix b(3, 2);
  b(0, 0) = 7; b(0, 1) = 8;
  b(1, 0) = 9; b(1, 1) = 10;
  b(2, 0) = 11; b(2, 1) = 12;
  DenseMatrix c = matmul(a, b);
  REQUIRE(c(0, 0) == 58);
  REQUIRE(c(0, 1) == 64);
  REQUIRE(c(1, 0) == 139);
  REQUIRE(c(1, 1) == 154);

  DenseMatrix at = transpose(a);
  REQUIRE(at.rows == 3);
  REQUIRE(at(2, 1) == 6);
  REQUIRE(frobenius_norm(a) == Catch::Approx(std::sqrt(91.0)));
  REQUIRE(max_abs(a) == 6.0);
}
