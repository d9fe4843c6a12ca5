#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "pedcmp/bench.hpp"
#include "pedcmp/distance.hpp"
#include "pedcmp/rng.hpp"
#include "pedcmp/simulate.hpp"

using namespace pedcmp;

namespace {

BenchConfig small_config() {
  BenchConfig cfg;
  cfg.generations = 2;
  cfg.generation_size = 6;
  cfg.x_grid = {0.0, 0.4};
  cfg.reps = 3;
  cfg.algorithms = {"bb", "dp", "random"};
  cfg.k = 8;
  cfg.trials = 20;
  cfg.bb_cap = 16;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("bench");

TEST_CASE("row layout and identities") {
  const auto rows = run_bench(small_config());
  REQUIRE(rows.size() == 2 * 3 * 3);
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto &a = rows[i - 1], &b = rows[i];
    CHECK(std::tie(a.x, a.rep, a.algorithm) <= std::tie(b.x, b.rep, b.algorithm));
  }
  for (const auto& row : rows) {
    CHECK(row.normalized >= 0.0);
    CHECK(row.normalized <= 1.0);
    if (row.x == 0.0) CHECK(row.distance == 0);  // identical pair
  }
}

TEST_CASE("rows can be regenerated from their stored seed") {
  const BenchConfig cfg = small_config();
  const auto rows = run_bench(cfg);
  for (const auto& row : rows) {
    if (row.algorithm != "bb") continue;
    WrightFisherConfig wf;
    wf.generations = cfg.generations;
    wf.generation_size = cfg.generation_size;
    wf.mean_offspring = cfg.mean_offspring;
    wf.seed = Rng::mix(row.seed ^ 1);
    const Pedigree p = wright_fisher(wf);
    PerturbConfig pc;
    pc.fraction = row.x;
    pc.seed = Rng::mix(row.seed ^ 2);
    const Pedigree q = perturb(p, pc).pedigree;
    CHECK(branch_and_bound(p, q, cfg.bb_cap).distance == row.distance);
    const double norm = double(row.distance) / (p.edge_count() + q.edge_count());
    CHECK(row.normalized == doctest::Approx(norm));
  }
}

TEST_CASE("csv output is byte-stable and timing-free by default") {
  const auto rows1 = run_bench(small_config());
  const auto rows2 = run_bench(small_config());
  CHECK(bench_csv(rows1, false) == bench_csv(rows2, false));
  CHECK(bench_csv(rows1, false).find(",0,") != std::string::npos);
  // header intact
  CHECK(bench_csv(rows1, false).rfind("x,rep,algorithm,distance,normalized,", 0) == 0);
}

TEST_CASE("threads do not change the rows") {
  BenchConfig threaded = small_config();
  threaded.threads = 4;
  CHECK(bench_csv(run_bench(threaded), false) ==
        bench_csv(run_bench(small_config()), false));
}

TEST_CASE("csv parses back") {
  const auto rows = run_bench(small_config());
  std::istringstream in(bench_csv(rows, true));
  const auto parsed = parse_bench_csv(in);
  REQUIRE(parsed.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].algorithm == rows[i].algorithm);
    CHECK(parsed[i].distance == rows[i].distance);
    CHECK(parsed[i].seed == rows[i].seed);
  }
}

TEST_CASE("summaries aggregate per grid point") {
  const auto rows = run_bench(small_config());
  const Summary summary = summarize(rows);
  REQUIRE(summary.rows.size() == 6);  // 2 x-points * 3 algorithms
  for (const auto& s : summary.rows) {
    CHECK(s.n == 3);
    if (s.x == 0.0) {
      CHECK(s.mean == 0.0);
      CHECK(s.median == 0.0);
    }
    REQUIRE(s.has_diff_vs_bb);
    if (s.algorithm == "bb") CHECK(s.mean_diff_vs_bb == 0.0);
    if (s.algorithm == "random") CHECK(s.mean_diff_vs_bb >= 0.0);
  }
  CHECK(summary.runtimes.size() == 3);
  const std::string text = summary_text(summary);
  CHECK(text.find("x,algorithm,n,mean") == 0);
}

TEST_CASE("single-row summary is that row") {
  BenchRow row;
  row.x = 0.2;
  row.rep = 0;
  row.algorithm = "random";
  row.distance = 4;
  row.normalized = 0.125;
  const Summary summary = summarize({row});
  REQUIRE(summary.rows.size() == 1);
  CHECK(summary.rows[0].mean == doctest::Approx(0.125));
  CHECK(summary.rows[0].median == doctest::Approx(0.125));
  CHECK(!summary.rows[0].has_diff_vs_bb);
}

TEST_CASE("bench rejects bad configurations") {
  BenchConfig cfg = small_config();
  cfg.algorithms = {"nonsense"};
  CHECK_THROWS_AS(run_bench(cfg), PreconditionError);
  BenchConfig too_big = small_config();
  too_big.bb_cap = 4;
  CHECK_THROWS_AS(run_bench(too_big), PreconditionError);
  // a task-level failure surfaces as an error even from worker threads
  BenchConfig wrong_gens = small_config();
  wrong_gens.generations = 3;
  wrong_gens.algorithms = {"two-gen"};
  wrong_gens.threads = 3;
  CHECK_THROWS_AS(run_bench(wrong_gens), PreconditionError);
}

TEST_SUITE_END();
