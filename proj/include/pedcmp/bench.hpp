#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pedcmp/errors.hpp"

namespace pedcmp {

// Benchmark harness: for every grid point x and repetition, simulate a
// pedigree, perturb a fraction x of its non-founders, run the selected
// algorithms on the pair and emit one row per algorithm. All seeds derive
// from `seed`, so the row set is identical across runs and thread counts.
struct BenchConfig {
  int generations = 3;
  int generation_size = 14;
  double mean_offspring = 3.0;
  std::vector<double> x_grid;
  int reps = 50;
  std::vector<std::string> algorithms;  // bb | two-gen | dp | dp-gamma | random
  int k = 8;
  int gamma = 5;
  int trials = 100;
  int bb_cap = 64;
  bool monogamous_perturb = false;
  uint64_t seed = 0;
  int threads = 1;
};

struct BenchRow {
  double x = 0.0;
  int rep = 0;
  std::string algorithm;
  int distance = 0;
  double normalized = 0.0;  // distance / (|E(P)| + |E(P')|)
  double elapsed_ms = 0.0;
  uint64_t seed = 0;  // per-pair seed; regenerates the instance
};

std::vector<BenchRow> run_bench(const BenchConfig& config);

// Header `x,rep,algorithm,distance,normalized,elapsed_ms,seed`. Timings are
// written as 0 unless included, keeping default output byte-reproducible.
std::string bench_csv(const std::vector<BenchRow>& rows, bool include_timings);
std::vector<BenchRow> parse_bench_csv(std::istream& in);

struct SummaryRow {
  double x = 0.0;
  std::string algorithm;
  int n = 0;
  double mean = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0;
  bool has_diff_vs_bb = false;
  double mean_diff_vs_bb = 0.0;  // mean(normalized - bb normalized), per rep
};

struct RuntimeSummary {
  std::string algorithm;
  double q1 = 0.0, median = 0.0, q3 = 0.0;
};

struct Summary {
  std::vector<SummaryRow> rows;          // sorted by (x, algorithm)
  std::vector<RuntimeSummary> runtimes;  // per algorithm over all rows
};

Summary summarize(const std::vector<BenchRow>& rows);
std::string summary_text(const Summary& summary);

}  // namespace pedcmp
