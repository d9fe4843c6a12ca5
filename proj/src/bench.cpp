#include "pedcmp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <thread>

#include "pedcmp/distance.hpp"
#include "pedcmp/random_heuristic.hpp"
#include "pedcmp/rng.hpp"
#include "pedcmp/simulate.hpp"

namespace pedcmp {

namespace {

std::string format_double(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const double frac = pos - lo;
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.reps < 1) throw PreconditionError("bench requires reps >= 1");
  if (config.x_grid.empty()) throw PreconditionError("bench requires an x grid");
  if (config.algorithms.empty()) throw PreconditionError("bench requires algorithms");
  for (const auto& algo : config.algorithms) {
    if (algo != "bb" && algo != "two-gen" && algo != "dp" && algo != "dp-gamma" &&
        algo != "random")
      throw PreconditionError("unknown algorithm '" + algo + "'");
    if (algo == "bb" && config.generations * config.generation_size > config.bb_cap)
      throw PreconditionError(
          "branch and bound requested but generations*size exceeds its cap of " +
          std::to_string(config.bb_cap));
  }

  const size_t tasks = config.x_grid.size() * config.reps;
  std::vector<std::vector<BenchRow>> per_task(tasks);
  std::vector<std::string> task_errors(tasks);

  auto run_one = [&](size_t task) {
    const size_t xi = task / config.reps;
    const int rep = static_cast<int>(task % config.reps);
    const double x = config.x_grid[xi];
    const uint64_t task_seed = Rng::mix(config.seed ^ Rng::mix(task + 1));

    WrightFisherConfig wf;
    wf.generations = config.generations;
    wf.generation_size = config.generation_size;
    wf.mean_offspring = config.mean_offspring;
    wf.seed = Rng::mix(task_seed ^ 1);
    const Pedigree p = wright_fisher(wf);

    PerturbConfig pc;
    pc.fraction = x;
    pc.preserve_monogamy = config.monogamous_perturb;
    pc.seed = Rng::mix(task_seed ^ 2);
    const Pedigree q = perturb(p, pc).pedigree;

    const uint64_t algo_seed = Rng::mix(task_seed ^ 3);
    const double total_edges = p.edge_count() + q.edge_count();

    for (const auto& algo : config.algorithms) {
      const auto t0 = std::chrono::steady_clock::now();
      int distance = 0;
      if (algo == "bb") {
        distance = branch_and_bound(p, q, config.bb_cap).distance;
      } else if (algo == "two-gen") {
        distance = two_generation_exact(p, q).distance;
      } else if (algo == "dp") {
        // The exact layer-bounded program when it succeeds; the randomized
        // heuristic's answer when no matching stays under the bound.
        try {
          auto report = dp_bounded(p, q, config.k);
          distance = report ? report->distance
                            : random_matching(p, q, config.trials, algo_seed).distance;
        } catch (const PreconditionError&) {
          distance = random_matching(p, q, config.trials, algo_seed).distance;
        }
      } else if (algo == "dp-gamma") {
        try {
          distance = dp_gamma_heuristic(p, q, config.gamma).distance;
        } catch (const PreconditionError&) {
          distance = random_matching(p, q, config.trials, algo_seed).distance;
        }
      } else {
        distance = random_matching(p, q, config.trials, algo_seed).distance;
      }
      BenchRow row;
      row.x = x;
      row.rep = rep;
      row.algorithm = algo;
      row.distance = distance;
      row.normalized = total_edges > 0 ? distance / total_edges : 0.0;
      row.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
      row.seed = task_seed;
      per_task[task].push_back(std::move(row));
    }
  };
  // Exceptions must not escape worker threads; surface the first one after
  // the pool drains.
  auto run_task = [&](size_t task) {
    try {
      run_one(task);
    } catch (const std::exception& e) {
      task_errors[task] = e.what();
    }
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    for (size_t task = 0; task < tasks; ++task) run_task(task);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (size_t task = next.fetch_add(1); task < tasks; task = next.fetch_add(1))
          run_task(task);
      });
    for (auto& worker : pool) worker.join();
  }
  for (const auto& error : task_errors)
    if (!error.empty()) throw PreconditionError(error);

  std::vector<BenchRow> rows;
  rows.reserve(tasks * config.algorithms.size());
  for (auto& task_rows : per_task)
    for (auto& row : task_rows) rows.push_back(std::move(row));
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.rep != b.rep) return a.rep < b.rep;
    return a.algorithm < b.algorithm;
  });
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool include_timings) {
  std::string out = "x,rep,algorithm,distance,normalized,elapsed_ms,seed\n";
  for (const BenchRow& row : rows) {
    out += format_double(row.x, 4);
    out += ',' + std::to_string(row.rep);
    out += ',' + row.algorithm;
    out += ',' + std::to_string(row.distance);
    out += ',' + format_double(row.normalized, 6);
    out += ',';
    out += include_timings ? format_double(row.elapsed_ms, 3) : "0";
    out += ',' + std::to_string(row.seed) + '\n';
  }
  return out;
}

std::vector<BenchRow> parse_bench_csv(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream fields(line);
    std::string field;
    BenchRow row;
    std::getline(fields, field, ',');
    row.x = std::stod(field);
    std::getline(fields, field, ',');
    row.rep = std::stoi(field);
    std::getline(fields, row.algorithm, ',');
    std::getline(fields, field, ',');
    row.distance = std::stoi(field);
    std::getline(fields, field, ',');
    row.normalized = std::stod(field);
    std::getline(fields, field, ',');
    row.elapsed_ms = std::stod(field);
    std::getline(fields, field, ',');
    row.seed = std::stoull(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

Summary summarize(const std::vector<BenchRow>& rows) {
  Summary summary;

  std::map<std::pair<double, std::string>, std::vector<const BenchRow*>> groups;
  std::map<std::pair<double, int>, double> bb_norm;
  std::map<std::string, std::vector<double>> runtimes;
  for (const BenchRow& row : rows) {
    groups[{row.x, row.algorithm}].push_back(&row);
    if (row.algorithm == "bb") bb_norm[{row.x, row.rep}] = row.normalized;
    runtimes[row.algorithm].push_back(row.elapsed_ms);
  }

  for (const auto& [key, group] : groups) {
    SummaryRow s;
    s.x = key.first;
    s.algorithm = key.second;
    s.n = static_cast<int>(group.size());
    std::vector<double> values;
    double diff_sum = 0.0;
    int diff_n = 0;
    for (const BenchRow* row : group) {
      values.push_back(row->normalized);
      s.mean += row->normalized;
      auto it = bb_norm.find({row->x, row->rep});
      if (it != bb_norm.end()) {
        diff_sum += row->normalized - it->second;
        ++diff_n;
      }
    }
    s.mean /= s.n;
    s.q1 = quantile(values, 0.25);
    s.median = quantile(values, 0.5);
    s.q3 = quantile(values, 0.75);
    if (diff_n > 0) {
      s.has_diff_vs_bb = true;
      s.mean_diff_vs_bb = diff_sum / diff_n;
    }
    summary.rows.push_back(std::move(s));
  }

  for (const auto& [algo, values] : runtimes)
    summary.runtimes.push_back(
        {algo, quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75)});
  return summary;
}

std::string summary_text(const Summary& summary) {
  std::string out =
      "x,algorithm,n,mean,q1,median,q3,mean_minus_bb\n";
  for (const SummaryRow& s : summary.rows) {
    out += format_double(s.x, 4) + ',' + s.algorithm + ',' + std::to_string(s.n);
    out += ',' + format_double(s.mean, 6) + ',' + format_double(s.q1, 6);
    out += ',' + format_double(s.median, 6) + ',' + format_double(s.q3, 6);
    out += ',';
    out += s.has_diff_vs_bb ? format_double(s.mean_diff_vs_bb, 6) : std::string("NA");
    out += '\n';
  }
  out += "\nruntime_ms,algorithm,q1,median,q3\n";
  for (const RuntimeSummary& r : summary.runtimes) {
    out += "runtime," + r.algorithm + ',' + format_double(r.q1, 3);
    out += ',' + format_double(r.median, 3) + ',' + format_double(r.q3, 3) + '\n';
  }
  return out;
}

}  // namespace pedcmp
