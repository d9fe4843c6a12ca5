#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pedcmp/bench.hpp"
#include "pedcmp/distance.hpp"
#include "pedcmp/gadgets.hpp"
#include "pedcmp/iso.hpp"
#include "pedcmp/ped_io.hpp"
#include "pedcmp/random_heuristic.hpp"
#include "pedcmp/simulate.hpp"

namespace {

using nlohmann::json;
using namespace pedcmp;

constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;
constexpr int kExitPrecondition = 3;

json report_json(const Pedigree& p, const Pedigree& q, const DistanceReport& report,
                 bool timings) {
  json j;
  j["distance"] = report.distance;
  j["algorithm"] = report.algorithm;
  j["params"] = report.params;
  if (timings) j["elapsed_ms"] = report.elapsed_ms;
  json matching = json::array();
  for (int v = 0; v < p.size(); ++v)
    if (report.matching.target[v] >= 0)
      matching.push_back({p.id(v), q.id(report.matching.target[v])});
  j["matching"] = matching;
  json well = json::array();
  for (const auto& [u, v] : report.well_matched) well.push_back({p.id(u), p.id(v)});
  j["well_matched"] = well;
  json deletions = json::array(), additions = json::array();
  for (const auto& [a, b] : report.path.deletions) deletions.push_back({a, b});
  for (const auto& [a, b] : report.path.additions) additions.push_back({a, b});
  j["edit_path"]["delete"] = deletions;
  j["edit_path"]["add"] = additions;
  return j;
}

void print_report(const Pedigree& p, const Pedigree& q, const DistanceReport& report,
                  bool timings) {
  std::cout << "distance " << report.distance << "\n";
  std::cout << "algorithm " << report.algorithm;
  for (const auto& [key, value] : report.params) std::cout << ' ' << key << '=' << value;
  std::cout << "\n";
  if (timings) std::cout << "elapsed_ms " << report.elapsed_ms << "\n";
  for (int v = 0; v < p.size(); ++v)
    if (report.matching.target[v] >= 0)
      std::cout << "match " << p.id(v) << " -> " << q.id(report.matching.target[v])
                << "\n";
  for (const auto& [a, b] : report.path.deletions)
    std::cout << "delete " << a << " -> " << b << "\n";
  for (const auto& [a, b] : report.path.additions)
    std::cout << "add " << a << " -> " << b << "\n";
}

std::vector<uint64_t> parse_int_list(const std::string& text) {
  std::vector<uint64_t> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) values.push_back(std::stoull(token));
  }
  return values;
}

int bench_threads() {
  if (const char* env = std::getenv("PEDCMP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pedigree comparison toolkit"};
  app.require_subcommand(1);

  // --- validate ---
  auto* cmd_validate = app.add_subcommand("validate", "check a pedigree file");
  std::string validate_file;
  cmd_validate->add_option("file", validate_file, "pedigree file")->required();

  // --- generate ---
  auto* cmd_generate = app.add_subcommand("generate", "simulate a Wright-Fisher pedigree");
  WrightFisherConfig wf;
  std::string generate_out;
  cmd_generate->add_option("--gens", wf.generations, "number of generations");
  cmd_generate->add_option("--size", wf.generation_size, "individuals per generation");
  cmd_generate->add_option("--lambda", wf.mean_offspring, "mean offspring per couple");
  cmd_generate->add_option("--seed", wf.seed, "random seed");
  cmd_generate->add_option("-o,--out", generate_out, "output file")->required();

  // --- perturb ---
  auto* cmd_perturb = app.add_subcommand("perturb", "randomly reassign parents");
  PerturbConfig pc;
  std::string perturb_in, perturb_out;
  cmd_perturb->add_option("--frac", pc.fraction, "fraction of non-founders to rewire");
  cmd_perturb->add_flag("--monogamous", pc.preserve_monogamy, "preserve monogamy");
  cmd_perturb->add_option("--seed", pc.seed, "random seed");
  cmd_perturb->add_option("input", perturb_in, "input pedigree")->required();
  cmd_perturb->add_option("-o,--out", perturb_out, "output file")->required();

  // --- iso ---
  auto* cmd_iso = app.add_subcommand("iso", "leaf-labeled isomorphism test");
  std::string iso_a, iso_b;
  cmd_iso->add_option("a", iso_a, "first pedigree")->required();
  cmd_iso->add_option("b", iso_b, "second pedigree")->required();

  // --- compare ---
  auto* cmd_compare = app.add_subcommand("compare", "edit distance between two pedigrees");
  std::string compare_a, compare_b, algo = "bb";
  int opt_k = 8, opt_gamma = 5, opt_trials = 100, opt_cap = 14;
  uint64_t opt_seed = 0;
  bool compare_json = false, compare_timings = false;
  cmd_compare->add_option("--algo", algo, "bb|two-gen|dp|dp-gamma|random")
      ->check(CLI::IsMember({"bb", "two-gen", "dp", "dp-gamma", "random"}));
  cmd_compare->add_option("--k", opt_k, "layer cost bound (dp)");
  cmd_compare->add_option("--gamma", opt_gamma, "assignments per layer (dp-gamma)");
  cmd_compare->add_option("--trials", opt_trials, "trials (random)");
  cmd_compare->add_option("--seed", opt_seed, "seed (random)");
  cmd_compare->add_option("--cap", opt_cap, "size cap (bb)");
  cmd_compare->add_flag("--json", compare_json, "JSON output");
  cmd_compare->add_flag("--timings", compare_timings, "include wall-clock timings");
  cmd_compare->add_option("a", compare_a, "first pedigree")->required();
  cmd_compare->add_option("b", compare_b, "second pedigree")->required();

  // --- gadget ---
  auto* cmd_gadget = app.add_subcommand("gadget", "structured instance generators");
  cmd_gadget->require_subcommand(1);

  auto* gadget_bipartite = cmd_gadget->add_subcommand(
      "bipartite", "pedigree encoding of a bipartite graph (edge list: `u v` per line)");
  std::string bip_edges, bip_out;
  gadget_bipartite->add_option("edges", bip_edges, "edge list file")->required();
  gadget_bipartite->add_option("-o,--out", bip_out, "output pedigree")->required();

  auto* gadget_mcip = cmd_gadget->add_subcommand(
      "mcip", "monogamous-pedigree pair from two integer multisets");
  std::string mcip_s1, mcip_s2, mcip_out1, mcip_out2;
  gadget_mcip->add_option("--s1", mcip_s1, "first multiset, comma separated")->required();
  gadget_mcip->add_option("--s2", mcip_s2, "second multiset, comma separated")->required();
  gadget_mcip->add_option("-o,--out", mcip_out1, "first output pedigree")->required();
  gadget_mcip->add_option("--out2", mcip_out2, "second output pedigree")->required();

  auto* gadget_leaflabel = cmd_gadget->add_subcommand(
      "leaflabel", "compatibly leaf-labeled pair from two unlabeled pedigrees");
  std::string ll_a, ll_b, ll_out1, ll_out2;
  uint64_t ll_seed = 0;
  gadget_leaflabel->add_option("a", ll_a, "first pedigree")->required();
  gadget_leaflabel->add_option("b", ll_b, "second pedigree")->required();
  gadget_leaflabel->add_option("--label-seed", ll_seed, "leaf labeling seed");
  gadget_leaflabel->add_option("-o,--out", ll_out1, "first output")->required();
  gadget_leaflabel->add_option("--out2", ll_out2, "second output")->required();

  // --- bench ---
  auto* cmd_bench = app.add_subcommand("bench", "simulate, perturb and compare");
  BenchConfig bench;
  std::string bench_out, bench_algos = "bb,dp,random", bench_grid;
  double bench_xmin = 0.0, bench_xmax = 0.45;
  int bench_points = 10;
  bool bench_json = false, bench_timings = false;
  cmd_bench->add_option("--gens", bench.generations, "generations");
  cmd_bench->add_option("--size", bench.generation_size, "individuals per generation");
  cmd_bench->add_option("--lambda", bench.mean_offspring, "mean offspring per couple");
  cmd_bench->add_option("--k", bench.k, "dp layer bound");
  cmd_bench->add_option("--gamma", bench.gamma, "dp-gamma width");
  cmd_bench->add_option("--trials", bench.trials, "random heuristic trials");
  cmd_bench->add_option("--reps", bench.reps, "repetitions per grid point");
  cmd_bench->add_option("--x", bench_grid, "explicit comma-separated x grid");
  cmd_bench->add_option("--x-min", bench_xmin, "grid start");
  cmd_bench->add_option("--x-max", bench_xmax, "grid end");
  cmd_bench->add_option("--x-points", bench_points, "grid points");
  cmd_bench->add_option("--algos", bench_algos, "comma-separated algorithms");
  cmd_bench->add_option("--seed", bench.seed, "master seed");
  cmd_bench->add_option("--bb-cap", bench.bb_cap, "branch-and-bound size cap");
  cmd_bench->add_flag("--monogamous", bench.monogamous_perturb,
                      "monogamy-preserving perturbation");
  cmd_bench->add_flag("--json", bench_json, "JSON rows instead of CSV");
  cmd_bench->add_flag("--timings", bench_timings, "include wall-clock timings");
  cmd_bench->add_option("-o,--out", bench_out, "output file (default stdout)");

  // --- summarize ---
  auto* cmd_summarize = app.add_subcommand("summarize", "aggregate a bench CSV");
  std::string summarize_in;
  cmd_summarize->add_option("csv", summarize_in, "bench CSV file, - for stdin")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*cmd_validate) {
      const Pedigree p = read_pedigree(validate_file);
      const auto gm = generation_map(p);
      std::cout << "individuals " << p.size() << "\n";
      std::cout << "edges " << p.edge_count() << "\n";
      int founders = 0;
      for (int v = 0; v < p.size(); ++v) founders += p.is_founder(v);
      std::cout << "founders " << founders << "\n";
      std::cout << "leaves " << leaf_individuals(p).size() << "\n";
      std::cout << "labeled " << p.labeled_individuals().size() << "\n";
      std::cout << "leaf_labeled " << (is_leaf_labeled(p) ? "yes" : "no") << "\n";
      std::cout << "monogamous " << (is_monogamous(p) ? "yes" : "no") << "\n";
      if (gm)
        std::cout << "generational yes " << gm->max_generation << "\n";
      else
        std::cout << "generational no\n";
      return 0;
    }

    if (*cmd_generate) {
      write_pedigree_file(generate_out, wright_fisher(wf));
      return 0;
    }

    if (*cmd_perturb) {
      const Pedigree p = read_pedigree(perturb_in);
      const PerturbResult result = perturb(p, pc);
      write_pedigree_file(perturb_out, result.pedigree);
      std::cout << "requested " << result.requested << " changed " << result.changed
                << " skipped " << result.skipped << "\n";
      return 0;
    }

    if (*cmd_iso) {
      const Pedigree a = read_pedigree(iso_a), b = read_pedigree(iso_b);
      if (!is_leaf_labeled(a) || !is_leaf_labeled(b)) {
        std::cerr << "error: both pedigrees must be leaf-labeled\n";
        return kExitPrecondition;
      }
      if (!compatibly_leaf_labeled(a, b)) {
        std::cout << "not isomorphic (leaf labels differ)\n";
        return kExitNegative;
      }
      const auto m = leaf_labeled_isomorphic(a, b);
      if (!m) {
        std::cout << "not isomorphic\n";
        return kExitNegative;
      }
      for (int v = 0; v < a.size(); ++v)
        std::cout << a.id(v) << " -> " << b.id(m->target[v]) << "\n";
      return 0;
    }

    if (*cmd_compare) {
      const Pedigree a = read_pedigree(compare_a), b = read_pedigree(compare_b);
      std::optional<DistanceReport> report;
      if (algo == "bb") {
        report = branch_and_bound(a, b, opt_cap);
      } else if (algo == "two-gen") {
        report = two_generation_exact(a, b);
      } else if (algo == "dp") {
        const auto gm_a = generation_map(a);
        if (gm_a) {
          int m = 0;
          std::vector<std::array<int, 2>> counts(gm_a->max_generation, {0, 0});
          for (int v = 0; v < a.size(); ++v)
            m = std::max(m, ++counts[gm_a->generation[v] - 1]
                                    [a.gender(v) == Gender::Male ? 0 : 1]);
          std::cerr << "note: enumeration budget <= T(m,k)^2 with T("
                    << m << "," << opt_k
                    << ") = " << bounded_matching_count(m, opt_k) << "\n";
        }
        report = dp_bounded(a, b, opt_k);
        if (!report) {
          std::cerr << "no matching stays under the layer bound k=" << opt_k
                    << "; rerun with a larger --k or --algo random\n";
          return kExitPrecondition;
        }
      } else if (algo == "dp-gamma") {
        report = dp_gamma_heuristic(a, b, opt_gamma);
      } else {
        report = random_matching(a, b, opt_trials, opt_seed);
      }
      if (compare_json)
        std::cout << report_json(a, b, *report, compare_timings).dump(2) << "\n";
      else
        print_report(a, b, *report, compare_timings);
      return 0;
    }

    if (*gadget_bipartite) {
      BipartiteGraph g;
      std::ifstream in(bip_edges);
      if (!in) {
        std::cerr << "error: cannot open '" << bip_edges << "'\n";
        return kExitInputError;
      }
      int u, v;
      while (in >> u >> v) {
        g.edges.emplace_back(u, v);
        g.left = std::max(g.left, u + 1);
        g.right = std::max(g.right, v + 1);
      }
      write_pedigree_file(bip_out, bipartite_to_pedigree(g));
      return 0;
    }

    if (*gadget_mcip) {
      const auto [t1, t2] = mcip_to_trees(parse_int_list(mcip_s1), parse_int_list(mcip_s2));
      write_pedigree_file(mcip_out1, tree_to_monogamous_pedigree(t1));
      write_pedigree_file(mcip_out2, tree_to_monogamous_pedigree(t2));
      return 0;
    }

    if (*gadget_leaflabel) {
      const Pedigree a = read_pedigree(ll_a), b = read_pedigree(ll_b);
      const auto [qa, qb] = leaf_label_gadget(a, b, ll_seed);
      write_pedigree_file(ll_out1, qa);
      write_pedigree_file(ll_out2, qb);
      return 0;
    }

    if (*cmd_bench) {
      if (!bench_grid.empty()) {
        std::istringstream in(bench_grid);
        std::string token;
        while (std::getline(in, token, ','))
          if (!token.empty()) bench.x_grid.push_back(std::stod(token));
      } else {
        for (int i = 0; i < bench_points; ++i)
          bench.x_grid.push_back(
              bench_points == 1
                  ? bench_xmin
                  : bench_xmin + (bench_xmax - bench_xmin) * i / (bench_points - 1));
      }
      std::istringstream algos(bench_algos);
      std::string token;
      while (std::getline(algos, token, ','))
        if (!token.empty()) bench.algorithms.push_back(token);
      bench.threads = bench_threads();

      const auto rows = run_bench(bench);
      std::string output;
      if (bench_json) {
        json j = json::array();
        for (const auto& row : rows)
          j.push_back({{"x", row.x},
                       {"rep", row.rep},
                       {"algorithm", row.algorithm},
                       {"distance", row.distance},
                       {"normalized", row.normalized},
                       {"elapsed_ms", bench_timings ? row.elapsed_ms : 0.0},
                       {"seed", row.seed}});
        output = j.dump(2) + "\n";
      } else {
        output = bench_csv(rows, bench_timings);
      }
      if (bench_out.empty()) {
        std::cout << output;
      } else {
        std::ofstream out(bench_out);
        out << output;
      }
      return 0;
    }

    if (*cmd_summarize) {
      std::vector<BenchRow> rows;
      if (summarize_in == "-") {
        rows = parse_bench_csv(std::cin);
      } else {
        std::ifstream in(summarize_in);
        if (!in) {
          std::cerr << "error: cannot open '" << summarize_in << "'\n";
          return kExitInputError;
        }
        rows = parse_bench_csv(in);
      }
      std::cout << summary_text(summarize(rows));
      return 0;
    }
  } catch (const PedigreeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return 0;
}
