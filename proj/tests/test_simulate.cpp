#include "doctest.h"
#include "helpers.hpp"
#include "pedcmp/distance.hpp"
#include "pedcmp/simulate.hpp"

using namespace pedcmp;

TEST_SUITE_BEGIN("simulate");

TEST_CASE("two generations of four") {
  WrightFisherConfig cfg;
  cfg.generations = 2;
  cfg.generation_size = 4;
  cfg.seed = 3;
  const Pedigree p = wright_fisher(cfg);
  CHECK(p.size() == 8);
  const auto gm = generation_map(p);
  REQUIRE(gm.has_value());
  int gen1 = 0, gen2 = 0;
  for (int v = 0; v < p.size(); ++v) (gm->generation[v] == 1 ? gen1 : gen2)++;
  CHECK(gen1 == 4);
  CHECK(gen2 == 4);
}

TEST_CASE("structural guarantees hold across seeds") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    WrightFisherConfig cfg;
    cfg.generations = 3;
    cfg.generation_size = 14;
    cfg.mean_offspring = 3.0;
    cfg.seed = seed;
    const Pedigree p = wright_fisher(cfg);  // validate() runs inside
    CHECK(p.size() == 42);
    CHECK(is_monogamous(p));
    CHECK(generation_map(p).has_value());
    CHECK(is_leaf_labeled(p));
    // labels are 1..#leaves
    uint64_t max_label = 0;
    for (int v : p.labeled_individuals()) max_label = std::max(max_label, p.label(v));
    CHECK(max_label == p.labeled_individuals().size());
    // equal gender counts per generation
    const auto gm = generation_map(p);
    std::vector<std::array<int, 2>> counts(gm->max_generation, {0, 0});
    for (int v = 0; v < p.size(); ++v)
      ++counts[gm->generation[v] - 1][p.gender(v) == Gender::Male ? 0 : 1];
    for (const auto& [males, females] : counts) CHECK(males == females);
  }
}

TEST_CASE("same seed gives identical bytes") {
  WrightFisherConfig cfg;
  cfg.generations = 3;
  cfg.generation_size = 10;
  cfg.seed = 99;
  CHECK(pedigree_to_text(wright_fisher(cfg)) == pedigree_to_text(wright_fisher(cfg)));
}

TEST_CASE("infeasible configurations are rejected") {
  WrightFisherConfig odd;
  odd.generation_size = 5;
  CHECK_THROWS_AS(wright_fisher(odd), InfeasibleConfigError);
  WrightFisherConfig shallow;
  shallow.generations = 1;
  CHECK_THROWS_AS(wright_fisher(shallow), InfeasibleConfigError);
  WrightFisherConfig barren;
  barren.mean_offspring = 0.0;
  CHECK_THROWS_AS(wright_fisher(barren), InfeasibleConfigError);
}

TEST_CASE("zero fraction perturbation is the identity") {
  WrightFisherConfig cfg;
  cfg.generations = 3;
  cfg.generation_size = 8;
  cfg.seed = 4;
  const Pedigree p = wright_fisher(cfg);
  PerturbConfig pc;
  pc.fraction = 0.0;
  pc.seed = 11;
  const PerturbResult result = perturb(p, pc);
  CHECK(result.requested == 0);
  CHECK(pedigree_to_text(result.pedigree) == pedigree_to_text(p));
}

TEST_CASE("perturbation keeps individuals, genders and labels") {
  Rng rng(21);
  for (int round = 0; round < 20; ++round) {
    WrightFisherConfig cfg;
    cfg.generations = 2 + int(rng.below(2));
    cfg.generation_size = 8;
    cfg.seed = rng.next_u64();
    const Pedigree p = wright_fisher(cfg);
    PerturbConfig pc;
    pc.fraction = rng.unit();
    pc.seed = rng.next_u64();
    const Pedigree q = perturb(p, pc).pedigree;  // validates internally
    REQUIRE(q.size() == p.size());
    for (int v = 0; v < p.size(); ++v) {
      CHECK(q.id(v) == p.id(v));
      CHECK(q.gender(v) == p.gender(v));
      CHECK(q.label(v) == p.label(v));
    }
    CHECK(generation_map(q).has_value());
  }
}

TEST_CASE("full perturbation still validates") {
  WrightFisherConfig cfg;
  cfg.generations = 2;
  cfg.generation_size = 6;
  cfg.seed = 8;
  const Pedigree p = wright_fisher(cfg);
  PerturbConfig pc;
  pc.fraction = 1.0;
  pc.seed = 9;
  const PerturbResult result = perturb(p, pc);
  CHECK(result.requested == result.changed + result.skipped);
  CHECK(result.pedigree.size() == p.size());
}

TEST_CASE("monogamy-preserving mode keeps monogamy") {
  Rng rng(22);
  for (int round = 0; round < 20; ++round) {
    WrightFisherConfig cfg;
    cfg.generations = 3;
    cfg.generation_size = 8;
    cfg.seed = rng.next_u64();
    const Pedigree p = wright_fisher(cfg);
    PerturbConfig pc;
    pc.fraction = 0.6;
    pc.preserve_monogamy = true;
    pc.seed = rng.next_u64();
    const PerturbResult result = perturb(p, pc);
    CHECK(is_monogamous(result.pedigree));
  }
}

TEST_CASE("each reassignment moves at most one edge pair") {
  Rng rng(23);
  for (int round = 0; round < 10; ++round) {
    WrightFisherConfig cfg;
    cfg.generations = 2;
    cfg.generation_size = 6;
    cfg.seed = rng.next_u64();
    const Pedigree p = wright_fisher(cfg);
    PerturbConfig pc;
    pc.fraction = 0.4;
    pc.seed = rng.next_u64();
    const PerturbResult result = perturb(p, pc);
    const int exact = branch_and_bound(p, result.pedigree, 16).distance;
    CHECK(exact <= 2 * result.changed);
  }
}

TEST_CASE("perturbation output is seed-deterministic") {
  WrightFisherConfig cfg;
  cfg.generations = 3;
  cfg.generation_size = 10;
  cfg.seed = 77;
  const Pedigree p = wright_fisher(cfg);
  PerturbConfig pc;
  pc.fraction = 0.5;
  pc.seed = 123;
  CHECK(pedigree_to_text(perturb(p, pc).pedigree) ==
        pedigree_to_text(perturb(p, pc).pedigree));
}

TEST_SUITE_END();
