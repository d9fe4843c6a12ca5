#include "pedcmp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pedcmp/rng.hpp"

namespace pedcmp {

Pedigree wright_fisher(const WrightFisherConfig& config) {
  const int per_gen = config.generation_size;
  if (per_gen < 2 || per_gen % 2 != 0)
    throw InfeasibleConfigError("generation size must be even and >= 2");
  if (config.generations < 2)
    throw InfeasibleConfigError("at least two generations required");
  if (!(config.mean_offspring > 0.0))
    throw InfeasibleConfigError("mean offspring must be positive");

  Rng rng(config.seed);
  const int half = per_gen / 2;

  std::vector<PedRecord> records;
  records.reserve(size_t(config.generations) * per_gen);
  auto name = [](int gen, int slot) {
    return std::to_string(gen + 1) + "-" + std::to_string(slot + 1);
  };

  // prev[i] holds (index within generation, sex) of the previous cohort.
  std::vector<int> prev_males(half), prev_females(half);
  for (int i = 0; i < per_gen; ++i) {
    PedRecord r;
    r.id = name(0, i);
    r.father = r.mother = "0";
    r.sex = i < half ? 1 : 2;
    records.push_back(r);
    (i < half ? prev_males[i] : prev_females[i - half]) = i;
  }

  for (int gen = 1; gen < config.generations; ++gen) {
    // Couples: random pairing of the previous generation.
    rng.shuffle(prev_males);
    rng.shuffle(prev_females);

    std::vector<int> offspring(half, 0);
    int total = 0;
    for (int c = 0; c < half; ++c) total += offspring[c] = rng.poisson(config.mean_offspring);
    while (total > per_gen) {
      const int c = static_cast<int>(rng.below(half));
      if (offspring[c] > 0) {
        --offspring[c];
        --total;
      }
    }
    while (total < per_gen) {
      ++offspring[static_cast<int>(rng.below(half))];
      ++total;
    }

    std::vector<int> sexes(per_gen);
    for (int i = 0; i < per_gen; ++i) sexes[i] = i < half ? 1 : 2;
    rng.shuffle(sexes);

    std::vector<int> males, females;
    int slot = 0;
    for (int c = 0; c < half; ++c) {
      for (int b = 0; b < offspring[c]; ++b, ++slot) {
        PedRecord r;
        r.id = name(gen, slot);
        r.father = name(gen - 1, prev_males[c]);
        r.mother = name(gen - 1, prev_females[c]);
        r.sex = sexes[slot];
        records.push_back(r);
        (r.sex == 1 ? males : females).push_back(slot);
      }
    }
    prev_males = males;
    prev_females = females;
  }

  Pedigree p = Pedigree::validate(records);

  // Label leaves in creation order.
  uint64_t next_label = 1;
  for (int v = 0; v < p.size(); ++v)
    if (p.is_leaf(v)) records[v].label = next_label++;
  return Pedigree::validate(records);
}

PerturbResult perturb(const Pedigree& p, const PerturbConfig& config) {
  if (config.fraction < 0.0 || config.fraction > 1.0)
    throw PreconditionError("perturbation fraction must lie in [0, 1]");
  auto gm = generation_map(p);
  if (!gm) throw PreconditionError("perturbation requires a generational pedigree");

  Rng rng(config.seed);
  std::vector<PedRecord> records = p.to_records();

  std::vector<int> non_founders;
  for (int v = 0; v < p.size(); ++v)
    if (!p.is_founder(v)) non_founders.push_back(v);

  PerturbResult result;
  result.requested = static_cast<int>(
      std::ceil(config.fraction * static_cast<double>(non_founders.size())));
  rng.shuffle(non_founders);
  non_founders.resize(result.requested);

  // Working parent arrays, updated as reassignments land.
  std::vector<int> father(p.size()), mother(p.size());
  for (int v = 0; v < p.size(); ++v) {
    father[v] = p.father(v);
    mother[v] = p.mother(v);
  }

  // Same-gender individuals per generation, candidate pools.
  std::vector<std::vector<int>> males_by_gen(gm->max_generation),
      females_by_gen(gm->max_generation);
  for (int v = 0; v < p.size(); ++v)
    (p.gender(v) == Gender::Male ? males_by_gen : females_by_gen)[gm->generation[v] - 1]
        .push_back(v);

  auto mates_ok = [&](int v) {
    // Monogamy check restricted to one individual: all co-parents equal.
    int mate = -1;
    for (int c = 0; c < p.size(); ++c) {
      int other = -1;
      if (father[c] == v)
        other = mother[c];
      else if (mother[c] == v)
        other = father[c];
      else
        continue;
      if (mate == -1)
        mate = other;
      else if (mate != other)
        return false;
    }
    return true;
  };

  for (int v : non_founders) {
    const bool replace_father = rng.below(2) == 0;
    const int old_parent = replace_father ? father[v] : mother[v];
    const auto& pool = replace_father ? males_by_gen[gm->generation[old_parent] - 1]
                                      : females_by_gen[gm->generation[old_parent] - 1];

    std::vector<int> candidates;
    for (int w : pool) {
      if (w == old_parent) continue;
      if (config.preserve_monogamy) {
        (replace_father ? father : mother)[v] = w;
        const bool ok = mates_ok(w) && mates_ok(old_parent) &&
                        mates_ok(replace_father ? mother[v] : father[v]);
        (replace_father ? father : mother)[v] = old_parent;
        if (!ok) continue;
      }
      candidates.push_back(w);
    }
    if (candidates.empty()) {
      ++result.skipped;
      continue;
    }
    const int w = candidates[rng.below(candidates.size())];
    (replace_father ? father : mother)[v] = w;
    ++result.changed;
  }

  for (int v = 0; v < p.size(); ++v) {
    records[v].father = father[v] < 0 ? "0" : p.id(father[v]);
    records[v].mother = mother[v] < 0 ? "0" : p.id(mother[v]);
  }
  result.pedigree = Pedigree::validate(records);
  return result;
}

}  // namespace pedcmp
