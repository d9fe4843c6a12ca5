#pragma once

#include <cstdint>

#include "pedcmp/errors.hpp"
#include "pedcmp/pedigree.hpp"

namespace pedcmp {

// Wright-Fisher style generational pedigree: `generations` non-overlapping
// generations of generation_size individuals each (half male, half female),
// monogamous couples formed within a generation, offspring counts drawn
// Poisson(mean_offspring) and then repaired by random increments/decrements
// until the next generation is filled exactly. All leaves are labeled
// 1..#leaves in creation order. Fully reproducible per seed.
struct WrightFisherConfig {
  int generations = 3;
  int generation_size = 14;  // must be even and >= 2
  double mean_offspring = 3.0;
  uint64_t seed = 0;
};

class InfeasibleConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

Pedigree wright_fisher(const WrightFisherConfig& config);

// Random rewiring: a fraction of non-founders each replace the parent of one
// uniformly chosen gender with a different uniformly chosen individual of
// the same gender and generation. With preserve_monogamy only reassignments
// that keep every individual monogamous are allowed; non-founders left with
// no legal target are skipped and counted.
struct PerturbConfig {
  double fraction = 0.0;  // in [0, 1]
  bool preserve_monogamy = false;
  uint64_t seed = 0;
};

struct PerturbResult {
  Pedigree pedigree;
  int requested = 0;  // ceil(fraction * #non-founders)
  int changed = 0;    // reassignments performed
  int skipped = 0;    // no valid target in monogamy-preserving mode
};

PerturbResult perturb(const Pedigree& p, const PerturbConfig& config);

}  // namespace pedcmp
