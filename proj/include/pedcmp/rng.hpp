#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace pedcmp {

// Seedable generator with portable output. The raw stream is std::mt19937_64
// (fully specified by the standard); the samplers below are written out
// explicitly instead of using std::*_distribution, whose algorithms are
// implementation-defined. Identical seeds therefore produce identical
// pedigrees, matchings and CSV rows on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), gen_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
  uint64_t below(uint64_t n) {
    const uint64_t limit = n * ((~uint64_t{0}) / n);
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Poisson draw by Knuth's product method; fine for the small lambdas used
  // by the simulator.
  int poisson(double lambda) {
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= unit();
    } while (p > limit);
    return k - 1;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Derive an independent, reproducible child stream.
  Rng split(uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream))); }

  static uint64_t mix(uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace pedcmp
