#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace hypembed {

// Deterministic random source used by every stochastic routine.
//
// mt19937_64 with explicit output mappings (no std::uniform_*_distribution,
// whose results vary across standard libraries), so a (params, seed) pair
// reproduces byte-identical results everywhere. Draw order is part of each
// caller's contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x, r;
    do {
      x = eng_();
      r = x % n;
    } while (x - r > std::numeric_limits<std::uint64_t>::max() - (n - 1));
    return r;
  }

  // Fisher–Yates; consumes size-1 draws.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) {
      std::swap(v[k - 1], v[below(k)]);
    }
  }

  // Derive an independent stream seed from a master seed (splitmix64
  // finalizer). Used to hand per-trial seeds out of one master seed.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hypembed
