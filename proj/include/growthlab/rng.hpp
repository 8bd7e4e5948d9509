#ifndef GROWTHLAB_RNG_HPP
#define GROWTHLAB_RNG_HPP

#include <cstdint>

#include "growthlab/common.hpp"

namespace growthlab {

// Counter-based generator: value i depends only on (seed, i), so sampled
// sets are reproducible across platforms and worker counts.
inline constexpr const char* kRngAlgorithm = "splitmix64-ctr-v1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() { return splitmix64(seed_ ^ (counter_++ * 0x9e3779b97f4a7c15ULL)); }

  // Unbiased uniform draw in [0, n) via rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw ConfigError("Rng::below(0)");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace growthlab

#endif
