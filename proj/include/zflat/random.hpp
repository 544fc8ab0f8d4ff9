#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zflat/matroid_union.hpp"
#include "zflat/structure.hpp"

namespace zflat {

/// Seeded source of small random matroids: a union of 2-4 rank-1 matroids on random subsets,
/// dualized with probability 1/2.
class RandomMatroids {
 public:
  explicit RandomMatroids(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Mask subset(int n) { return n == 0 ? 0 : std::uniform_int_distribution<Mask>(0, full_mask(n))(rng_); }

  Presentation presentation(int n) {
    Presentation p;
    const int k = uniform_int(2, 4);
    for (int i = 0; i < k; ++i) p.sets.push_back(subset(n));
    return p;
  }

  Matroid next(int min_n, int max_n) {
    const int n = uniform_int(min_n, max_n);
    auto ground = GroundSet::numbered(n);
    auto m = presentation_matroid(presentation(n), ground);
    return uniform_int(0, 1) ? dual(m) : m;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace zflat
