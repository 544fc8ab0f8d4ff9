#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "zflat/expansion.hpp"
#include "zflat/matroid.hpp"
#include "zflat/structure.hpp"

namespace zflat {

/// A list of subsets (A_1, ..., A_k); it presents the union of the rank-1 matroids with non-loop sets A_i.
struct Presentation {
  std::vector<Mask> sets;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Rank-1 matroid whose non-loops are `nonloops` (rank 0 if that set is empty).
inline Matroid rank_one(const GroundSet& ground, Mask nonloops) {
  const Mask E = ground.full();
  nonloops &= E;
  std::vector<CyclicFlat> zee{{E & ~nonloops, 0}};
  if (popcount(nonloops) >= 2) zee.push_back({E, 1});
  return Matroid::from_cyclic_flats(ground, std::move(zee));
}

/// M_1 v ... v M_k on a common ground set.
///
/// The union rank r(X) = min over Y inside X of (sum r_i(Y)) + |X - Y| is tabulated with the recurrence
/// g(X) = min(f(X), min_e g(X - e) + 1), since every Y inside X is reached by dropping one element at
/// a time. Cyclic flats are then recovered by scanning all subsets.
inline Matroid matroid_union(const GroundSet& ground, std::span<const Matroid> parts, int max_elements = 24) {
  require_budget(ground.size(), max_elements, "matroid union");
  for (const auto& p : parts) {
    if (!(p.ground() == ground)) throw Error("matroid union: all parts must share the ground set");
  }
  const int n = ground.size();
  std::vector<std::uint8_t> g(std::size_t{1} << n);
  for (Mask x = 0; x < g.size(); ++x) {
    int best = popcount(x);
    int f = 0;
    for (const auto& p : parts) f += p.rank(x);
    best = std::min(best, f);
    for_each_bit(x, [&](int e) { best = std::min(best, g[x & ~bit(e)] + 1); });
    g[x] = static_cast<std::uint8_t>(best);
  }
  return Matroid::from_cyclic_flats(ground, cyclic_flats_by_scan(g, n));
}

inline Matroid matroid_union(std::span<const Matroid> parts, int max_elements = 24) {
  if (parts.empty()) throw Error("matroid union of an empty list needs an explicit ground set");
  return matroid_union(parts.front().ground(), parts, max_elements);
}

inline Matroid presentation_matroid(const Presentation& p, const GroundSet& ground, int max_elements = 24) {
  std::vector<Matroid> parts;
  for (Mask a : p.sets) parts.push_back(rank_one(ground, a));
  return matroid_union(ground, parts, max_elements);
}

inline bool verify_presentation(const Matroid& m, const Presentation& p, int max_elements = 24) {
  return equals(m, presentation_matroid(p, m.ground(), max_elements));
}

/// Each A_i replaced by t copies of S_{A_i}, in the order A_{1,1..t}, A_{2,1..t}, ...
inline Presentation expand_presentation(const Presentation& p, const ExpansionMap& map) {
  Presentation out;
  for (Mask a : p.sets)
    for (int j = 0; j < map.t(); ++j) out.sets.push_back(map.blocks(a));
  return out;
}

/// M^t assembled as the union of the t-fold copies M_{i,j} of each part, where M_{i,j} is M_i with
/// every element of S_e - e added parallel to e (or as a loop when e is a loop of M_i).
inline Matroid expand_via_union(const Matroid& m, std::span<const Matroid> parts, int t, int max_elements = 24) {
  if (!equals(matroid_union(m.ground(), parts, max_elements), m)) {
    throw DecompositionMismatch("the parts do not have the matroid as their union");
  }
  const auto map = ExpansionMap::canonical(m.ground(), t);
  require_budget(map.expanded().size(), max_elements, "expansion via union");
  std::vector<Matroid> copies;
  for (const auto& part : parts) {
    auto parallel = from_rank_function(
        map.expanded(), [&](Mask x) { return part.rank(map.touched(x)); }, max_elements);
    for (int j = 0; j < t; ++j) copies.push_back(parallel);
  }
  return matroid_union(map.expanded(), copies, max_elements);
}

}  // namespace zflat
