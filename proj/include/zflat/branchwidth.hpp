#pragma once

#include <cstdint>
#include <vector>

#include "zflat/branch_decomposition.hpp"
#include "zflat/connectivity.hpp"
#include "zflat/matroid.hpp"
#include "zflat/parallel.hpp"
#include "zflat/structure.hpp"

namespace zflat {

struct BranchWidthResult {
  int width = 0;
  BranchDecomposition decomposition;
};

/// Exact branch-width by dynamic programming over subsets.
///
/// g(X) is the least width of a rooted subtree whose leaves are X, counting the edge above its root:
/// g(X) = max(lambda(X) + 1, min over splits {A, X - A} of max(g(A), g(X - A))). Splits are enumerated
/// with A holding the lowest element of X, so each unordered split is seen once, and bw(M) = g(E).
/// Masks are processed layer by layer (by size), each layer in parallel.
inline BranchWidthResult branch_width_exact(const Matroid& m, int threads = 1, int max_elements = 18) {
  require_budget(m.size(), max_elements, "exact branch-width");
  const int n = m.size();
  BranchWidthResult out;
  if (n <= 1) {
    out.width = n;
    out.decomposition = decomposition_from_parts(n, {m.full()});
    return out;
  }
  const auto rk = rank_table(m, max_elements);
  const Mask E = m.full();
  const int r = m.rank();
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint8_t> g(size, 0);
  std::vector<Mask> choice(size, 0);

  std::vector<std::vector<Mask>> layers(n + 1);
  for (Mask x = 1; x < size; ++x) layers[popcount(x)].push_back(x);

  auto solve = [&](Mask x) {
    const int own = rk[x] + rk[E & ~x] - r + 1;
    if (popcount(x) == 1) {
      g[x] = static_cast<std::uint8_t>(own);
      return;
    }
    const Mask low = x & (~x + 1);
    const Mask rest = x & ~low;
    int best = 255;
    Mask arg = 0;
    // Ascending submasks of `rest`; A = low | sub must stay proper.
    for (Mask sub = 0;; sub = (sub - rest) & rest) {
      const Mask a = low | sub;
      if (a != x) {
        const int w = std::max(g[a], g[x & ~a]);
        if (w < best) {
          best = w;
          arg = a;
          if (best <= own) break;
        }
      }
      if (sub == rest) break;
    }
    g[x] = static_cast<std::uint8_t>(std::max(own, best));
    choice[x] = arg;
  };

  for (int k = 1; k <= n; ++k) {
    const auto& layer = layers[k];
    parallel_reduce_masks(
        layer.size(), threads, 0, [&](int&, Mask i) { solve(layer[i]); }, [](int&, int) {});
  }
  out.width = g[E];

  // Rebuild the tree from the recorded splits; the two halves of E are joined by a single edge.
  TreeBuilder b(n);
  auto build = [&](auto&& self, Mask x) -> int {
    if (popcount(x) == 1) return b.leaf(lowest_bit(x));
    const Mask a = choice[x];
    const int left = self(self, a);
    const int right = self(self, x & ~a);
    return b.join({left, right});
  };
  const Mask a = choice[E];
  const int left = build(build, a);
  const int right = build(build, E & ~a);
  b.connect(left, right);
  out.decomposition = std::move(b).finish();
  return out;
}

/// Three proper flats covering all but at most two elements.
inline FlatCover three_flats_cover_plus_two(const Matroid& m, int max_elements = 24) {
  return flats_cover(m, 3, 2, max_elements);
}

/// Three proper flats covering E; equivalent to bw(M) <= r(M).
inline FlatCover three_flats_cover(const Matroid& m, int max_elements = 24) {
  return flats_cover(m, 3, 0, max_elements);
}

}  // namespace zflat
