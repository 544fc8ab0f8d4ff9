#pragma once

// Brute-force reference computations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "zflat/zflat.hpp"

namespace oracle {

using zflat::Mask;

/// Rank table straight from the cyclic flats: r(X) = min over Z of r(Z) + |X - Z|.
inline std::vector<int> rank_by_flats(const zflat::Matroid& m) {
  std::vector<int> r(std::size_t{1} << m.size());
  for (Mask x = 0; x < r.size(); ++x) {
    int best = zflat::popcount(x);
    for (const auto& z : m.cyclic_flats()) best = std::min(best, z.rank + zflat::popcount(x & ~z.set));
    r[x] = best;
  }
  return r;
}

/// Rank recomputed as a minimum over every cyclic subset A of X of r(A) + |X - A|, with the cyclic
/// sets read off the given table.
inline std::vector<int> rank_by_cyclic_sets(const std::vector<int>& table, int n) {
  std::vector<Mask> cyclic;
  for (Mask x = 0; x < table.size(); ++x) {
    bool ok = true;
    for (int e = 0; e < n && ok; ++e)
      if (x >> e & 1) ok = table[x & ~(Mask{1} << e)] == table[x];
    if (ok) cyclic.push_back(x);
  }
  std::vector<int> out(table.size());
  for (Mask x = 0; x < table.size(); ++x) {
    int best = 1 << 20;
    for (Mask a : cyclic)
      if ((a & ~x) == 0) best = std::min(best, table[a] + zflat::popcount(x & ~a));
    out[x] = best;
  }
  return out;
}

/// Whether `table` satisfies the rank axioms: r(0) = 0, unit increase, submodular.
inline bool is_rank_function(const std::vector<int>& table, int n) {
  if (table[0] != 0) return false;
  for (Mask x = 0; x < table.size(); ++x)
    for (int e = 0; e < n; ++e) {
      if (x >> e & 1) continue;
      const int d = table[x | (Mask{1} << e)] - table[x];
      if (d < 0 || d > 1) return false;
      for (int f = e + 1; f < n; ++f) {
        if (x >> f & 1) continue;
        const Mask xe = x | (Mask{1} << e), xf = x | (Mask{1} << f);
        if (table[xe] + table[xf] < table[xe | xf] + table[x]) return false;
      }
    }
  return true;
}

/// An unrooted tree with leaves 0..n-1 labeled by elements and internal vertices after them.
struct Tree {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Every cubic tree whose leaves are labeled 0..n-1 (n >= 2), built by inserting leaf k into each
/// edge of each tree on k leaves. There are (2n-5)!! of them for n >= 3.
inline std::vector<Tree> all_cubic_trees(int n) {
  std::vector<Tree> trees;
  if (n == 2) {
    trees.push_back({2, {{0, 1}}});
    return trees;
  }
  // Star on leaves 0, 1, 2 with center n (internal vertices are numbered from n upward).
  trees.push_back({n + 1, {{0, n}, {1, n}, {2, n}}});
  for (int leaf = 3; leaf < n; ++leaf) {
    std::vector<Tree> next;
    for (const auto& t : trees) {
      for (std::size_t i = 0; i < t.edges.size(); ++i) {
        Tree u = t;
        const int mid = u.vertices++;
        auto [a, b] = u.edges[i];
        u.edges[i] = {a, mid};
        u.edges.emplace_back(mid, b);
        u.edges.emplace_back(mid, leaf);
        next.push_back(std::move(u));
      }
    }
    trees = std::move(next);
  }
  return trees;
}

/// Width of the tree with leaf i labeled by element i: max over edges of lambda + 1.
inline int tree_width(const Tree& t, int n, const std::vector<int>& rank) {
  const Mask full = (Mask{1} << n) - 1;
  const int r = rank[full];
  std::vector<std::vector<int>> adj(t.vertices);
  for (auto [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  int width = 0;
  for (auto [a, b] : t.edges) {
    // Leaves reachable from b without crossing the edge.
    Mask side = 0;
    std::vector<int> stack{b};
    std::vector<char> seen(t.vertices, 0);
    seen[a] = seen[b] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v < n) side |= Mask{1} << v;
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    width = std::max(width, rank[side] + rank[full & ~side] - r + 1);
  }
  return width;
}

/// Branch-width as the minimum width over all cubic trees (n >= 2).
inline int branch_width_by_trees(const zflat::Matroid& m) {
  const int n = m.size();
  if (n <= 1) return n;
  const auto rank = rank_by_flats(m);
  int best = 1 << 20;
  for (const auto& t : all_cubic_trees(n)) best = std::min(best, tree_width(t, n, rank));
  return best;
}

/// Bases counted directly: sets of size r(M) and rank r(M).
inline std::uint64_t count_bases(const zflat::Matroid& m) {
  std::uint64_t count = 0;
  const auto rank = rank_by_flats(m);
  for (Mask x = 0; x < rank.size(); ++x)
    if (zflat::popcount(x) == m.rank() && rank[x] == m.rank()) ++count;
  return count;
}

/// Flats of M, by closure test on the table.
inline std::vector<Mask> all_flats(const std::vector<int>& rank, int n) {
  std::vector<Mask> out;
  for (Mask x = 0; x < rank.size(); ++x) {
    bool closed = true;
    for (int e = 0; e < n && closed; ++e)
      if (!(x >> e & 1)) closed = rank[x | (Mask{1} << e)] > rank[x];
    if (closed) out.push_back(x);
  }
  return out;
}

/// Whether k proper flats (with repetition) cover all but at most `slack` elements.
inline bool flats_cover_brute(const zflat::Matroid& m, int k, int slack) {
  const auto rank = rank_by_flats(m);
  const Mask full = (Mask{1} << m.size()) - 1;
  std::vector<Mask> proper;
  for (Mask f : all_flats(rank, m.size()))
    if (f != full) proper.push_back(f);
  std::function<bool(int, Mask)> go = [&](int left, Mask covered) {
    if (left == 0) return zflat::popcount(full & ~covered) <= slack;
    for (Mask f : proper)
      if (go(left - 1, covered | f)) return true;
    return false;
  };
  return go(k, 0);
}

}  // namespace oracle
