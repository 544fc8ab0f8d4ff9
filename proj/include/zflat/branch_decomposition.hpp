#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "zflat/expansion.hpp"
#include "zflat/matroid.hpp"

namespace zflat {

/// A cubic tree whose leaves carry ground elements; leaf_of[e] is the vertex labeled e.
struct BranchDecomposition {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> leaf_of;
};

namespace detail {

inline std::vector<std::vector<int>> adjacency(const BranchDecomposition& t) {
  std::vector<std::vector<int>> adj(t.vertex_count);
  for (auto [u, v] : t.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

}  // namespace detail

/// Checks the tree for `n` elements and removes unlabeled leaves, suppressing the degree-2 vertices
/// this creates. Vertices are renumbered compactly. Throws MalformedTree.
inline BranchDecomposition normalize(const BranchDecomposition& t, int n) {
  if (static_cast<int>(t.leaf_of.size()) != n) throw MalformedTree("every element needs exactly one leaf");
  if (t.vertex_count < 1) throw MalformedTree("tree has no vertices");
  if (static_cast<int>(t.edges.size()) != t.vertex_count - 1) throw MalformedTree("edge count is not |V| - 1");
  for (auto [u, v] : t.edges) {
    if (u < 0 || v < 0 || u >= t.vertex_count || v >= t.vertex_count || u == v) throw MalformedTree("bad edge");
  }
  std::vector<int> label_at(t.vertex_count, -1);
  for (int e = 0; e < n; ++e) {
    int v = t.leaf_of[e];
    if (v < 0 || v >= t.vertex_count) throw MalformedTree("leaf vertex out of range");
    if (label_at[v] != -1) throw MalformedTree("two elements on one leaf");
    label_at[v] = e;
  }
  auto adj = detail::adjacency(t);
  {
    std::vector<char> seen(t.vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != t.vertex_count) throw MalformedTree("tree is not connected");
  }
  for (int v = 0; v < t.vertex_count; ++v) {
    int d = static_cast<int>(adj[v].size());
    if (t.vertex_count == 1) break;
    if (d != 1 && d != 3) throw MalformedTree("vertex " + std::to_string(v) + " has degree " + std::to_string(d));
    if (label_at[v] != -1 && d != 1) throw MalformedTree("label on a non-leaf vertex");
  }

  // Work on neighbor sets so deletions and suppressions are simple.
  std::vector<std::set<int>> nb(t.vertex_count);
  for (auto [u, v] : t.edges) {
    nb[u].insert(v);
    nb[v].insert(u);
  }
  std::vector<char> alive(t.vertex_count, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < t.vertex_count; ++v) {
      if (!alive[v]) continue;
      int live = 0;
      for (int v2 = 0; v2 < t.vertex_count; ++v2) live += alive[v2];
      if (live == 1) break;
      if (nb[v].size() <= 1 && label_at[v] == -1) {
        for (int w : nb[v]) nb[w].erase(v);
        nb[v].clear();
        alive[v] = 0;
        changed = true;
      } else if (nb[v].size() == 2 && label_at[v] == -1) {
        int a = *nb[v].begin(), b = *std::next(nb[v].begin());
        nb[a].erase(v);
        nb[b].erase(v);
        nb[a].insert(b);
        nb[b].insert(a);
        nb[v].clear();
        alive[v] = 0;
        changed = true;
      }
    }
  }
  std::vector<int> renumber(t.vertex_count, -1);
  BranchDecomposition out;
  for (int v = 0; v < t.vertex_count; ++v)
    if (alive[v]) renumber[v] = out.vertex_count++;
  for (int v = 0; v < t.vertex_count; ++v) {
    if (!alive[v]) continue;
    for (int w : nb[v])
      if (v < w) out.edges.emplace_back(renumber[v], renumber[w]);
  }
  out.leaf_of.resize(n);
  for (int e = 0; e < n; ++e) out.leaf_of[e] = renumber[t.leaf_of[e]];
  if (n >= 2) {
    auto a2 = detail::adjacency(out);
    for (int v = 0; v < out.vertex_count; ++v) {
      int d = static_cast<int>(a2[v].size());
      if (d == 2) throw MalformedTree("labeled vertex left with degree 2 after normalization");
    }
  }
  return out;
}

/// For each edge (in edge order), the set of labels on the side of its second endpoint.
inline std::vector<Mask> displayed_sets(const BranchDecomposition& t) {
  auto adj = detail::adjacency(t);
  std::vector<Mask> label_mask(t.vertex_count, 0);
  for (int e = 0; e < static_cast<int>(t.leaf_of.size()); ++e) label_mask[t.leaf_of[e]] |= bit(e);
  // Root at 0; subtree[v] = labels below v.
  std::vector<int> parent(t.vertex_count, -1), order;
  std::vector<char> seen(t.vertex_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int w : adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        stack.push_back(w);
      }
  }
  std::vector<Mask> subtree = label_mask;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0) subtree[parent[*it]] |= subtree[*it];
  const Mask all = subtree[0];
  std::vector<Mask> out;
  for (auto [u, v] : t.edges) out.push_back(parent[v] == u ? subtree[v] : all & ~subtree[u]);
  return out;
}

/// Max over edges of lambda(displayed set) + 1; |E| for ground sets with fewer than two elements.
inline int decomposition_width(const Matroid& m, const BranchDecomposition& t) {
  auto tree = normalize(t, m.size());
  if (m.size() <= 1) return m.size();
  int w = 0;
  for (Mask x : displayed_sets(tree)) w = std::max(w, lambda(m, x) + 1);
  return w;
}

/// Incremental construction of decompositions out of rooted pieces.
class TreeBuilder {
 public:
  explicit TreeBuilder(int n) { tree_.leaf_of.assign(n, -1); }

  int leaf(int element) {
    int v = tree_.vertex_count++;
    tree_.leaf_of.at(element) = v;
    return v;
  }

  /// New vertex adjacent to the given roots.
  int join(std::initializer_list<int> roots) {
    int v = tree_.vertex_count++;
    for (int r : roots) tree_.edges.emplace_back(v, r);
    return v;
  }

  void connect(int a, int b) { tree_.edges.emplace_back(a, b); }

  /// Rooted caterpillar over the elements: a leaf when there is one, otherwise a root whose children
  /// are the first element's leaf and the caterpillar of the rest.
  int caterpillar(const std::vector<int>& elements, std::size_t from = 0) {
    if (elements.size() - from == 1) return leaf(elements[from]);
    int head = leaf(elements[from]);
    int rest = caterpillar(elements, from + 1);
    return join({head, rest});
  }

  BranchDecomposition finish() && { return std::move(tree_); }
  BranchDecomposition& tree() { return tree_; }

 private:
  BranchDecomposition tree_;
};

inline std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  for_each_bit(m, [&](int e) { out.push_back(e); });
  return out;
}

/// Decomposition whose central vertex (or central edge, for two parts) separates the given parts,
/// each part hanging as a caterpillar. Parts must partition the n elements.
inline BranchDecomposition decomposition_from_parts(int n, const std::vector<Mask>& parts) {
  TreeBuilder b(n);
  std::vector<int> roots;
  for (Mask p : parts)
    if (p != 0) roots.push_back(b.caterpillar(elements_of(p)));
  if (roots.empty()) {
    b.tree().vertex_count = 1;
    return std::move(b).finish();
  }
  if (roots.size() == 1) {
    auto elems = elements_of(parts.front() ? parts.front() : 0);
    // A single part: rebuild as an unrooted caterpillar.
    TreeBuilder c(n);
    Mask all = 0;
    for (Mask p : parts) all |= p;
    auto es = elements_of(all);
    if (es.size() == 1) {
      c.leaf(es[0]);
      return std::move(c).finish();
    }
    int first = c.leaf(es[0]);
    int rest = c.caterpillar(es, 1);
    c.connect(first, rest);
    return std::move(c).finish();
  }
  if (roots.size() == 2) {
    b.connect(roots[0], roots[1]);
    return std::move(b).finish();
  }
  if (roots.size() == 3) {
    b.join({roots[0], roots[1], roots[2]});
    return std::move(b).finish();
  }
  // More parts: chain them through internal vertices.
  int acc = b.join({roots[0], roots[1]});
  for (std::size_t i = 2; i + 1 < roots.size(); ++i) acc = b.join({acc, roots[i]});
  b.connect(acc, roots.back());
  return std::move(b).finish();
}

/// Replaces each leaf labeled a by a rooted caterpillar on S_a whose root is the old leaf.
inline BranchDecomposition expand_decomposition(const BranchDecomposition& t, const ExpansionMap& map) {
  const int n = map.base().size();
  auto tree = normalize(t, n);
  const int big = map.expanded().size();
  if (n <= 1 || map.t() == 1) {
    if (n == 0) {
      BranchDecomposition out;
      out.vertex_count = 1;
      return out;
    }
    if (n == 1) return decomposition_from_parts(big, {map.block(0)});
    BranchDecomposition out = tree;
    out.leaf_of.assign(big, -1);
    for (int e = 0; e < n; ++e) out.leaf_of[map.representative(e)] = tree.leaf_of[e];
    return out;
  }
  TreeBuilder b(big);
  b.tree().vertex_count = tree.vertex_count;
  b.tree().edges = tree.edges;
  for (int e = 0; e < n; ++e) {
    auto block = elements_of(map.block(e));
    const int root = tree.leaf_of[e];
    int head = b.leaf(block[0]);
    int rest = b.caterpillar(block, 1);
    b.connect(root, head);
    b.connect(root, rest);
  }
  return std::move(b).finish();
}

}  // namespace zflat
