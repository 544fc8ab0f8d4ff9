#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "zflat/matroid.hpp"

namespace zflat {

struct Decoration {
  int size = 0;
  int rank = 0;
  friend auto operator<=>(const Decoration&, const Decoration&) = default;
};

/// The unlabeled lattice of cyclic flats, each node decorated with (size, rank).
class Configuration {
 public:
  Configuration(std::vector<Decoration> deco, std::vector<std::vector<char>> leq)
      : deco_(std::move(deco)), leq_(std::move(leq)) {}

  int node_count() const { return static_cast<int>(deco_.size()); }
  const Decoration& decoration(int i) const { return deco_.at(i); }
  bool leq(int i, int j) const { return leq_[i][j] != 0; }

  /// Cover relation: i < j with nothing strictly between.
  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> out;
    const int k = node_count();
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i == j || !leq(i, j)) continue;
        bool direct = true;
        for (int m = 0; m < k && direct; ++m) {
          if (m != i && m != j && leq(i, m) && leq(m, j)) direct = false;
        }
        if (direct) out.emplace_back(i, j);
      }
    }
    return out;
  }

  /// Length of the longest chain from the least node up to each node.
  std::vector<int> heights() const {
    const int k = node_count();
    std::vector<int> h(k, 0);
    // Nodes come sorted by size, and i < j implies a strictly smaller size.
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return deco_[a].size < deco_[b].size; });
    for (int j : order)
      for (int i : order)
        if (i != j && leq(i, j)) h[j] = std::max(h[j], h[i] + 1);
    return h;
  }

 private:
  std::vector<Decoration> deco_;
  std::vector<std::vector<char>> leq_;
};

/// Requires a coloop-free matroid.
inline Configuration configuration(const Matroid& m) {
  if (m.coloops() != 0) throw HasColoops("configuration is defined only for matroids without coloops");
  const auto& zee = m.cyclic_flats();
  const int k = static_cast<int>(zee.size());
  std::vector<Decoration> deco;
  std::vector<std::vector<char>> leq(k, std::vector<char>(k, 0));
  for (int i = 0; i < k; ++i) {
    deco.push_back({popcount(zee[i].set), zee[i].rank});
    for (int j = 0; j < k; ++j) leq[i][j] = is_subset(zee[i].set, zee[j].set);
  }
  return Configuration(std::move(deco), std::move(leq));
}

/// Decoration-preserving order isomorphism from a to b, if one exists (witness[i] = image of node i).
inline std::optional<std::vector<int>> config_isomorphic(const Configuration& a, const Configuration& b) {
  const int k = a.node_count();
  if (b.node_count() != k) return std::nullopt;

  auto signatures = [](const Configuration& c) {
    auto h = c.heights();
    std::vector<int> up(c.node_count(), 0), down(c.node_count(), 0);
    for (auto [i, j] : c.covers()) {
      ++up[i];
      ++down[j];
    }
    std::vector<std::tuple<int, Decoration, int, int>> sig;
    for (int i = 0; i < c.node_count(); ++i) sig.emplace_back(h[i], c.decoration(i), up[i], down[i]);
    return sig;
  };
  const auto sa = signatures(a), sb = signatures(b);
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }

  std::vector<int> image(k, -1);
  std::vector<char> used(k, 0);
  auto place = [&](auto&& self, int i) -> bool {
    if (i == k) return true;
    for (int j = 0; j < k; ++j) {
      if (used[j] || sa[i] != sb[j]) continue;
      bool consistent = true;
      for (int p = 0; p < i && consistent; ++p) {
        consistent = a.leq(p, i) == b.leq(image[p], j) && a.leq(i, p) == b.leq(j, image[p]);
      }
      if (!consistent) continue;
      image[i] = j;
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    image[i] = -1;
    return false;
  };
  if (!place(place, 0)) return std::nullopt;
  return image;
}

}  // namespace zflat
