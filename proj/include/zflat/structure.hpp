#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "zflat/matroid.hpp"

namespace zflat {

inline Matroid uniform(int r, int n, int first_label = 1) {
  if (r < 0 || r > n) throw Error("uniform matroid needs 0 <= r <= n");
  GroundSet ground = GroundSet::numbered(n, first_label);
  const Mask E = ground.full();
  std::vector<CyclicFlat> zee;
  if (r == 0) {
    zee.push_back({E, 0});
  } else {
    zee.push_back({0, 0});
    if (r < n) zee.push_back({E, r});
  }
  return Matroid::from_cyclic_flats(std::move(ground), std::move(zee));
}

inline bool is_uniform(const Matroid& m) {
  const Mask E = m.full();
  for (const auto& z : m.cyclic_flats()) {
    if (z.set != 0 && z.set != E) return false;
  }
  return true;
}

/// Same labels (in any order) and the same cyclic flats with the same ranks.
inline bool equals(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> to_a(b.size());
  for (int i = 0; i < b.size(); ++i) {
    auto pos = a.ground().find(b.ground().label(i));
    if (!pos) return false;
    to_a[i] = *pos;
  }
  if (a.cyclic_flats().size() != b.cyclic_flats().size()) return false;
  std::vector<CyclicFlat> translated;
  for (const auto& z : b.cyclic_flats()) {
    Mask m = 0;
    for_each_bit(z.set, [&](int i) { m |= bit(to_a[i]); });
    translated.push_back({m, z.rank});
  }
  detail::sort_flats(translated);
  return translated == a.cyclic_flats();
}

/// Same cyclic flats under new labels; labels[i] renames position i.
inline Matroid relabel(const Matroid& m, std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != m.size()) throw Error("relabel: label count mismatch");
  return Matroid::from_cyclic_flats(GroundSet(std::move(labels)), m.cyclic_flats());
}

inline Matroid dual(const Matroid& m) {
  const Mask E = m.full();
  std::vector<CyclicFlat> zee;
  zee.reserve(m.cyclic_flats().size());
  for (const auto& a : m.cyclic_flats()) {
    Mask c = E & ~a.set;
    zee.push_back({c, popcount(c) + a.rank - m.rank()});
  }
  return Matroid::from_cyclic_flats(m.ground(), std::move(zee));
}

/// M|Y. Every cyclic flat of M|Y is A n Y for the cyclic flat A = cl_M of it, so the candidates
/// A n Y (A in Z(M)) that are cyclic are exactly the cyclic flats of the restriction.
inline Matroid restriction(const Matroid& m, Mask keep) {
  keep &= m.full();
  std::vector<CyclicFlat> zee;
  for (const auto& a : m.cyclic_flats()) {
    Mask c = a.set & keep;
    if (!is_cyclic(m, c)) continue;
    Mask packed = compress(c, keep);
    if (std::none_of(zee.begin(), zee.end(), [&](const CyclicFlat& z) { return z.set == packed; })) {
      zee.push_back({packed, m.rank(c)});
    }
  }
  return Matroid::from_cyclic_flats(m.ground().restrict_to(keep), std::move(zee));
}

inline Matroid delete_set(const Matroid& m, Mask x) { return restriction(m, m.full() & ~x); }

/// M/X = (M* \ X)*.
inline Matroid contract_set(const Matroid& m, Mask x) { return dual(delete_set(dual(m), x)); }

/// Elements grouped by the set of cyclic flats containing them, in order of first element.
inline std::vector<Mask> clonal_classes(const Matroid& m) {
  std::map<std::vector<bool>, Mask> by_pattern;
  std::vector<std::vector<bool>> order;
  for (int e = 0; e < m.size(); ++e) {
    std::vector<bool> pattern;
    pattern.reserve(m.cyclic_flats().size());
    for (const auto& z : m.cyclic_flats()) pattern.push_back((z.set & bit(e)) != 0);
    auto [it, inserted] = by_pattern.emplace(pattern, 0);
    if (inserted) order.push_back(pattern);
    it->second |= bit(e);
  }
  std::vector<Mask> out;
  for (const auto& p : order) out.push_back(by_pattern[p]);
  return out;
}

namespace detail {

/// Components of the matroid on `domain` with rank function `rk`, found from the fundamental
/// circuits of a greedy basis: two elements share a component iff they are linked by a chain of
/// fundamental circuits.
template <class RankFn>
std::vector<Mask> components_by_rank(Mask domain, RankFn&& rk) {
  Mask basis = 0;
  int r = 0;
  for_each_bit(domain, [&](int e) {
    if (rk(basis | bit(e)) > r) {
      basis |= bit(e);
      ++r;
    }
  });
  std::vector<int> parent(64);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for_each_bit(domain & ~basis, [&](int x) {
    for_each_bit(basis, [&](int b) {
      if (rk((basis & ~bit(b)) | bit(x)) == r) parent[find(x)] = find(b);
    });
  });
  std::map<int, Mask> groups;
  std::vector<int> roots;
  for_each_bit(domain, [&](int e) {
    int root = find(e);
    if (!groups.count(root)) roots.push_back(root);
    groups[root] |= bit(e);
  });
  std::vector<Mask> out;
  for (int root : roots) out.push_back(groups[root]);
  return out;
}

}  // namespace detail

inline std::vector<Mask> components(const Matroid& m) {
  return detail::components_by_rank(m.full(), [&](Mask x) { return m.rank(x); });
}

/// Components of M|F, as masks over M's positions.
inline std::vector<Mask> components_within(const Matroid& m, Mask f) {
  return detail::components_by_rank(f, [&](Mask x) { return m.rank(x); });
}

/// Components of M/F, as masks over M's positions (elements of E - F).
inline std::vector<Mask> contraction_components(const Matroid& m, Mask f) {
  const int rf = m.rank(f);
  return detail::components_by_rank(m.full() & ~f, [&](Mask x) { return m.rank(x | f) - rf; });
}

inline bool is_connected(const Matroid& m) { return m.size() == 0 || components(m).size() == 1; }

struct ConnectedFlats {
  std::vector<Mask> flats;  // sorted by (size, mask); singletons first
  Mask stripped_loops = 0;  // loops removed before the search
};

/// Connected flats of M \ L (L = loops), as masks over M's positions.
/// Nontrivial ones (two or more elements) are cyclic flats, so only those and singletons are tested.
inline ConnectedFlats connected_flats(const Matroid& m) {
  ConnectedFlats out;
  const Mask loops = m.loops();
  out.stripped_loops = loops;
  for_each_bit(m.full() & ~loops, [&](int e) {
    if ((closure(m, bit(e)) & ~loops) == bit(e)) out.flats.push_back(bit(e));
  });
  for (const auto& z : m.cyclic_flats()) {
    Mask f = z.set & ~loops;
    if (popcount(f) >= 2 && components_within(m, f).size() == 1) out.flats.push_back(f);
  }
  std::sort(out.flats.begin(), out.flats.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  return out;
}

/// Full rank table r(X) for every X (index = mask).
inline std::vector<std::uint8_t> rank_table(const Matroid& m, int max_elements = 24) {
  require_budget(m.size(), max_elements, "rank table");
  std::vector<std::uint8_t> table(std::size_t{1} << m.size());
  for (Mask x = 0; x < table.size(); ++x) table[x] = static_cast<std::uint8_t>(m.rank(x));
  return table;
}

/// Cyclic flats of the matroid whose rank function is `table` (indexed by mask over n elements),
/// found by testing every subset for closure and cyclicity.
inline std::vector<CyclicFlat> cyclic_flats_by_scan(const std::vector<std::uint8_t>& table, int n) {
  std::vector<CyclicFlat> zee;
  const Mask E = full_mask(n);
  for (Mask x = 0; x < table.size(); ++x) {
    const int r = table[x];
    bool ok = true;
    for (int e = 0; e < n && ok; ++e) {
      Mask b = bit(e);
      if (x & b) {
        ok = table[x & ~b] == r;
      } else {
        ok = table[x | b] > r;
      }
    }
    if (ok) zee.push_back({x & E, r});
  }
  return zee;
}

/// Builds a matroid from an arbitrary rank function by tabulating it and scanning for cyclic flats.
template <class RankFn>
Matroid from_rank_function(const GroundSet& ground, RankFn&& rk, int max_elements = 24) {
  require_budget(ground.size(), max_elements, "rank-function scan");
  std::vector<std::uint8_t> table(std::size_t{1} << ground.size());
  for (Mask x = 0; x < table.size(); ++x) table[x] = static_cast<std::uint8_t>(rk(x));
  return Matroid::from_cyclic_flats(ground, cyclic_flats_by_scan(table, ground.size()));
}

/// Flats of rank k, by subset scan.
inline std::vector<Mask> flats_of_rank(const Matroid& m, int k, int max_elements = 24) {
  require_budget(m.size(), max_elements, "flat enumeration");
  std::vector<Mask> out;
  const Mask limit = Mask{1} << m.size();
  for (Mask x = 0; x < limit; ++x) {
    if (m.rank(x) == k && is_flat(m, x)) out.push_back(x);
  }
  return out;
}

inline std::vector<Mask> hyperplanes(const Matroid& m, int max_elements = 24) {
  if (m.rank() == 0) return {};
  return flats_of_rank(m, m.rank() - 1, max_elements);
}

}  // namespace zflat
