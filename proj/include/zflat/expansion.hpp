#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "zflat/matroid.hpp"
#include "zflat/structure.hpp"

namespace zflat {

/// Block structure e -> S_e linking a base ground set to an expanded one.
///
/// Blocks are masks over the expanded ground set; they are pairwise disjoint, cover it, and all have
/// exactly t elements. A block's ordered list is its elements in expanded-ground order.
class ExpansionMap {
 public:
  ExpansionMap(GroundSet base, GroundSet expanded, std::vector<Mask> blocks)
      : base_(std::move(base)), expanded_(std::move(expanded)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != base_.size()) throw Error("expansion map: one block per base element");
    base_of_.assign(expanded_.size(), -1);
    t_ = blocks_.empty() ? 1 : popcount(blocks_.front());
    Mask seen = 0;
    for (int e = 0; e < base_.size(); ++e) {
      if (popcount(blocks_[e]) != t_ || t_ < 1) throw Error("expansion map: blocks must all have the same size t >= 1");
      if (blocks_[e] & seen) throw Error("expansion map: blocks overlap");
      if (!is_subset(blocks_[e], expanded_.full())) throw Error("expansion map: block outside expanded ground set");
      seen |= blocks_[e];
      for_each_bit(blocks_[e], [&](int x) { base_of_[x] = e; });
    }
    if (seen != expanded_.full()) throw Error("expansion map: blocks do not cover the expanded ground set");
  }

  /// Labels "e#0", ..., "e#(t-1)" laid out block after block; "e#0" stands for e itself.
  static ExpansionMap canonical(const GroundSet& base, int t) {
    if (t < 1) throw Error("expansion factor t must be positive");
    require_budget(base.size() * t, kMaxElements, "t-expansion");
    std::vector<std::string> labels;
    std::vector<Mask> blocks;
    for (int e = 0; e < base.size(); ++e) {
      Mask block = 0;
      for (int i = 0; i < t; ++i) {
        block |= bit(static_cast<int>(labels.size()));
        labels.push_back(base.label(e) + "#" + std::to_string(i));
      }
      blocks.push_back(block);
    }
    return ExpansionMap(base, GroundSet(std::move(labels)), std::move(blocks));
  }

  int t() const { return t_; }
  const GroundSet& base() const { return base_; }
  const GroundSet& expanded() const { return expanded_; }
  Mask block(int e) const { return blocks_.at(e); }
  int base_of(int x) const { return base_of_.at(x); }

  /// Expanded element that plays the role of base element e (the first of its block).
  int representative(int e) const { return lowest_bit(blocks_.at(e)); }

  /// S_X.
  Mask blocks(Mask x) const {
    Mask out = 0;
    for_each_bit(x, [&](int e) { out |= blocks_[e]; });
    return out;
  }

  /// theta(X) = { e : S_e is inside X }.
  Mask theta(Mask x) const {
    Mask out = 0;
    for (int e = 0; e < base_.size(); ++e)
      if (is_subset(blocks_[e], x)) out |= bit(e);
    return out;
  }

  /// Base elements whose block meets X.
  Mask touched(Mask x) const {
    Mask out = 0;
    for_each_bit(x, [&](int y) { out |= bit(base_of_[y]); });
    return out;
  }

  std::vector<std::string> block_labels(int e) const { return expanded_.labels_of(blocks_.at(e)); }

 private:
  GroundSet base_;
  GroundSet expanded_;
  std::vector<Mask> blocks_;
  std::vector<int> base_of_;
  int t_ = 1;
};

/// Follows `first` (M -> M') and then `second` (M' -> M''), giving M -> M''.
inline ExpansionMap compose(const ExpansionMap& first, const ExpansionMap& second) {
  if (!(first.expanded() == second.base())) throw Error("compose: maps do not chain");
  std::vector<Mask> blocks;
  for (int e = 0; e < first.base().size(); ++e) blocks.push_back(second.blocks(first.block(e)));
  return ExpansionMap(first.base(), second.expanded(), std::move(blocks));
}

/// The t-expansion laid out on the map's expanded ground set: Z(M^t) = { S_A } with r(S_A) = t r(A).
inline Matroid expand_with_map(const Matroid& m, const ExpansionMap& map) {
  if (!(m.ground() == map.base())) throw Error("expand: map base does not match the matroid's ground set");
  std::vector<CyclicFlat> zee;
  for (const auto& a : m.cyclic_flats()) zee.push_back({map.blocks(a.set), map.t() * a.rank});
  return Matroid::from_cyclic_flats(map.expanded(), std::move(zee));
}

struct Expansion {
  Matroid matroid;
  ExpansionMap map;
};

inline Expansion expand(const Matroid& m, int t) {
  auto map = ExpansionMap::canonical(m.ground(), t);
  auto mt = expand_with_map(m, map);
  return {std::move(mt), std::move(map)};
}

/// Recovers N with N^t = M' up to a clone-respecting relabeling.
///
/// From each clonal class of size m*t the m first elements (ground order) become N's elements; the
/// returned map sends each of them to a block made of itself and t-1 further class members.
inline Expansion deflate(const Matroid& mt, int t) {
  if (t < 1) throw NotATExpansion("t must be positive");
  const auto classes = clonal_classes(mt);
  Mask reps = 0;
  for (Mask c : classes) {
    if (popcount(c) % t != 0) {
      throw NotATExpansion("clonal class " + mt.ground().format(c) + " has size not divisible by " + std::to_string(t));
    }
    int take = popcount(c) / t;
    for_each_bit(c, [&](int x) {
      if (take > 0) {
        reps |= bit(x);
        --take;
      }
    });
  }
  std::vector<CyclicFlat> zee;
  for (const auto& a : mt.cyclic_flats()) {
    if (a.rank % t != 0) {
      throw NotATExpansion("cyclic flat " + mt.ground().format(a.set) + " has rank not divisible by " + std::to_string(t));
    }
    Mask packed = compress(a.set & reps, reps);
    if (std::none_of(zee.begin(), zee.end(), [&](const CyclicFlat& z) { return z.set == packed; })) {
      zee.push_back({packed, a.rank / t});
    }
  }
  GroundSet base = mt.ground().restrict_to(reps);
  if (auto report = check_axioms(base, zee)) {
    throw NotATExpansion("deflated family fails axiom " + std::string(axiom_name(report->axiom)));
  }
  auto n = Matroid::from_cyclic_flats(base, std::move(zee));

  // Block of the j-th representative of a class: itself plus t-1 of the remaining class members.
  std::vector<Mask> blocks(base.size(), 0);
  for (Mask c : classes) {
    std::vector<int> members;
    for_each_bit(c, [&](int x) { members.push_back(x); });
    const int m = static_cast<int>(members.size()) / t;
    for (int j = 0; j < m; ++j) {
      Mask block = bit(members[j]);
      for (int i = 0; i < t - 1; ++i) block |= bit(members[m + j * (t - 1) + i]);
      blocks[base.index(mt.ground().label(members[j]))] = block;
    }
  }
  ExpansionMap map(base, mt.ground(), std::move(blocks));
  if (!equals(expand_with_map(n, map), mt)) throw NotATExpansion("re-expansion does not reproduce the matroid");
  return {std::move(n), std::move(map)};
}

}  // namespace zflat
