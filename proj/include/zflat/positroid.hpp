#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "zflat/expansion.hpp"
#include "zflat/matroid.hpp"
#include "zflat/structure.hpp"

namespace zflat {

/// A linear order on the ground set, as element positions: seq[i] is the i-th element.
struct LinearOrder {
  std::vector<int> seq;
  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;
};

inline LinearOrder identity_order(int n) {
  LinearOrder o;
  o.seq.resize(n);
  std::iota(o.seq.begin(), o.seq.end(), 0);
  return o;
}

inline LinearOrder parse_order(const GroundSet& ground, const std::vector<std::string>& labels) {
  LinearOrder o;
  Mask seen = 0;
  for (const auto& l : labels) {
    int e = ground.index(l);
    if (seen & bit(e)) throw Error("order repeats element " + l);
    seen |= bit(e);
    o.seq.push_back(e);
  }
  if (seen != ground.full()) throw Error("order does not list every element");
  return o;
}

inline std::vector<std::string> order_labels(const GroundSet& ground, const LinearOrder& o) {
  std::vector<std::string> out;
  for (int e : o.seq) out.push_back(ground.label(e));
  return out;
}

/// A connected flat F with |F| >= 2 and a component K of M/F with |K| >= 2.
struct ArcConstraint {
  Mask flat = 0;
  Mask component = 0;
};

struct PositroidVerdict {
  bool valid = true;
  std::optional<ArcConstraint> witness;
};

/// All (F, K) pairs the cyclic-interval test has to check. Throws HasLoops.
inline std::vector<ArcConstraint> arc_constraints(const Matroid& m) {
  if (m.loops() != 0) throw HasLoops("positroid orders are checked only for loopless matroids");
  std::vector<ArcConstraint> out;
  for (Mask f : connected_flats(m).flats) {
    if (popcount(f) < 2 || f == m.full()) continue;
    for (Mask k : contraction_components(m, f))
      if (popcount(k) >= 2) out.push_back({f, k});
  }
  return out;
}

/// Whether K sits inside one maximal cyclic run of positions avoiding F.
inline bool inside_one_arc(const LinearOrder& o, Mask f, Mask k) {
  const int n = static_cast<int>(o.seq.size());
  int start = -1;
  for (int i = 0; i < n; ++i)
    if (f & bit(o.seq[i])) {
      start = i;
      break;
    }
  if (start < 0) return true;
  // Walk once around from an F position, numbering the arcs between F positions.
  int arc = -1, current = 0;
  for (int step = 1; step <= n; ++step) {
    const int e = o.seq[(start + step) % n];
    if (f & bit(e)) {
      ++current;
      continue;
    }
    if (k & bit(e)) {
      if (arc == -1) arc = current;
      else if (arc != current) return false;
    }
  }
  return true;
}

inline PositroidVerdict check_order(const LinearOrder& o, const std::vector<ArcConstraint>& constraints) {
  for (const auto& c : constraints)
    if (!inside_one_arc(o, c.flat, c.component)) return {false, c};
  return {};
}

inline PositroidVerdict is_positroid_order(const Matroid& m, const LinearOrder& o) {
  if (static_cast<int>(o.seq.size()) != m.size()) throw Error("order length does not match the ground set");
  return check_order(o, arc_constraints(m));
}

/// First positroid order in lexicographic order among those with seq[0] = first element and
/// seq[1] < seq[n-1]; these represent every cyclic order up to rotation and reversal.
inline std::optional<LinearOrder> positroid_search(const Matroid& m, int max_elements = 9) {
  require_budget(m.size(), max_elements, "positroid search");
  const int n = m.size();
  const auto constraints = arc_constraints(m);
  LinearOrder o = identity_order(n);
  if (n <= 2) return check_order(o, constraints).valid ? std::optional{o} : std::nullopt;
  do {
    if (o.seq[1] > o.seq[n - 1]) continue;
    if (check_order(o, constraints).valid) return o;
  } while (std::next_permutation(o.seq.begin() + 1, o.seq.end()));
  return std::nullopt;
}

/// Concatenates the blocks along the order: each element followed by the rest of its block.
inline LinearOrder expansion_positroid_order(const Matroid& m, const LinearOrder& o, const ExpansionMap& map) {
  if (!(m.ground() == map.base())) throw Error("order expansion: map base does not match the matroid");
  if (!is_positroid_order(m, o).valid) throw InputOrderNotPositroid("input order is not a positroid order");
  LinearOrder out;
  for (int e : o.seq) {
    const int rep = map.representative(e);
    out.seq.push_back(rep);
    for_each_bit(map.block(e) & ~bit(rep), [&](int x) { out.seq.push_back(x); });
  }
  return out;
}

/// The order induced on `keep`, renumbered to positions within `keep`.
inline LinearOrder restrict_order(const LinearOrder& o, Mask keep) {
  LinearOrder out;
  for (int e : o.seq)
    if (keep & bit(e)) out.seq.push_back(popcount(keep & (bit(e) - 1)));
  return out;
}

}  // namespace zflat
