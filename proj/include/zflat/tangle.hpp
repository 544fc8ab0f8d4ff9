#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zflat/branch_decomposition.hpp"
#include "zflat/matroid.hpp"
#include "zflat/parallel.hpp"
#include "zflat/structure.hpp"

namespace zflat {

/// Members {X : r(X) < bound}.
struct RankBelow {
  int bound = 0;
};

/// Members {X : |X| <= bound}.
struct SizeAtMost {
  int bound = 0;
};

struct ExplicitFamily {
  std::vector<Mask> sets;
};

using TangleFamily = std::variant<RankBelow, SizeAtMost, ExplicitFamily>;

struct Tangle {
  int order = 0;
  TangleFamily members;
};

inline Tangle rank_bounded_family(int bound, int order) { return {order, RankBelow{bound}}; }

enum class TangleAxiom { None, T1, T2, T3, T4 };

inline const char* tangle_axiom_name(TangleAxiom a) {
  switch (a) {
    case TangleAxiom::T1: return "T1";
    case TangleAxiom::T2: return "T2";
    case TangleAxiom::T3: return "T3";
    case TangleAxiom::T4: return "T4";
    default: return "none";
  }
}

struct TangleVerdict {
  bool valid = true;
  TangleAxiom axiom = TangleAxiom::None;
  std::vector<Mask> witness;
  std::string detail;
  /// Whether every X with r(X) < order - 1 was found to be a member (meaningful for order >= 3).
  bool contains_low_rank = true;
};

namespace detail {

inline bool is_member(const Matroid& m, const TangleFamily& fam, Mask x) {
  return std::visit(
      [&](const auto& f) -> bool {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RankBelow>) {
          return m.rank(x) < f.bound;
        } else if constexpr (std::is_same_v<F, SizeAtMost>) {
          return popcount(x) <= f.bound;
        } else {
          return std::find(f.sets.begin(), f.sets.end(), x) != f.sets.end();
        }
      },
      fam);
}

struct ScanState {
  std::optional<Mask> t1, t2, low_rank;

  static void keep_min(std::optional<Mask>& into, std::optional<Mask> x) {
    if (x && (!into || *x < *into)) into = x;
  }
  void merge(const ScanState& o) {
    keep_min(t1, o.t1);
    keep_min(t2, o.t2);
    keep_min(low_rank, o.low_rank);
  }
};

/// Three members with union E, if any.
inline std::optional<std::vector<Mask>> t3_violation(const Matroid& m, const TangleFamily& fam, int max_elements) {
  const Mask E = m.full();
  const int n = m.size();
  if (const auto* rb = std::get_if<RankBelow>(&fam)) {
    // Down-closed: a violation exists iff two maximal members leave a member uncovered.
    if (rb->bound <= 0) return std::nullopt;
    if (m.rank() < rb->bound) return std::vector<Mask>{E, E, E};
    const auto maximal = flats_of_rank(m, rb->bound - 1, max_elements);
    for (std::size_t i = 0; i < maximal.size(); ++i)
      for (std::size_t j = i; j < maximal.size(); ++j) {
        const Mask rest = E & ~(maximal[i] | maximal[j]);
        if (m.rank(rest) < rb->bound) return std::vector<Mask>{maximal[i], maximal[j], rest};
      }
    return std::nullopt;
  }
  if (const auto* sa = std::get_if<SizeAtMost>(&fam)) {
    if (sa->bound < 0 || 3 * sa->bound < n) return std::nullopt;
    std::vector<Mask> parts(3, 0);
    int i = 0;
    for_each_bit(E, [&](int e) { parts[i++ % 3] |= bit(e); });
    return parts;
  }
  const auto& sets = std::get<ExplicitFamily>(fam).sets;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i; j < sets.size(); ++j)
      for (std::size_t k = j; k < sets.size(); ++k)
        if ((sets[i] | sets[j] | sets[k]) == E) return std::vector<Mask>{sets[i], sets[j], sets[k]};
  return std::nullopt;
}

}  // namespace detail

/// Checks (T1)-(T4). One pass over all subsets covers (T1), (T2) and the low-rank containment
/// property; (T3) uses the family's shape; (T4) tests the n sets E - e.
inline TangleVerdict verify_tangle(const Matroid& m, const Tangle& tangle, int threads = 1, int max_elements = 20) {
  require_budget(m.size(), max_elements, "tangle verification");
  const Mask E = m.full();
  const int k = tangle.order;
  const auto& fam = tangle.members;
  if (const auto* ex = std::get_if<ExplicitFamily>(&fam)) {
    for (Mask x : ex->sets)
      if (!is_subset(x, E)) throw Error("tangle member outside the ground set");
  }
  auto state = parallel_reduce_masks(
      Mask{1} << m.size(), threads, detail::ScanState{},
      [&](detail::ScanState& s, Mask x) {
        const bool in = detail::is_member(m, fam, x);
        const int l = lambda(m, x);
        if (in && l >= k - 1 && !s.t1) s.t1 = x;
        if (l < k - 1 && !in && !detail::is_member(m, fam, E & ~x) && !s.t2) s.t2 = x;
        if (m.rank(x) < k - 1 && !in && !s.low_rank) s.low_rank = x;
      },
      [](detail::ScanState& into, const detail::ScanState& from) { into.merge(from); });

  TangleVerdict v;
  v.contains_low_rank = !state.low_rank.has_value();
  auto fail = [&](TangleAxiom a, std::vector<Mask> w, std::string d) {
    v.valid = false;
    v.axiom = a;
    v.witness = std::move(w);
    v.detail = std::move(d);
    return v;
  };
  if (state.t1) return fail(TangleAxiom::T1, {*state.t1}, "member with lambda >= order - 1");
  if (state.t2) {
    return fail(TangleAxiom::T2, {*state.t2, E & ~*state.t2},
                "separation of order < order - 1 with neither side a member");
  }
  if (auto w = detail::t3_violation(m, fam, max_elements)) return fail(TangleAxiom::T3, *w, "three members cover E");
  for (int e = 0; e < m.size(); ++e) {
    if (detail::is_member(m, fam, E & ~bit(e))) return fail(TangleAxiom::T4, {E & ~bit(e)}, "E - e is a member");
  }
  return v;
}

struct WidthCertificate {
  BranchDecomposition upper;
  int upper_width = 0;
  Tangle lower;
  int lower_order = 0;
  bool exact = false;
};

/// Pairs a decomposition (bw <= width) with a tangle (bw >= order). Throws InvalidTangle when the
/// tangle fails an axiom and MalformedTree for an invalid tree.
inline WidthCertificate branch_width_certified(const Matroid& m, const BranchDecomposition& upper, const Tangle& lower,
                                               int threads = 1, int max_elements = 20) {
  WidthCertificate c;
  c.upper = normalize(upper, m.size());
  c.upper_width = decomposition_width(m, c.upper);
  const auto verdict = verify_tangle(m, lower, threads, max_elements);
  if (!verdict.valid) {
    throw InvalidTangle(std::string("tangle violates ") + tangle_axiom_name(verdict.axiom) + ": " + verdict.detail);
  }
  c.lower = lower;
  c.lower_order = lower.order;
  c.exact = c.upper_width == c.lower_order;
  return c;
}

}  // namespace zflat
