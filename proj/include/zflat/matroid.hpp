#pragma once

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zflat/errors.hpp"
#include "zflat/ground_set.hpp"
#include "zflat/subset.hpp"

namespace zflat {

struct CyclicFlat {
  Mask set = 0;
  int rank = 0;
  friend bool operator==(const CyclicFlat&, const CyclicFlat&) = default;
};

enum class Axiom { Z0, Z1, Z2, Z3 };

constexpr std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Z0: return "Z0";
    case Axiom::Z1: return "Z1";
    case Axiom::Z2: return "Z2";
    case Axiom::Z3: return "Z3";
  }
  return "?";
}

/// First failed cyclic-flat axiom, with the witnessing sets.
struct AxiomReport {
  Axiom axiom = Axiom::Z0;
  Mask first = 0;
  Mask second = 0;
  std::string detail;
};

class AxiomViolation : public Error {
 public:
  AxiomViolation(AxiomReport report, const std::string& what) : Error(what), report_(std::move(report)) {}
  const AxiomReport& report() const noexcept { return report_; }

 private:
  AxiomReport report_;
};

namespace detail {

inline void sort_flats(std::vector<CyclicFlat>& zee) {
  std::sort(zee.begin(), zee.end(), [](const CyclicFlat& a, const CyclicFlat& b) {
    int pa = popcount(a.set), pb = popcount(b.set);
    return pa != pb ? pa < pb : a.set < b.set;
  });
}

// Masks up to this width get a dense memo table; wider ground sets use a hash map.
inline constexpr int kDenseRankBits = 22;

class RankCache {
 public:
  explicit RankCache(int n) : n_(n) {}

  template <class Eval>
  int get(Mask x, Eval&& eval) {
    if (n_ <= kDenseRankBits) {
      std::call_once(once_, [this] { dense_ = std::vector<std::atomic<std::uint8_t>>(std::size_t{1} << n_); });
      auto& slot = dense_[x];
      std::uint8_t v = slot.load(std::memory_order_relaxed);
      if (v != 0) return v - 1;
      int r = eval(x);
      slot.store(static_cast<std::uint8_t>(r + 1), std::memory_order_relaxed);
      return r;
    }
    {
      std::lock_guard lock(mu_);
      if (auto it = sparse_.find(x); it != sparse_.end()) return it->second;
    }
    int r = eval(x);
    std::lock_guard lock(mu_);
    sparse_.emplace(x, r);
    return r;
  }

 private:
  int n_;
  std::once_flag once_;
  std::vector<std::atomic<std::uint8_t>> dense_;
  std::mutex mu_;
  std::unordered_map<Mask, int> sparse_;
};

}  // namespace detail

/// Checks the cyclic-flat axioms (Z0)-(Z3) for a candidate family; nullopt when they all hold.
///
/// (Z0) is checked order-theoretically: the family must have a least and a greatest set and every
/// pair must have a least upper bound and a greatest lower bound inside the family. Families whose
/// meets or joins fall outside are reported, never completed.
inline std::optional<AxiomReport> check_axioms(const GroundSet& ground, std::span<const CyclicFlat> family) {
  if (family.empty()) return AxiomReport{Axiom::Z0, 0, 0, "family is empty"};
  const Mask E = ground.full();
  for (const auto& z : family) {
    if (!is_subset(z.set, E)) throw Error("cyclic flat " + std::to_string(z.set) + " is not inside the ground set");
  }
  std::vector<CyclicFlat> zs(family.begin(), family.end());
  detail::sort_flats(zs);
  const int k = static_cast<int>(zs.size());
  for (int i = 1; i < k; ++i) {
    if (zs[i].set == zs[i - 1].set) return AxiomReport{Axiom::Z0, zs[i].set, zs[i].set, "set listed twice"};
  }
  auto leq = [&](int i, int j) { return is_subset(zs[i].set, zs[j].set); };
  for (int j = 1; j < k; ++j) {
    if (!leq(0, j)) return AxiomReport{Axiom::Z0, zs[0].set, zs[j].set, "no least set"};
    if (!leq(j, k - 1)) return AxiomReport{Axiom::Z0, zs[j].set, zs[k - 1].set, "no greatest set"};
  }

  std::vector<int> join(static_cast<std::size_t>(k) * k, -1), meet(static_cast<std::size_t>(k) * k, -1);
  std::vector<int> bounds;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      bounds.clear();
      for (int m = 0; m < k; ++m)
        if (leq(i, m) && leq(j, m)) bounds.push_back(m);
      int least = -1;
      for (int cand : bounds) {
        if (std::all_of(bounds.begin(), bounds.end(), [&](int o) { return leq(cand, o); })) {
          least = cand;
          break;
        }
      }
      if (least < 0) return AxiomReport{Axiom::Z0, zs[i].set, zs[j].set, "pair has no join in the family"};
      bounds.clear();
      for (int m = 0; m < k; ++m)
        if (leq(m, i) && leq(m, j)) bounds.push_back(m);
      int greatest = -1;
      for (int cand : bounds) {
        if (std::all_of(bounds.begin(), bounds.end(), [&](int o) { return leq(o, cand); })) {
          greatest = cand;
          break;
        }
      }
      if (greatest < 0) return AxiomReport{Axiom::Z0, zs[i].set, zs[j].set, "pair has no meet in the family"};
      join[i * k + j] = join[j * k + i] = least;
      meet[i * k + j] = meet[j * k + i] = greatest;
    }
  }

  if (zs[0].rank != 0) return AxiomReport{Axiom::Z1, zs[0].set, 0, "least set has nonzero rank"};

  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j || !leq(i, j)) continue;
      int gain = zs[j].rank - zs[i].rank;
      int extra = popcount(zs[j].set & ~zs[i].set);
      if (gain <= 0 || gain >= extra) {
        return AxiomReport{Axiom::Z2, zs[i].set, zs[j].set, "need 0 < r(Y)-r(X) < |Y-X|"};
      }
    }
  }

  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (leq(i, j) || leq(j, i)) continue;
      const auto& up = zs[join[i * k + j]];
      const auto& down = zs[meet[i * k + j]];
      int lhs = up.rank + down.rank + popcount((zs[i].set & zs[j].set) & ~down.set);
      if (lhs > zs[i].rank + zs[j].rank) {
        return AxiomReport{Axiom::Z3, zs[i].set, zs[j].set, "r(X v Y) + r(X ^ Y) + |(X n Y) - (X ^ Y)| > r(X) + r(Y)"};
      }
    }
  }
  return std::nullopt;
}

/// A matroid held as its lattice of cyclic flats with their ranks.
///
/// Values are immutable once built; copies share one rank memo, which tolerates concurrent readers.
class Matroid {
 public:
  /// Validates the family against the cyclic-flat axioms; throws AxiomViolation on failure.
  static Matroid from_cyclic_flats(GroundSet ground, std::vector<CyclicFlat> zee) {
    if (auto report = check_axioms(ground, zee)) {
      std::string what = std::string("axiom ") + std::string(axiom_name(report->axiom)) + " violated";
      what += " by " + ground.format(report->first);
      if (report->second != report->first) what += " and " + ground.format(report->second);
      what += ": " + report->detail;
      throw AxiomViolation(std::move(*report), what);
    }
    return Matroid(std::move(ground), std::move(zee));
  }

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  Mask full() const { return ground_.full(); }

  /// The full lattice, sorted by (size, mask); front() is the least set, back() the greatest.
  const std::vector<CyclicFlat>& cyclic_flats() const { return zee_; }

  int rank() const { return rank_total_; }
  Mask coloops() const { return coloops_; }
  Mask loops() const { return zee_.front().set; }

  /// r(X) = min over cyclic flats A of r(A) + |X - A|, memoized.
  int rank(Mask x) const {
    return cache_->get(x, [this](Mask m) { return rank_uncached(m); });
  }

  int rank_uncached(Mask x) const {
    int best = popcount(x);
    for (const auto& a : zee_) best = std::min(best, a.rank + popcount(x & ~a.set));
    return best;
  }

 private:
  Matroid(GroundSet ground, std::vector<CyclicFlat> zee)
      : ground_(std::move(ground)), zee_(std::move(zee)), cache_(std::make_shared<detail::RankCache>(ground_.size())) {
    detail::sort_flats(zee_);
    const auto& top = zee_.back();
    coloops_ = ground_.full() & ~top.set;
    rank_total_ = top.rank + popcount(coloops_);
  }

  GroundSet ground_;
  std::vector<CyclicFlat> zee_;
  int rank_total_ = 0;
  Mask coloops_ = 0;
  std::shared_ptr<detail::RankCache> cache_;
};

inline Matroid validate_axioms(GroundSet ground, std::vector<CyclicFlat> zee) {
  return Matroid::from_cyclic_flats(std::move(ground), std::move(zee));
}

inline int lambda(const Matroid& m, Mask x) { return m.rank(x) + m.rank(m.full() & ~x) - m.rank(); }

/// Smallest flat containing x.
inline Mask closure(const Matroid& m, Mask x) {
  const int r = m.rank(x);
  Mask cl = x;
  for_each_bit(m.full() & ~x, [&](int e) {
    if (m.rank(x | bit(e)) == r) cl |= bit(e);
  });
  return cl;
}

inline bool is_flat(const Matroid& m, Mask x) {
  const int r = m.rank(x);
  bool closed = true;
  for_each_bit(m.full() & ~x, [&](int e) { closed = closed && m.rank(x | bit(e)) > r; });
  return closed;
}

/// True when M|X has no coloops, i.e. X is a union of circuits.
inline bool is_cyclic(const Matroid& m, Mask x) {
  const int r = m.rank(x);
  bool cyclic = true;
  for_each_bit(x, [&](int e) { cyclic = cyclic && m.rank(x & ~bit(e)) == r; });
  return cyclic;
}

inline bool is_cyclic_flat(const Matroid& m, Mask x) { return is_cyclic(m, x) && is_flat(m, x); }

}  // namespace zflat
