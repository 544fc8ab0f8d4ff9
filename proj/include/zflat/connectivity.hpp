#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zflat/expansion.hpp"
#include "zflat/matroid.hpp"
#include "zflat/parallel.hpp"
#include "zflat/structure.hpp"

namespace zflat {

/// A connectivity value with a witness X whose separation (X, E - X) realizes it.
struct ConnectivityResult {
  std::optional<int> value;  // nullopt: no separation of any order exists (infinite)
  std::optional<Mask> witness;

  bool infinite() const { return !value.has_value(); }
};

namespace detail {

struct BestSeparation {
  int lambda = std::numeric_limits<int>::max();
  Mask mask = 0;

  void offer(int l, Mask x) {
    if (l < lambda || (l == lambda && x < mask)) {
      lambda = l;
      mask = x;
    }
  }
};

/// Least lambda(X) over X accepted by `admits(X, lambda)`; ties go to the numerically smallest X.
template <class Admits>
BestSeparation scan_separations(const Matroid& m, int threads, Admits&& admits) {
  const Mask E = m.full();
  const int r = m.rank();
  return parallel_reduce_masks(
      Mask{1} << m.size(), threads, BestSeparation{},
      [&](BestSeparation& acc, Mask x) {
        int rx = m.rank(x), ry = m.rank(E & ~x);
        int l = rx + ry - r;
        if (l < acc.lambda || (l == acc.lambda && x < acc.mask)) {
          if (admits(x, rx, ry, l)) acc.offer(l, x);
        }
      },
      [](BestSeparation& into, const BestSeparation& from) { into.offer(from.lambda, from.mask); });
}

}  // namespace detail

/// tau(M): least k with |X| >= k, |E - X| >= k and lambda(X) < k; infinite when there is none.
inline ConnectivityResult tutte_connectivity(const Matroid& m, int threads = 1, int max_elements = 20) {
  require_budget(m.size(), max_elements, "tutte connectivity");
  const int n = m.size();
  auto best = detail::scan_separations(m, threads, [n](Mask x, int, int, int l) {
    return l + 1 <= std::min(popcount(x), n - popcount(x));
  });
  if (best.lambda == std::numeric_limits<int>::max()) return {std::nullopt, std::nullopt};
  return {best.lambda + 1, best.mask};
}

/// kappa(M): least k with r(X) >= k, r(E - X) >= k and lambda(X) < k; r(M) when there is none.
inline ConnectivityResult vertical_connectivity(const Matroid& m, int threads = 1, int max_elements = 20) {
  require_budget(m.size(), max_elements, "vertical connectivity");
  auto best = detail::scan_separations(m, threads, [](Mask, int rx, int ry, int l) {
    return l + 1 <= std::min(rx, ry);
  });
  if (best.lambda == std::numeric_limits<int>::max()) return {m.rank(), std::nullopt};
  return {best.lambda + 1, best.mask};
}

/// Whether (X, E - X) is a vertical k-separation.
inline bool is_vertical_separation(const Matroid& m, Mask x, int k) {
  const Mask y = m.full() & ~x;
  return m.rank(x) >= k && m.rank(y) >= k && lambda(m, x) < k;
}

struct FlatCover {
  bool holds = false;
  std::vector<Mask> flats;  // the covering proper flats when holds
};

/// Whether `count` proper flats cover all but at most `slack` elements. Hyperplanes suffice, since
/// every proper flat lies in one.
inline FlatCover flats_cover(const Matroid& m, int count, int slack, int max_elements = 24) {
  if (count < 1) throw Error("flats_cover: count must be positive");
  const auto hyper = hyperplanes(m, max_elements);
  const Mask E = m.full();
  FlatCover out;
  std::vector<Mask> chosen;
  std::function<bool(std::size_t, Mask)> search = [&](std::size_t from, Mask covered) {
    if (static_cast<int>(chosen.size()) == count) return popcount(E & ~covered) <= slack;
    for (std::size_t i = from; i < hyper.size(); ++i) {
      chosen.push_back(hyper[i]);
      if (search(i, covered | hyper[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!hyper.empty() && search(0, 0)) {
    out.holds = true;
    out.flats = chosen;
  }
  return out;
}

inline FlatCover two_flats_cover_plus_one(const Matroid& m, int max_elements = 24) {
  return flats_cover(m, 2, 1, max_elements);
}

/// One side of a scaling equality, value(M^t) = t (value(M) - 1) + 1.
struct ScalingCheck {
  std::string invariant;  // "tau" or "kappa"
  bool applicable = false;
  std::string skip_reason;
  std::optional<int> base;      // value on M (nullopt = infinite)
  std::optional<int> expected;  // t (base - 1) + 1 when applicable
  std::optional<int> observed;  // value on M^t (nullopt = infinite)
  bool computed = false;        // false when the expansion was beyond budget
  bool match = false;
};

struct ScalingReport {
  int t = 1;
  std::vector<ScalingCheck> checks;
};

/// Computes both sides of the tau and kappa scaling equalities for M^t. An equality whose hypothesis
/// fails (tau(M) infinite, or kappa(M) = r(M)) is skipped, but the observed value is still reported.
inline ScalingReport kappa_scaling_check(const Matroid& m, int t, int threads = 1, int max_elements = 20) {
  ScalingReport report;
  report.t = t;
  const auto tau = tutte_connectivity(m, threads, max_elements);
  const auto kappa = vertical_connectivity(m, threads, max_elements);
  std::optional<Matroid> mt;
  if (m.size() * t <= max_elements) mt = expand(m, t).matroid;

  ScalingCheck tc{"tau"};
  tc.base = tau.value;
  tc.applicable = !tau.infinite();
  if (!tc.applicable) tc.skip_reason = "tau(M) is infinite";
  if (tc.applicable) tc.expected = t * (*tau.value - 1) + 1;
  if (mt) {
    tc.computed = true;
    tc.observed = tutte_connectivity(*mt, threads, max_elements).value;
  } else if (tc.skip_reason.empty()) {
    tc.skip_reason = "expansion beyond budget";
  }
  tc.match = tc.applicable && tc.computed && tc.observed == tc.expected;
  report.checks.push_back(tc);

  ScalingCheck kc{"kappa"};
  kc.base = kappa.value;
  kc.applicable = *kappa.value < m.rank();
  if (!kc.applicable) kc.skip_reason = "kappa(M) = r(M)";
  if (kc.applicable) kc.expected = t * (*kappa.value - 1) + 1;
  if (mt) {
    kc.computed = true;
    kc.observed = vertical_connectivity(*mt, threads, max_elements).value;
  } else if (kc.skip_reason.empty()) {
    kc.skip_reason = "expansion beyond budget";
  }
  kc.match = kc.applicable && kc.computed && kc.observed == kc.expected;
  report.checks.push_back(kc);
  return report;
}

}  // namespace zflat
