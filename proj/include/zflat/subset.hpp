#pragma once

#include <bit>
#include <cstdint>

namespace zflat {

/// A subset of a ground set, one bit per element position.
using Mask = std::uint64_t;

inline constexpr int kMaxElements = 62;

constexpr Mask bit(int i) { return Mask{1} << i; }

constexpr Mask full_mask(int n) { return n <= 0 ? 0 : (n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1); }

constexpr int popcount(Mask m) { return std::popcount(m); }

constexpr bool is_subset(Mask inner, Mask outer) { return (inner & ~outer) == 0; }

constexpr bool is_proper_subset(Mask inner, Mask outer) { return inner != outer && is_subset(inner, outer); }

constexpr int lowest_bit(Mask m) { return std::countr_zero(m); }

template <class F>
constexpr void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    f(std::countr_zero(m));
    m &= m - 1;
  }
}

/// Visits every submask of `m`, including `m` and 0, in decreasing order.
template <class F>
constexpr void for_each_submask(Mask m, F&& f) {
  Mask s = m;
  while (true) {
    f(s);
    if (s == 0) break;
    s = (s - 1) & m;
  }
}

/// Packs the bits of `x` selected by `keep` into the low positions (software pext).
constexpr Mask compress(Mask x, Mask keep) {
  Mask out = 0;
  int j = 0;
  for_each_bit(keep, [&](int i) {
    if (x & bit(i)) out |= bit(j);
    ++j;
  });
  return out;
}

/// Inverse of compress: spreads the low bits of `x` over the positions of `keep`.
constexpr Mask scatter(Mask x, Mask keep) {
  Mask out = 0;
  int j = 0;
  for_each_bit(keep, [&](int i) {
    if (x & bit(j)) out |= bit(i);
    ++j;
  });
  return out;
}

}  // namespace zflat
