#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zflat/matroid.hpp"
#include "zflat/parallel.hpp"

namespace zflat {

using BigInt = boost::multiprecision::cpp_int;

/// T(x, y) = sum of coeff(i, j) x^i y^j with exact coefficients.
class TuttePolynomial {
 public:
  TuttePolynomial() = default;
  explicit TuttePolynomial(std::vector<std::vector<BigInt>> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  int x_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int y_degree() const {
    int d = -1;
    for (const auto& row : coeffs_) d = std::max(d, static_cast<int>(row.size()) - 1);
    return d;
  }

  BigInt coeff(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
    const auto& row = coeffs_[i];
    if (j < 0 || j >= static_cast<int>(row.size())) return 0;
    return row[j];
  }

  BigInt evaluate(const BigInt& x, const BigInt& y) const {
    BigInt total = 0, xp = 1;
    for (const auto& row : coeffs_) {
      BigInt yp = 1;
      for (const auto& c : row) {
        total += c * xp * yp;
        yp *= y;
      }
      xp *= x;
    }
    return total;
  }

  /// Nonzero terms as (i, j, coefficient), ordered by i then j.
  struct Term {
    int x;
    int y;
    BigInt c;
  };
  std::vector<Term> terms() const {
    std::vector<Term> out;
    for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i)
      for (int j = 0; j < static_cast<int>(coeffs_[i].size()); ++j)
        if (coeffs_[i][j] != 0) out.push_back({i, j, coeffs_[i][j]});
    return out;
  }

  /// T with x and y exchanged.
  TuttePolynomial swapped() const {
    std::vector<std::vector<BigInt>> out;
    for (const auto& t : terms()) {
      if (static_cast<int>(out.size()) <= t.y) out.resize(t.y + 1);
      auto& row = out[t.y];
      if (static_cast<int>(row.size()) <= t.x) row.resize(t.x + 1);
      row[t.x] = t.c;
    }
    return TuttePolynomial(std::move(out));
  }

  std::string to_string() const {
    std::string s;
    for (const auto& t : terms()) {
      if (!s.empty()) s += " + ";
      bool unit = t.c == 1 && (t.x > 0 || t.y > 0);
      if (!unit) s += t.c.str();
      if (t.x > 0) s += (t.x == 1 ? std::string("x") : "x^" + std::to_string(t.x));
      if (t.y > 0) s += (t.y == 1 ? std::string("y") : "y^" + std::to_string(t.y));
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const TuttePolynomial& a, const TuttePolynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    for (auto& row : coeffs_)
      while (!row.empty() && row.back() == 0) row.pop_back();
    while (!coeffs_.empty() && coeffs_.back().empty()) coeffs_.pop_back();
  }

  std::vector<std::vector<BigInt>> coeffs_;
};

/// Corank-nullity subset sum over all 2^n subsets, then expanded out of the (x-1), (y-1) basis.
inline TuttePolynomial tutte_polynomial(const Matroid& m, int threads = 1, int max_elements = 24) {
  require_budget(m.size(), max_elements, "tutte polynomial");
  const int n = m.size();
  const int r = m.rank();
  const int rows = r + 1, cols = n - r + 1;
  using Counts = std::vector<std::uint64_t>;
  Counts counts = parallel_reduce_masks(
      Mask{1} << n, threads, Counts(static_cast<std::size_t>(rows) * cols, 0),
      [&](Counts& acc, Mask a) {
        int ra = m.rank(a);
        acc[static_cast<std::size_t>(r - ra) * cols + (popcount(a) - ra)] += 1;
      },
      [](Counts& into, const Counts& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
      });

  auto binom = [](int nn, int kk) {
    BigInt b = 1;
    for (int i = 1; i <= kk; ++i) b = b * (nn - kk + i) / i;
    return b;
  };
  std::vector<std::vector<BigInt>> coeffs(rows, std::vector<BigInt>(cols, 0));
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      std::uint64_t count = counts[static_cast<std::size_t>(a) * cols + b];
      if (count == 0) continue;
      for (int i = 0; i <= a; ++i) {
        BigInt ci = binom(a, i) * count;
        if ((a - i) % 2) ci = -ci;
        for (int j = 0; j <= b; ++j) {
          BigInt cij = ci * binom(b, j);
          if ((b - j) % 2) cij = -cij;
          coeffs[i][j] += cij;
        }
      }
    }
  }
  return TuttePolynomial(std::move(coeffs));
}

}  // namespace zflat
