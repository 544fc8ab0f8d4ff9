#pragma once

#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "zflat/matroid.hpp"
#include "zflat/matroid_union.hpp"
#include "zflat/structure.hpp"

namespace zflat {

struct CatalogEntry {
  std::string name;
  Matroid matroid;
  std::string description;
  std::optional<Presentation> presentation;
};

namespace detail {

/// Rank-3 matroid on elements 1..n whose only nontrivial cyclic flats are the given rank-2 lines.
inline Matroid rank3_with_lines(int n, const std::vector<std::string>& lines) {
  auto ground = GroundSet::numbered(n);
  std::vector<CyclicFlat> zee{{0, 0}};
  for (const auto& l : lines) zee.push_back({ground.parse(l), 2});
  zee.push_back({ground.full(), 3});
  return Matroid::from_cyclic_flats(ground, std::move(zee));
}

inline Presentation presentation_of(const GroundSet& ground, const std::vector<std::string>& sets) {
  Presentation p;
  for (const auto& s : sets) p.sets.push_back(ground.parse(s));
  return p;
}

}  // namespace detail

inline std::vector<CatalogEntry> catalog() {
  using detail::presentation_of;
  using detail::rank3_with_lines;
  std::vector<CatalogEntry> out;
  auto add = [&](std::string name, Matroid m, std::string prov, std::optional<std::vector<std::string>> pres) {
    std::optional<Presentation> p;
    if (pres) p = presentation_of(m.ground(), *pres);
    out.push_back({std::move(name), std::move(m), std::move(prov), std::move(p)});
  };
  add("fig1_M", rank3_with_lines(6, {"1,2,3", "4,5,6"}), "two disjoint three-point lines",
      std::vector<std::string>{"1,2,3", "4,5,6", "1,2,3,4,5,6"});
  add("fig1_N", rank3_with_lines(6, {"1,2,3", "1,4,5"}), "two three-point lines through 1",
      std::vector<std::string>{"1,2,3,4,5,6", "2,3,6", "4,5,6"});
  add("fig2_M", rank3_with_lines(9, {"1,2,3", "4,5,6", "7,8,9"}), "three disjoint three-point lines",
      std::vector<std::string>{"1,2,3,4,5,6", "4,5,6,7,8,9", "1,2,3,7,8,9"});
  add("fig2_N", rank3_with_lines(9, {"2,3,4", "4,5,6", "7,8,9"}), "lines {2,3,4}, {4,5,6}, {7,8,9}",
      std::nullopt);
  add("fig3_M", rank3_with_lines(6, {"1,2,3", "1,4,5"}), "two lines through 1, point 6 free", std::nullopt);
  add("fig3_N", rank3_with_lines(7, {"1,2,3", "1,4,5"}), "two lines through 1, points 6 and 7 free",
      std::nullopt);
  return out;
}

/// A catalog entry by name; "U<r>_<n>" names the uniform matroid U_{r,n}.
inline std::optional<CatalogEntry> catalog_entry(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e;
  static const std::regex uniform_name(R"(U(\d+)_(\d+))");
  std::smatch m;
  if (std::regex_match(name, m, uniform_name)) {
    const int r = std::stoi(m[1]), n = std::stoi(m[2]);
    if (r > n || n > kMaxElements) throw Error("uniform matroid needs 0 <= r <= n <= 62");
    return CatalogEntry{name, uniform(r, n), "uniform matroid U_{" + m[1].str() + "," + m[2].str() + "}", std::nullopt};
  }
  return std::nullopt;
}

}  // namespace zflat
