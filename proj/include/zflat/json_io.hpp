#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "zflat/branch_decomposition.hpp"
#include "zflat/configuration.hpp"
#include "zflat/connectivity.hpp"
#include "zflat/expansion.hpp"
#include "zflat/matroid.hpp"
#include "zflat/tangle.hpp"
#include "zflat/tutte.hpp"

namespace zflat::json_io {

using nlohmann::json;

inline json labels(const GroundSet& g, Mask m) { return g.labels_of(m); }

inline Mask mask_from(const GroundSet& g, const json& arr) {
  Mask m = 0;
  for (const auto& l : arr) m |= bit(g.index(l.get<std::string>()));
  return m;
}

/// Cyclic flats are emitted sorted by size and then by their label lists.
inline json to_json(const Matroid& m) {
  const auto& g = m.ground();
  std::vector<std::pair<std::vector<std::string>, int>> flats;
  for (const auto& z : m.cyclic_flats()) flats.emplace_back(g.labels_of(z.set), z.rank);
  std::sort(flats.begin(), flats.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
  });
  json zee = json::array();
  for (auto& [set, rank] : flats) zee.push_back({{"set", set}, {"rank", rank}});
  return {{"elements", g.labels()}, {"cyclic_flats", zee}};
}

/// Parses and validates; throws AxiomViolation for an invalid family.
inline Matroid matroid_from_json(const json& j) {
  GroundSet g(j.at("elements").get<std::vector<std::string>>());
  std::vector<CyclicFlat> zee;
  for (const auto& z : j.at("cyclic_flats")) zee.push_back({mask_from(g, z.at("set")), z.at("rank").get<int>()});
  return Matroid::from_cyclic_flats(std::move(g), std::move(zee));
}

inline json to_json(const TuttePolynomial& t) {
  json terms = json::array();
  for (const auto& term : t.terms()) terms.push_back({{"x", term.x}, {"y", term.y}, {"c", term.c.str()}});
  return {{"terms", terms}};
}

inline json to_json(const Configuration& c) {
  json nodes = json::array();
  for (int i = 0; i < c.node_count(); ++i)
    nodes.push_back({{"id", i}, {"size", c.decoration(i).size}, {"rank", c.decoration(i).rank}});
  json covers = json::array();
  for (auto [i, j] : c.covers()) covers.push_back({i, j});
  return {{"nodes", nodes}, {"covers", covers}};
}

inline json to_json(const GroundSet& g, const ConnectivityResult& r) {
  json out;
  out["value"] = r.infinite() ? json("infinite") : json(*r.value);
  out["witness"] = r.witness ? labels(g, *r.witness) : json(nullptr);
  return out;
}

inline json to_json(const ExpansionMap& map) {
  json blocks = json::object();
  for (int e = 0; e < map.base().size(); ++e) blocks[map.base().label(e)] = map.block_labels(e);
  return {{"t", map.t()}, {"blocks", blocks}};
}

inline json to_json(const GroundSet& g, const BranchDecomposition& t) {
  json vertices = json::array();
  for (int v = 0; v < t.vertex_count; ++v) vertices.push_back(v);
  json edges = json::array();
  for (auto [u, v] : t.edges) edges.push_back({u, v});
  json leaves = json::object();
  for (int e = 0; e < static_cast<int>(t.leaf_of.size()); ++e) leaves[g.label(e)] = t.leaf_of[e];
  return {{"vertices", vertices}, {"edges", edges}, {"leaf_labels", leaves}};
}

inline BranchDecomposition decomposition_from_json(const GroundSet& g, const json& j) {
  BranchDecomposition t;
  t.vertex_count = static_cast<int>(j.at("vertices").size());
  std::vector<int> ids = j.at("vertices").get<std::vector<int>>();
  auto index_of = [&](int id) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw MalformedTree("edge refers to unknown vertex " + std::to_string(id));
    return static_cast<int>(it - ids.begin());
  };
  for (const auto& e : j.at("edges")) t.edges.emplace_back(index_of(e.at(0).get<int>()), index_of(e.at(1).get<int>()));
  t.leaf_of.assign(g.size(), -1);
  for (const auto& [label, v] : j.at("leaf_labels").items()) t.leaf_of.at(g.index(label)) = index_of(v.get<int>());
  if (std::count(t.leaf_of.begin(), t.leaf_of.end(), -1) > 0) throw MalformedTree("an element has no leaf");
  return t;
}

inline json to_json(const GroundSet& g, const Tangle& t) {
  json out{{"order", t.order}};
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RankBelow>) {
          out["members"] = {{"rank_below", f.bound}};
        } else if constexpr (std::is_same_v<F, SizeAtMost>) {
          out["members"] = {{"size_at_most", f.bound}};
        } else {
          json sets = json::array();
          for (Mask x : f.sets) sets.push_back(labels(g, x));
          out["members"] = {{"sets", sets}};
        }
      },
      t.members);
  return out;
}

inline Tangle tangle_from_json(const GroundSet& g, const json& j) {
  Tangle t;
  t.order = j.at("order").get<int>();
  const auto& m = j.at("members");
  if (m.contains("rank_below")) {
    t.members = RankBelow{m.at("rank_below").get<int>()};
  } else if (m.contains("size_at_most")) {
    t.members = SizeAtMost{m.at("size_at_most").get<int>()};
  } else {
    ExplicitFamily f;
    for (const auto& s : m.at("sets")) f.sets.push_back(mask_from(g, s));
    t.members = std::move(f);
  }
  return t;
}

inline json to_json(const GroundSet& g, const TangleVerdict& v) {
  json witness = json::array();
  for (Mask x : v.witness) witness.push_back(labels(g, x));
  json out{{"valid", v.valid}, {"contains_low_rank", v.contains_low_rank}};
  if (!v.valid) {
    out["axiom"] = tangle_axiom_name(v.axiom);
    out["witness"] = witness;
    out["detail"] = v.detail;
  }
  return out;
}

inline json to_json(const GroundSet& g, const WidthCertificate& c) {
  return {{"upper", {{"decomposition", to_json(g, c.upper)}, {"width", c.upper_width}}},
          {"lower", {{"tangle", to_json(g, c.lower)}, {"order", c.lower_order}}},
          {"exact", c.exact}};
}

inline json to_json(const GroundSet& g, const FlatCover& c) {
  json flats = json::array();
  for (Mask f : c.flats) flats.push_back(labels(g, f));
  return {{"holds", c.holds}, {"flats", flats}};
}

}  // namespace zflat::json_io
