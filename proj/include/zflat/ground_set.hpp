#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zflat/errors.hpp"
#include "zflat/subset.hpp"

namespace zflat {

/// Ordered list of distinct element labels; a label's position is its bit in a Mask.
class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (static_cast<int>(labels_.size()) > kMaxElements) {
      throw BudgetExceeded("ground set has " + std::to_string(labels_.size()) + " elements; at most " +
                           std::to_string(kMaxElements) + " are supported");
    }
    for (int i = 0; i < size(); ++i) {
      if (!index_.emplace(labels_[i], i).second) throw Error("duplicate element label '" + labels_[i] + "'");
    }
  }

  /// Labels "first", "first+1", ...
  static GroundSet numbered(int n, int first = 1) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(first + i));
    return GroundSet(std::move(labels));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return full_mask(size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }

  std::optional<int> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int index(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw Error("unknown element label '" + std::string(label) + "'");
  }

  Mask mask_of(std::span<const std::string> labels) const {
    Mask m = 0;
    for (const auto& l : labels) m |= bit(index(l));
    return m;
  }

  Mask mask_of(std::initializer_list<std::string_view> labels) const {
    Mask m = 0;
    for (auto l : labels) m |= bit(index(l));
    return m;
  }

  /// Parses a comma separated label list such as "1,2,3". Empty string is the empty set.
  Mask parse(std::string_view csv) const {
    Mask m = 0;
    std::size_t start = 0;
    while (start < csv.size()) {
      std::size_t end = csv.find(',', start);
      if (end == std::string_view::npos) end = csv.size();
      auto token = csv.substr(start, end - start);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      if (!token.empty()) m |= bit(index(token));
      start = end + 1;
    }
    return m;
  }

  std::vector<std::string> labels_of(Mask m) const {
    std::vector<std::string> out;
    for_each_bit(m, [&](int i) { out.push_back(labels_.at(i)); });
    return out;
  }

  std::string format(Mask m) const {
    std::string s = "{";
    bool first = true;
    for_each_bit(m, [&](int i) {
      if (!first) s += ',';
      s += labels_.at(i);
      first = false;
    });
    return s + "}";
  }

  GroundSet restrict_to(Mask keep) const { return GroundSet(labels_of(keep)); }

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace zflat
