//  Copyright 2026 The nabla Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
#ifndef NABLA_TOPOLOGY_HPP_
#define NABLA_TOPOLOGY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nabla/error.hpp"

namespace nabla {

/// Subset of a point list, bit i standing for point i.
using PointSet = std::uint32_t;

inline constexpr std::size_t kDefaultMaxPoints = 12;
// Open-set enumeration walks all 2^n subsets.
inline constexpr std::size_t kHardMaxPoints = 24;

inline bool subset_of(PointSet a, PointSet b) { return (a & ~b) == 0; }
inline bool contains(PointSet s, std::size_t i) { return (s >> i) & 1u; }
inline PointSet singleton(std::size_t i) { return PointSet{1} << i; }
inline PointSet full_set(std::size_t n) { return n == 0 ? 0 : (n >= 32 ? ~PointSet{0} : (PointSet{1} << n) - 1); }

inline void check_point_bound(std::size_t n, std::size_t max_points) {
  if (max_points > kHardMaxPoints) throw ResourceError("point bound above hard limit " + std::to_string(kHardMaxPoints));
  if (n > max_points)
    throw ResourceError("space has " + std::to_string(n) + " points; bound is " + std::to_string(max_points));
}

/// Members of `s` by identifier, sorted.
inline std::vector<std::string> member_names(PointSet s, const std::vector<std::string>& points) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (contains(s, i)) out.push_back(points[i]);
  std::sort(out.begin(), out.end());
  return out;
}

/// `{a,b}` with members sorted by identifier.
inline std::string format_set(PointSet s, const std::vector<std::string>& points) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : member_names(s, points)) {
    if (!first) out += ',';
    out += m;
    first = false;
  }
  return out + "}";
}

/// Extensional topology on a finite carrier.
class FiniteTopology {
 public:
  FiniteTopology(std::vector<std::string> carrier, std::vector<PointSet> opens)
      : carrier_(std::move(carrier)), opens_(std::move(opens)) {
    std::sort(opens_.begin(), opens_.end());
    opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  }

  const std::vector<std::string>& carrier() const noexcept { return carrier_; }
  const std::vector<PointSet>& opens() const noexcept { return opens_; }
  bool is_open(PointSet s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }

  /// Contains the empty set and the carrier, closed under binary union and
  /// intersection.
  bool is_topology() const {
    const PointSet all = full_set(carrier_.size());
    if (!is_open(0) || !is_open(all)) return false;
    for (PointSet a : opens_)
      for (PointSet b : opens_)
        if (!is_open(a | b) || !is_open(a & b)) return false;
    return true;
  }

  /// Open sets as sorted member lists, in lexicographic order.
  std::vector<std::vector<std::string>> sorted_sets() const {
    std::vector<std::vector<std::string>> out;
    for (PointSet s : opens_) out.push_back(member_names(s, carrier_));
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const FiniteTopology& a, const FiniteTopology& b) {
    return a.carrier_ == b.carrier_ && a.opens_ == b.opens_;
  }

 private:
  std::vector<std::string> carrier_;
  std::vector<PointSet> opens_;
};

/**
 * The topology in which G is open iff every x in G has one of its basic
 * neighborhoods inside G. `neighborhoods[x]` lists them.
 */
inline FiniteTopology topology_from_neighborhoods(const std::vector<std::string>& points,
                                                  const std::vector<std::vector<PointSet>>& neighborhoods,
                                                  std::size_t max_points = kDefaultMaxPoints) {
  const std::size_t n = points.size();
  check_point_bound(n, max_points);
  // Only inclusion-minimal neighborhoods matter.
  std::vector<std::vector<PointSet>> minimal(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (PointSet a : neighborhoods[x]) {
      bool dominated = false;
      for (PointSet b : neighborhoods[x])
        if (b != a && subset_of(b, a)) dominated = true;
      if (!dominated) minimal[x].push_back(a);
    }
    std::sort(minimal[x].begin(), minimal[x].end());
    minimal[x].erase(std::unique(minimal[x].begin(), minimal[x].end()), minimal[x].end());
  }
  std::vector<PointSet> opens;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t g = 0; g < subsets; ++g) {
    const auto G = static_cast<PointSet>(g);
    bool open = true;
    for (std::size_t x = 0; x < n && open; ++x) {
      if (!contains(G, x)) continue;
      open = std::any_of(minimal[x].begin(), minimal[x].end(), [&](PointSet nb) { return subset_of(nb, G); });
    }
    if (open) opens.push_back(G);
  }
  return FiniteTopology(points, std::move(opens));
}

}  // namespace nabla

#endif  // NABLA_TOPOLOGY_HPP_
