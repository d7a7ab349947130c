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
// Brute-force reference implementations used only by the tests. Each one
// follows a definition directly and shares no code path with the library
// routine it checks.

#ifndef NABLA_TESTS_ORACLES_HPP_
#define NABLA_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "nabla/nabla.hpp"

namespace nabla::oracle {

/// Least upper bound straight from the order relation.
inline std::size_t lub(const FinitePoset& P, std::size_t a, std::size_t b) {
  std::vector<std::size_t> uppers;
  for (std::size_t u = 0; u < P.size(); ++u)
    if (P.leq(a, u) && P.leq(b, u)) uppers.push_back(u);
  for (std::size_t u : uppers)
    if (std::all_of(uppers.begin(), uppers.end(), [&](std::size_t v) { return P.leq(u, v); })) return u;
  throw ContractError("no least upper bound");
}

inline std::size_t least(const FinitePoset& P) {
  for (std::size_t b = 0; b < P.size(); ++b) {
    bool below_all = true;
    for (std::size_t x = 0; x < P.size(); ++x) below_all = below_all && P.leq(b, x);
    if (below_all) return b;
  }
  throw ContractError("no least element");
}

/// a well below b by the definition: every subset S with b <= join S has
/// some s with a <= s. Enumerates all 2^n subsets.
inline std::vector<std::vector<bool>> well_below_all_subsets(const FinitePoset& P) {
  const std::size_t n = P.size();
  if (n > 16) throw ResourceError("oracle limited to 16 elements");
  const std::uint32_t subsets = std::uint32_t{1} << n;
  std::vector<std::size_t> join(subsets);
  join[0] = least(P);
  for (std::uint32_t m = 1; m < subsets; ++m) {
    const auto low = static_cast<std::size_t>(__builtin_ctz(m));
    join[m] = lub(P, join[m & (m - 1)], low);
  }
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n, true));
  for (std::uint32_t m = 0; m < subsets; ++m)
    for (std::size_t b = 0; b < n; ++b) {
      if (!P.leq(b, join[m])) continue;
      for (std::size_t a = 0; a < n; ++a) {
        if (!out[a][b]) continue;
        bool hit = false;
        for (std::size_t s = 0; s < n && !hit; ++s) hit = ((m >> s) & 1u) && P.leq(a, s);
        if (!hit) out[a][b] = false;
      }
    }
  return out;
}

/// (f + g)(t) as a minimum of f(r) + g(t - r) over breakpoints, their
/// midpoints, and a 1/64 grid in (0, t). f and g are constant between
/// consecutive points of this set, so the minimum is the infimum.
inline ExtRational convolution_at(const StepFunction& f, const StepFunction& g, const Rational& t) {
  std::vector<Rational> points;
  for (const auto& c : f.cuts())
    if (c.t < t) points.push_back(c.t);
  for (const auto& c : g.cuts())
    if (c.t < t) points.emplace_back(t - c.t);
  const Rational step = make_rational(1, 64);
  for (Rational r = step; r < t; r += step) points.push_back(r);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  ExtRational best = ExtRational::infinity();
  Rational lo = 0;
  for (const auto& r : points) {
    const Rational mid = (lo + r) / 2;
    best = min(best, f(mid) + g(Rational(t - mid)));
    best = min(best, f(r) + g(Rational(t - r)));
    lo = r;
  }
  const Rational mid = (lo + t) / 2;
  return min(best, f(mid) + g(Rational(t - mid)));
}

/// Sample positions for comparing two step functions: every pairwise cut sum,
/// a point just past it, and an even spread up to past the largest sum.
inline std::vector<Rational> convolution_samples(const StepFunction& f, const StepFunction& g, std::size_t count = 200) {
  std::set<Rational> out;
  std::vector<Rational> a{Rational(0)}, b{Rational(0)};
  for (const auto& c : f.cuts()) a.push_back(c.t);
  for (const auto& c : g.cuts()) b.push_back(c.t);
  Rational top = 1;
  for (const auto& x : a)
    for (const auto& y : b) {
      const Rational s = x + y;
      if (sgn(s) == 0) continue;
      out.insert(s);
      out.insert(s + make_rational(1, 256));
      if (s > top) top = s;
    }
  top += 1;
  for (std::size_t k = 1; out.size() < count; ++k) out.insert(top * make_rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(count)));
  std::vector<Rational> v(out.begin(), out.end());
  if (v.size() > count) v.resize(count);
  return v;
}

/// Open sets of the topology whose minimal neighborhood of x is N(x).
inline std::vector<PointSet> alexandrov_opens(const std::vector<PointSet>& minimal) {
  std::vector<PointSet> out;
  const std::size_t n = minimal.size();
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << n); ++g) {
    const auto G = static_cast<PointSet>(g);
    bool open = true;
    for (std::size_t x = 0; x < n && open; ++x)
      if ((G >> x) & 1u) open = (minimal[x] & ~G) == 0;
    if (open) out.push_back(G);
  }
  return out;
}

/// Open-ball topology of a quasi-pseudometric: G is open iff each x in G has
/// a ball {y : d(x, y) < r} inside G. Radii below the smallest positive
/// distance from x all give the same ball, so each point has one minimal ball.
inline std::vector<PointSet> metric_ball_opens(const DistanceMatrix& d) {
  std::vector<PointSet> minimal(d.size(), 0);
  for (std::size_t x = 0; x < d.size(); ++x) {
    Rational r = 1;
    for (const auto& v : d[x])
      if (sgn(v) > 0 && v < r) r = v;
    for (std::size_t y = 0; y < d.size(); ++y)
      if (d[x][y] < r) minimal[x] |= PointSet{1} << y;
  }
  return alexandrov_opens(minimal);
}

/// In a finite modular space every point has a smallest entourage
/// neighborhood, the points at distance identically 0.
inline std::vector<PointSet> modular_opens(const StepModularSpace& S) {
  std::vector<PointSet> minimal(S.size(), 0);
  for (std::size_t x = 0; x < S.size(); ++x)
    for (std::size_t y = 0; y < S.size(); ++y)
      if (S.w(x, y) == StepFunction::zero()) minimal[x] |= PointSet{1} << y;
  return alexandrov_opens(minimal);
}

}  // namespace nabla::oracle

#endif  // NABLA_TESTS_ORACLES_HPP_
