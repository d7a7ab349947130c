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
#ifndef NABLA_MORPHISM_HPP_
#define NABLA_MORPHISM_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/modular.hpp"
#include "nabla/rational.hpp"
#include "nabla/step_function.hpp"

namespace nabla {

/// Total map from source point indices to target point indices.
struct PointMap {
  std::vector<std::size_t> image;

  static PointMap identity(std::size_t n) {
    PointMap m;
    for (std::size_t i = 0; i < n; ++i) m.image.push_back(i);
    return m;
  }

  std::size_t operator()(std::size_t x) const { return image.at(x); }

  void validate(std::size_t source_size, std::size_t target_size) const {
    if (image.size() != source_size) throw InputError("point map is not total on the source");
    for (std::size_t y : image)
      if (y >= target_size) throw InputError("point map leaves the target");
  }
};

/// A pair and parameter where w2(t, f x, f y) > w1(t, x, y).
struct NonexpansiveViolation {
  std::size_t x;
  std::size_t y;
  Rational t;
};

/// Smallest violating t for the first offending pair, scanning pairs in index order.
inline std::optional<NonexpansiveViolation> nonexpansive_violation(const StepModularSpace& source,
                                                                   const StepModularSpace& target,
                                                                   const PointMap& f) {
  f.validate(source.size(), target.size());
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y) {
      const StepFunction& w1 = source.w(x, y);
      const StepFunction& w2 = target.w(f(x), f(y));
      for (const auto& t : regime_samples(merged_cuts(w1, w2)))
        if (w1(t) < w2(t)) return NonexpansiveViolation{x, y, t};
    }
  return std::nullopt;
}

/// w2(t, f x, f y) <= w1(t, x, y) for all pairs and all t.
inline bool is_nonexpansive(const StepModularSpace& source, const StepModularSpace& target, const PointMap& f) {
  return !nonexpansive_violation(source, target, f).has_value();
}

namespace detail {

inline bool lipschitz_with(const StepModularSpace& source, const StepModularSpace& target, const PointMap& f,
                           const Rational& k) {
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y)
      if (!le_op(source.w(x, y), dilate(target.w(f(x), f(y)), k))) return false;
  return true;
}

}  // namespace detail

/**
 * Some k > 0 with w2(k t, f x, f y) <= w1(t, x, y) everywhere. Whether a given
 * k works can only change where k equals a target-cut / source-cut ratio, so
 * the ratios, one k inside each gap between them, and one beyond each end are
 * tried in increasing order. Every returned k has been verified.
 */
inline std::optional<Rational> is_lipschitz(const StepModularSpace& source, const StepModularSpace& target,
                                            const PointMap& f) {
  f.validate(source.size(), target.size());
  std::vector<Rational> source_cuts, target_cuts;
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y) {
      for (const auto& c : source.w(x, y).cuts()) source_cuts.push_back(c.t);
      for (const auto& c : target.w(f(x), f(y)).cuts()) target_cuts.push_back(c.t);
    }
  std::vector<Rational> ratios;
  for (const auto& a : target_cuts)
    for (const auto& b : source_cuts) ratios.emplace_back(a / b);
  ratios.emplace_back(1);
  std::sort(ratios.begin(), ratios.end());
  ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());

  std::vector<Rational> candidates{Rational(ratios.front() / 2)};
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    candidates.push_back(ratios[i]);
    candidates.push_back(i + 1 < ratios.size() ? midpoint(ratios[i], ratios[i + 1]) : Rational(ratios[i] * 2));
  }
  for (const auto& k : candidates)
    if (detail::lipschitz_with(source, target, f, k)) return k;
  return std::nullopt;
}

/**
 * Strong uniform continuity: for every t some s with w2(t, f x, f y) <=
 * w1(s, x, y) for all pairs. Source functions attain their largest value below
 * their first cut, so s0 = half the smallest first cut is the best choice; t
 * ranges over one sample per constancy regime of the target functions.
 */
inline bool is_suc(const StepModularSpace& source, const StepModularSpace& target, const PointMap& f) {
  f.validate(source.size(), target.size());
  std::optional<Rational> first_cut;
  std::vector<StepFunction> targets;
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y) {
      const auto cuts = source.w(x, y).cuts();
      if (!cuts.empty() && (!first_cut || cuts.front().t < *first_cut)) first_cut = cuts.front().t;
      targets.push_back(target.w(f(x), f(y)));
    }
  const Rational s0 = first_cut ? Rational(*first_cut / 2) : Rational(1);
  for (const auto& t : regime_samples(merged_cuts(targets)))
    for (std::size_t x = 0; x < source.size(); ++x)
      for (std::size_t y = 0; y < source.size(); ++y)
        if (source.w(x, y)(s0) < target.w(f(x), f(y))(t)) return false;
  return true;
}

/// For each target entourage on the candidate grid some source entourage maps into it.
inline bool is_uniformly_continuous(const StepModularSpace& source, const StepModularSpace& target,
                                    const PointMap& f) {
  f.validate(source.size(), target.size());
  const auto sp = candidate_parameters(source);
  const auto tp = candidate_parameters(target);
  std::vector<Entourage> source_entourages;
  for (const auto& s : sp.t)
    for (const auto& d : sp.eps) source_entourages.push_back(entourage(source, s, d));
  for (const auto& t : tp.t)
    for (const auto& e : tp.eps) {
      const Entourage goal = entourage(target, t, e);
      const bool found = std::any_of(source_entourages.begin(), source_entourages.end(), [&](const Entourage& u) {
        for (std::size_t x = 0; x < source.size(); ++x)
          for (std::size_t y = 0; y < source.size(); ++y)
            if (contains(u[x], y) && !contains(goal[f(x)], f(y))) return false;
        return true;
      });
      if (!found) return false;
    }
  return true;
}

// --- scaled spaces ------------------------------------------------------------

/// Classic Lipschitz constant: some k > 0 with q(f x, f y) <= k d(x, y).
inline std::optional<Rational> metric_lipschitz_constant(const ScaledModularSpace& source,
                                                         const ScaledModularSpace& target, const PointMap& f) {
  f.validate(source.size(), target.size());
  Rational k = 0;
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y) {
      const Rational& q = target.d(f(x), f(y));
      const Rational& d = source.d(x, y);
      if (sgn(d) == 0) {
        if (sgn(q) != 0) return std::nullopt;
      } else if (q / d > k) {
        k = q / d;
      }
    }
  if (sgn(k) == 0) k = 1;
  return k;
}

/// Modular Lipschitz on the symbolic form: q / (k t) <= d / t, i.e. q <= k d.
inline std::optional<Rational> is_lipschitz(const ScaledModularSpace& source, const ScaledModularSpace& target,
                                            const PointMap& f) {
  f.validate(source.size(), target.size());
  std::vector<Rational> candidates{Rational(1)};
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y)
      if (sgn(source.d(x, y)) > 0) candidates.emplace_back(target.d(f(x), f(y)) / source.d(x, y));
  std::sort(candidates.begin(), candidates.end());
  for (const auto& k : candidates) {
    if (sgn(k) <= 0) continue;
    bool ok = true;
    for (std::size_t x = 0; x < source.size() && ok; ++x)
      for (std::size_t y = 0; y < source.size() && ok; ++y)
        ok = target.w(Rational(k), f(x), f(y)) <= source.w(Rational(1), x, y);
    if (ok) return k;
  }
  return std::nullopt;
}

/// q / t <= d / s for all pairs. At t = 1 the best s is min d / q over pairs
/// with q > 0; other t follow by scaling s with t.
inline bool is_suc(const ScaledModularSpace& source, const ScaledModularSpace& target, const PointMap& f) {
  f.validate(source.size(), target.size());
  std::optional<Rational> s;
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y) {
      const Rational& q = target.d(f(x), f(y));
      if (sgn(q) == 0) continue;
      if (sgn(source.d(x, y)) == 0) return false;
      Rational ratio = source.d(x, y) / q;
      if (!s || ratio < *s) s = ratio;
    }
  const Rational s0 = s.value_or(Rational(1));
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y)
      if (source.w(s0, x, y) < target.w(Rational(1), f(x), f(y))) return false;
  return true;
}

}  // namespace nabla

#endif  // NABLA_MORPHISM_HPP_
