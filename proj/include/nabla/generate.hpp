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
#ifndef NABLA_GENERATE_HPP_
#define NABLA_GENERATE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nabla/modular.hpp"
#include "nabla/morphism.hpp"
#include "nabla/rational.hpp"
#include "nabla/step_function.hpp"

// Random instances for property checks. Only the raw mt19937_64 stream is
// used (standard distributions are implementation-defined), so a seed gives
// the same instances on every platform.

namespace nabla {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw InputError("uniform_below needs a positive bound");
  const std::uint64_t limit = Rng::max() - (Rng::max() % n + 1) % n;
  std::uint64_t v;
  do v = rng();
  while (v > limit);
  return v % n;
}

/// True with probability num/den.
inline bool chance(Rng& rng, std::uint64_t num, std::uint64_t den) { return uniform_below(rng, den) < num; }

struct StepGenOptions {
  std::size_t max_cuts = 6;
  std::int64_t cut_grid = 4;   // cuts on multiples of 1/cut_grid
  std::int64_t cut_limit = 8;  // ... up to this value
  std::int64_t value_grid = 4; // finite values on multiples of 1/value_grid
  std::int64_t value_limit = 4;
  bool allow_infinity = true;
};

/// A finite value from the value grid, or infinity (probability 1/17 if allowed).
inline ExtRational random_value(Rng& rng, const StepGenOptions& o = {}) {
  const std::uint64_t finite = static_cast<std::uint64_t>(o.value_grid * o.value_limit + 1);
  const std::uint64_t k = uniform_below(rng, finite + (o.allow_infinity ? 1 : 0));
  if (k == finite) return ExtRational::infinity();
  return ExtRational(make_rational(static_cast<std::int64_t>(k), o.value_grid));
}

inline StepFunction random_step_function(Rng& rng, const StepGenOptions& o = {}) {
  if (chance(rng, 1, 16)) return StepFunction::zero();
  const std::size_t slots = static_cast<std::size_t>(o.cut_grid * o.cut_limit);
  const std::size_t k = static_cast<std::size_t>(uniform_below(rng, std::min(o.max_cuts, slots) + 1));
  std::vector<std::int64_t> positions;
  while (positions.size() < k) {
    const auto p = static_cast<std::int64_t>(uniform_below(rng, slots)) + 1;
    if (std::find(positions.begin(), positions.end(), p) == positions.end()) positions.push_back(p);
  }
  std::sort(positions.begin(), positions.end());
  std::vector<ExtRational> values(2 * k + 1);
  for (auto& v : values) v = random_value(rng, o);
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<Cut> cuts;
  for (std::size_t i = 0; i < k; ++i)
    cuts.push_back(Cut{make_rational(positions[i], o.cut_grid), values[2 * i + 1], values[2 * i + 2]});
  return StepFunction::make(values[0], std::move(cuts));
}

inline std::vector<std::string> default_point_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

struct SpaceGenOptions {
  std::size_t min_points = 1;
  std::size_t max_points = 6;
  bool symmetric = false;
  std::uint64_t edge_num = 3;  // each generator edge present with probability edge_num/edge_den
  std::uint64_t edge_den = 4;
  StepGenOptions step;
};

/// Random generator table passed through triangle_closure, so M1 and M2 hold.
inline StepModularSpace random_step_space(Rng& rng, const SpaceGenOptions& o = {}) {
  const std::size_t n = o.min_points + static_cast<std::size_t>(uniform_below(rng, o.max_points - o.min_points + 1));
  PartialStepTable gen(n, std::vector<std::optional<StepFunction>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = o.symmetric ? x + 1 : 0; y < n; ++y) {
      if (x == y || !chance(rng, o.edge_num, o.edge_den)) continue;
      gen[x][y] = random_step_function(rng, o.step);
      if (o.symmetric) gen[y][x] = gen[x][y];
    }
  return triangle_closure(default_point_names(n), gen);
}

/// Random rational quasi-pseudometric: grid values closed under min-plus paths.
inline DistanceMatrix random_quasi_pseudometric(Rng& rng, std::size_t n, bool symmetric = false,
                                                std::int64_t grid = 4, std::int64_t limit = 8) {
  DistanceMatrix d(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = symmetric ? x + 1 : 0; y < n; ++y) {
      if (x == y) continue;
      d[x][y] = make_rational(static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(grid * limit + 1))), grid);
      if (symmetric) d[y][x] = d[x][y];
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline ScaledModularSpace random_scaled_space(Rng& rng, std::size_t min_points = 1, std::size_t max_points = 6) {
  const std::size_t n = min_points + static_cast<std::size_t>(uniform_below(rng, max_points - min_points + 1));
  return standard_modular(default_point_names(n), random_quasi_pseudometric(rng, n));
}

inline PointMap random_point_map(Rng& rng, std::size_t source_size, std::size_t target_size) {
  PointMap f;
  for (std::size_t i = 0; i < source_size; ++i) f.image.push_back(static_cast<std::size_t>(uniform_below(rng, target_size)));
  return f;
}

}  // namespace nabla

#endif  // NABLA_GENERATE_HPP_
