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
#ifndef NABLA_MODULAR_HPP_
#define NABLA_MODULAR_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/rational.hpp"
#include "nabla/step_function.hpp"
#include "nabla/topology.hpp"

namespace nabla {

using StepTable = std::vector<std::vector<StepFunction>>;
using DistanceMatrix = std::vector<std::vector<Rational>>;

namespace detail {

inline std::unordered_map<std::string, std::size_t> index_points(const std::vector<std::string>& points) {
  if (points.empty()) throw InputError("a space needs at least one point");
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!idx.emplace(points[i], i).second) throw InputError("duplicate point '" + points[i] + "'");
  return idx;
}

template <class Table>
void check_table_shape(const Table& t, std::size_t n) {
  if (t.size() != n) throw InputError("pairwise table has wrong size");
  for (const auto& row : t)
    if (row.size() != n) throw InputError("pairwise table has wrong size");
}

}  // namespace detail

/// Finite point set with a step function w(x, y) for every ordered pair.
class StepModularSpace {
 public:
  StepModularSpace(std::vector<std::string> points, StepTable w) : points_(std::move(points)), w_(std::move(w)) {
    index_ = detail::index_points(points_);
    detail::check_table_shape(w_, points_.size());
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& name(std::size_t i) const { return points_.at(i); }
  std::size_t index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw InputError("unknown point '" + std::string(id) + "'");
    return it->second;
  }
  const StepFunction& w(std::size_t x, std::size_t y) const { return w_.at(x).at(y); }
  const StepTable& table() const noexcept { return w_; }

  friend bool operator==(const StepModularSpace& a, const StepModularSpace& b) {
    return a.points_ == b.points_ && a.w_ == b.w_;
  }

 private:
  std::vector<std::string> points_;
  StepTable w_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Throws unless d is a nonnegative matrix with zero diagonal satisfying the
/// triangle inequality.
inline void validate_quasi_pseudometric(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  detail::check_table_shape(d, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (sgn(d[x][x]) != 0) throw InputError("distance matrix has nonzero diagonal");
    for (std::size_t y = 0; y < n; ++y)
      if (sgn(d[x][y]) < 0) throw InputError("distance matrix has a negative entry");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z)
      for (std::size_t y = 0; y < n; ++y)
        if (d[x][y] > d[x][z] + d[z][y]) throw InputError("distance matrix violates the triangle inequality");
}

/// The standard modular w(t, x, y) = d(x, y) / t of a rational quasi-pseudometric,
/// kept symbolic.
class ScaledModularSpace {
 public:
  ScaledModularSpace(std::vector<std::string> points, DistanceMatrix d) : points_(std::move(points)), d_(std::move(d)) {
    index_ = detail::index_points(points_);
    detail::check_table_shape(d_, points_.size());
    validate_quasi_pseudometric(d_);
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& name(std::size_t i) const { return points_.at(i); }
  std::size_t index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw InputError("unknown point '" + std::string(id) + "'");
    return it->second;
  }
  const Rational& d(std::size_t x, std::size_t y) const { return d_.at(x).at(y); }
  const DistanceMatrix& matrix() const noexcept { return d_; }

  /// w(t, x, y) = d(x, y) / t.
  Rational w(const Rational& t, std::size_t x, std::size_t y) const {
    if (sgn(t) <= 0) throw InputError("t must be positive");
    return d(x, y) / t;
  }

  friend bool operator==(const ScaledModularSpace& a, const ScaledModularSpace& b) {
    return a.points_ == b.points_ && a.d_ == b.d_;
  }

 private:
  std::vector<std::string> points_;
  DistanceMatrix d_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline ScaledModularSpace standard_modular(std::vector<std::string> points, DistanceMatrix d) {
  return ScaledModularSpace(std::move(points), std::move(d));
}

/// w_g(t, x, y) = g(t) * d(x, y), with 0 * inf = 0.
inline StepModularSpace from_gauge(std::vector<std::string> points, const DistanceMatrix& d, const StepFunction& g) {
  if (g == StepFunction::zero()) throw InputError("gauge function must not be identically zero");
  detail::check_table_shape(d, points.size());
  validate_quasi_pseudometric(d);
  StepTable w(points.size(), std::vector<StepFunction>(points.size()));
  for (std::size_t x = 0; x < points.size(); ++x)
    for (std::size_t y = 0; y < points.size(); ++y) w[x][y] = scale(g, d[x][y]);
  return StepModularSpace(std::move(points), std::move(w));
}

// --- axioms -----------------------------------------------------------------

struct AxiomReport {
  bool m1 = false;  // zero on the diagonal
  bool m2 = false;  // split triangle inequality
  bool m3 = false;  // mutual zero distance only on the diagonal
  bool m4 = false;  // symmetric
  bool left_continuous = false;

  /// A quasi-pseudometric modular.
  bool valid() const { return m1 && m2; }
};

inline AxiomReport check_axioms(const StepModularSpace& S) {
  const std::size_t n = S.size();
  const StepFunction zero = StepFunction::zero();
  AxiomReport r;
  r.m1 = true;
  for (std::size_t x = 0; x < n; ++x)
    if (!(S.w(x, x) == zero)) r.m1 = false;
  r.m2 = true;
  for (std::size_t x = 0; x < n && r.m2; ++x)
    for (std::size_t z = 0; z < n && r.m2; ++z)
      for (std::size_t y = 0; y < n; ++y)
        if (!le_op(oplus(S.w(x, z), S.w(z, y)), S.w(x, y))) {
          r.m2 = false;
          break;
        }
  r.m3 = true;
  r.m4 = true;
  r.left_continuous = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && S.w(x, y) == zero && S.w(y, x) == zero) r.m3 = false;
      if (!(S.w(x, y) == S.w(y, x))) r.m4 = false;
      if (!is_left_continuous(S.w(x, y))) r.left_continuous = false;
    }
  return r;
}

/**
 * For the scaled form the split triangle inequality reads
 * d(x,y)/(r+s) <= d(x,z)/r + d(z,y)/s for all r, s > 0. The right side is
 * minimised at r : s = sqrt(a) : sqrt(b), giving d(x,y) <= (sqrt(a) + sqrt(b))^2,
 * decided here without irrationals.
 */
inline bool scaled_split_triangle(const Rational& dxy, const Rational& a, const Rational& b) {
  const Rational excess = dxy - a - b;
  if (sgn(excess) <= 0) return true;
  return excess * excess <= 4 * a * b;
}

inline AxiomReport check_axioms(const ScaledModularSpace& S) {
  const std::size_t n = S.size();
  AxiomReport r;
  r.m1 = r.m2 = r.m3 = r.m4 = true;
  r.left_continuous = true;  // d / t is continuous in t
  for (std::size_t x = 0; x < n; ++x) {
    if (sgn(S.d(x, x)) != 0) r.m1 = false;
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && sgn(S.d(x, y)) == 0 && sgn(S.d(y, x)) == 0) r.m3 = false;
      if (S.d(x, y) != S.d(y, x)) r.m4 = false;
      for (std::size_t z = 0; z < n; ++z)
        if (!scaled_split_triangle(S.d(x, y), S.d(x, z), S.d(z, y))) r.m2 = false;
    }
  }
  return r;
}

// --- entourages and neighborhoods ------------------------------------------

/// Entourage as rows: row x is the set of y with (x, y) in the entourage.
using Entourage = std::vector<PointSet>;

inline PointSet neighborhood(const StepModularSpace& S, std::size_t x, const Rational& t, const Rational& eps) {
  if (sgn(t) <= 0 || sgn(eps) <= 0) throw InputError("neighborhood parameters must be positive");
  if (x >= S.size()) throw InputError("point index out of range");
  const ExtRational bound(eps);
  PointSet out = 0;
  for (std::size_t y = 0; y < S.size(); ++y)
    if (S.w(x, y)(t) < bound) out |= singleton(y);
  return out;
}

/// B(x, t * eps) of the underlying quasi-pseudometric.
inline PointSet neighborhood(const ScaledModularSpace& S, std::size_t x, const Rational& t, const Rational& eps) {
  if (sgn(t) <= 0 || sgn(eps) <= 0) throw InputError("neighborhood parameters must be positive");
  if (x >= S.size()) throw InputError("point index out of range");
  const Rational radius = t * eps;
  PointSet out = 0;
  for (std::size_t y = 0; y < S.size(); ++y)
    if (S.d(x, y) < radius) out |= singleton(y);
  return out;
}

template <class Space>
PointSet neighborhood(const Space& S, std::string_view x, const Rational& t, const Rational& eps) {
  return neighborhood(S, S.index_of(x), t, eps);
}

template <class Space>
Entourage entourage(const Space& S, const Rational& t, const Rational& eps) {
  Entourage e(S.size());
  for (std::size_t x = 0; x < S.size(); ++x) e[x] = neighborhood(S, x, t, eps);
  return e;
}

inline bool subset_of(const Entourage& a, const Entourage& b) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (!subset_of(a[x], b[x])) return false;
  return true;
}

inline Entourage compose(const Entourage& a, const Entourage& b) {
  Entourage out(a.size(), 0);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t z = 0; z < a.size(); ++z)
      if (contains(a[x], z)) out[x] |= b[z];
  return out;
}

inline bool is_symmetric(const Entourage& e) {
  for (std::size_t x = 0; x < e.size(); ++x)
    for (std::size_t y = 0; y < e.size(); ++y)
      if (contains(e[x], y) != contains(e[y], x)) return false;
  return true;
}

/// Finite parameter grid reaching every distinct neighborhood W_{t,eps}(x).
struct CandidateParameters {
  std::vector<Rational> t;
  std::vector<Rational> eps;
};

namespace detail {

inline std::vector<Rational> threshold_samples(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) return {Rational(1)};
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) out.push_back(midpoint(values[i], values[i + 1]));
  out.emplace_back(values.back() + 1);
  return out;
}

}  // namespace detail

/**
 * t: one point per constancy regime of all pairwise functions (each cut,
 * midpoints between cuts, a point below the first cut and one past the last).
 * eps: midpoints between consecutive attained finite values, and max + 1.
 */
inline CandidateParameters candidate_parameters(const StepModularSpace& S) {
  std::vector<StepFunction> all;
  std::vector<Rational> values;
  for (const auto& row : S.table())
    for (const auto& f : row) {
      all.push_back(f);
      auto add = [&](const ExtRational& v) {
        if (v.is_finite()) values.push_back(v.value());
      };
      add(f.head());
      for (const auto& c : f.cuts()) {
        add(c.at);
        add(c.after);
      }
    }
  values.emplace_back(0);
  return CandidateParameters{regime_samples(merged_cuts(all)), detail::threshold_samples(std::move(values))};
}

/// Only t * eps matters for the scaled form, so t is fixed at 1.
inline CandidateParameters candidate_parameters(const ScaledModularSpace& S) {
  std::vector<Rational> values{Rational(0)};
  for (const auto& row : S.matrix()) values.insert(values.end(), row.begin(), row.end());
  return CandidateParameters{{Rational(1)}, detail::threshold_samples(std::move(values))};
}

template <class Space>
std::vector<std::vector<PointSet>> candidate_neighborhoods(const Space& S) {
  const auto params = candidate_parameters(S);
  std::vector<std::vector<PointSet>> out(S.size());
  for (std::size_t x = 0; x < S.size(); ++x) {
    for (const auto& t : params.t)
      for (const auto& eps : params.eps) out[x].push_back(neighborhood(S, x, t, eps));
    std::sort(out[x].begin(), out[x].end());
    out[x].erase(std::unique(out[x].begin(), out[x].end()), out[x].end());
  }
  return out;
}

/// T(w): G is open iff each x in G has some W_{t,eps}(x) inside G.
template <class Space>
FiniteTopology topology(const Space& S, std::size_t max_points = kDefaultMaxPoints) {
  check_point_bound(S.size(), max_points);
  return topology_from_neighborhoods(S.points(), candidate_neighborhoods(S), max_points);
}

template <class Space>
bool is_open(const Space& S, PointSet G) {
  const auto nbs = candidate_neighborhoods(S);
  for (std::size_t x = 0; x < S.size(); ++x) {
    if (!contains(G, x)) continue;
    if (std::none_of(nbs[x].begin(), nbs[x].end(), [&](PointSet nb) { return subset_of(nb, G); })) return false;
  }
  return true;
}

// --- d_w --------------------------------------------------------------------

/// inf { t > 0 : f(t) <= t }, scanning the pieces of f left to right.
inline ExtRational d_w(const StepFunction& f) {
  Rational lo = 0;
  // Open piece (lo, hi) with value v; hi absent means unbounded.
  auto open_piece = [&](const ExtRational& v, const std::optional<Rational>& hi) -> std::optional<Rational> {
    if (v.is_infinite()) return std::nullopt;
    if (v.value() <= lo) return lo;
    if (!hi || v.value() < *hi) return v.value();
    return std::nullopt;
  };
  for (std::size_t i = 0; i < f.cuts().size(); ++i) {
    const auto& c = f.cuts()[i];
    if (auto r = open_piece(f.before(i), c.t)) return ExtRational(*r);
    if (c.at.is_finite() && c.at.value() <= c.t) return ExtRational(c.t);
    lo = c.t;
  }
  if (auto r = open_piece(f.tail(), std::nullopt)) return ExtRational(*r);
  return ExtRational::infinity();
}

inline ExtRational d_w(const StepModularSpace& S, std::size_t x, std::size_t y) { return d_w(S.w(x, y)); }

/// Rational bracket [lo, hi] around an irrational (or rational) value.
struct Enclosure {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

/// For w = d / t the defining condition is t >= sqrt(d). Exact when d is a
/// rational square; otherwise bisect until the bracket is at most
/// 2^-precision_bits wide.
inline Enclosure d_w(const ScaledModularSpace& S, std::size_t x, std::size_t y, unsigned precision_bits = 30) {
  const Rational& d = S.d(x, y);
  if (sgn(d) == 0) return Enclosure{Rational(0), Rational(0)};
  if (mpz_perfect_square_p(d.get_num_mpz_t()) && mpz_perfect_square_p(d.get_den_mpz_t())) {
    const Rational root(sqrt(mpz_class(d.get_num())), sqrt(mpz_class(d.get_den())));
    return Enclosure{root, root};
  }
  Rational lo = 0, hi = d > 1 ? d : Rational(1);
  Rational tol = 1;
  tol /= mpz_class(1) << precision_bits;
  while (hi - lo > tol) {
    Rational mid = midpoint(lo, hi);
    if (mid * mid <= d) {
      lo = mid;
      if (mid * mid == d) hi = mid;
    } else {
      hi = mid;
    }
  }
  return Enclosure{lo, hi};
}

// --- quasi-uniformity base -------------------------------------------------

struct BaseViolation {
  std::string kind;  // diagonal, refinement, composition, countable_base, symmetry
  std::string detail;
};

struct BaseReport {
  std::vector<BaseViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the filter-base, composition, countable-base and (under symmetry)
/// uniformity conditions over the candidate parameter grid.
inline BaseReport check_quasi_uniformity_base(const StepModularSpace& S) {
  BaseReport report;
  const auto params = candidate_parameters(S);
  const bool symmetric = check_axioms(S).m4;
  auto label = [](const Rational& t, const Rational& e) { return "t=" + to_string(t) + " eps=" + to_string(e); };

  struct Param {
    std::size_t it, ie;
    Rational t, eps;
    Entourage e;
  };
  // Both parameter lists are sorted, so the pointwise minimum of two grid
  // points is the grid point at the smaller indices.
  const std::size_t neps = params.eps.size();
  std::vector<Param> grid;
  for (std::size_t it = 0; it < params.t.size(); ++it)
    for (std::size_t ie = 0; ie < neps; ++ie)
      grid.push_back({it, ie, params.t[it], params.eps[ie], entourage(S, params.t[it], params.eps[ie])});

  for (const auto& p : grid) {
    for (std::size_t x = 0; x < S.size(); ++x)
      if (!contains(p.e[x], x))
        report.violations.push_back({"diagonal", label(p.t, p.eps) + " misses (" + S.name(x) + "," + S.name(x) + ")"});

    const Entourage half = entourage(S, Rational(p.t / 2), Rational(p.eps / 2));
    if (!subset_of(compose(half, half), p.e))
      report.violations.push_back({"composition", label(p.t, p.eps)});

    const Rational m = p.t < p.eps ? p.t : p.eps;
    // floor(1/m) + 1 <= ceil(1/m) + 1, and 1/n < m.
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), m.get_den_mpz_t(), m.get_num_mpz_t());
    n += 1;
    const Rational inv_n(mpq_class(1, n));
    if (!subset_of(entourage(S, inv_n, inv_n), p.e))
      report.violations.push_back({"countable_base", label(p.t, p.eps) + " n=" + n.get_str()});

    if (symmetric && !is_symmetric(p.e)) report.violations.push_back({"symmetry", label(p.t, p.eps)});
  }

  for (const auto& a : grid)
    for (const auto& b : grid) {
      const Entourage& meet = grid[std::min(a.it, b.it) * neps + std::min(a.ie, b.ie)].e;
      for (std::size_t x = 0; x < S.size(); ++x)
        if (!subset_of(meet[x], a.e[x] & b.e[x])) {
          report.violations.push_back({"refinement", label(a.t, a.eps) + " / " + label(b.t, b.eps)});
          break;
        }
    }
  return report;
}

// --- constructions ----------------------------------------------------------

/// Pairwise left regularization; the result is always left-continuous.
inline StepModularSpace regularize(const StepModularSpace& S) {
  StepTable w = S.table();
  for (auto& row : w)
    for (auto& f : row) f = left_regularize(f);
  return StepModularSpace(S.points(), std::move(w));
}

inline constexpr std::size_t kMaxChistyakov = 200;

/**
 * Points x, y, z1..zN with
 *   w(x,y)     = 1 on (0,1), 0 from 1
 *   w(x,z_n)   = 1 on (0,1], 0 after
 *   w(y,z_n)   = 1/n on (0,1), 0 from 1
 *   w(z_n,z_m) = 1/min(n,m) on (0,1), 0 from 1
 * symmetric, 0 on the diagonal. A metric modular that is not left-continuous.
 */
inline StepModularSpace chistyakov_example(std::size_t N) {
  if (N < 1 || N > kMaxChistyakov) throw InputError("N must be in [1, " + std::to_string(kMaxChistyakov) + "]");
  std::vector<std::string> points{"x", "y"};
  for (std::size_t n = 1; n <= N; ++n) points.push_back("z" + std::to_string(n));
  const std::size_t size = points.size();
  auto drop_at_one = [](const Rational& v) { return StepFunction::make(ExtRational(v), {Cut{Rational(1), 0, 0}}); };
  const StepFunction drop_after_one = StepFunction::make(1, {Cut{Rational(1), 1, 0}});

  StepTable w(size, std::vector<StepFunction>(size));
  auto set = [&](std::size_t a, std::size_t b, const StepFunction& f) {
    w[a][b] = f;
    w[b][a] = f;
  };
  set(0, 1, drop_at_one(Rational(1)));
  for (std::size_t n = 1; n <= N; ++n) {
    set(0, n + 1, drop_after_one);
    set(1, n + 1, drop_at_one(make_rational(1, static_cast<std::int64_t>(n))));
    for (std::size_t m = n + 1; m <= N; ++m) set(n + 1, m + 1, drop_at_one(make_rational(1, static_cast<std::int64_t>(n))));
  }
  return StepModularSpace(std::move(points), std::move(w));
}

/// Partial generator table: missing pairs are absent, the diagonal must be 0.
using PartialStepTable = std::vector<std::vector<std::optional<StepFunction>>>;

/**
 * Smallest modular (in the opposite order) above the generator: w(x, y) is the
 * join over paths of the convolution of the edge functions, computed by
 * Floyd-Warshall relaxation. Missing pairs start at infinity.
 */
inline StepModularSpace triangle_closure(std::vector<std::string> points, const PartialStepTable& generator) {
  const std::size_t n = points.size();
  detail::check_table_shape(generator, n);
  StepTable w(n, std::vector<StepFunction>(n, StepFunction::infinity()));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) {
        if (generator[x][y] && !(*generator[x][y] == StepFunction::zero()))
          throw InputError("generator has a nonzero diagonal entry at '" + points[x] + "'");
        w[x][y] = StepFunction::zero();
      } else if (generator[x][y]) {
        w[x][y] = *generator[x][y];
      }
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || w[i][k] == StepFunction::infinity()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k || i == j) continue;
        w[i][j] = join_op(w[i][j], oplus(w[i][k], w[k][j]));
      }
    }
  return StepModularSpace(std::move(points), std::move(w));
}

}  // namespace nabla

#endif  // NABLA_MODULAR_HPP_
