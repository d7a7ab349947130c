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
#ifndef NABLA_QCAT_HPP_
#define NABLA_QCAT_HPP_

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/modular.hpp"
#include "nabla/morphism.hpp"
#include "nabla/quantale_lab.hpp"
#include "nabla/rational.hpp"
#include "nabla/step_function.hpp"
#include "nabla/topology.hpp"

namespace nabla {

/// Category enriched in the step-function quantale: hom(x, y) is a step function.
class NablaCategory {
 public:
  NablaCategory(std::vector<std::string> points, StepTable hom) : points_(std::move(points)), hom_(std::move(hom)) {
    index_ = detail::index_points(points_);
    detail::check_table_shape(hom_, points_.size());
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& name(std::size_t i) const { return points_.at(i); }
  std::size_t index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw InputError("unknown point '" + std::string(id) + "'");
    return it->second;
  }
  const StepFunction& hom(std::size_t x, std::size_t y) const { return hom_.at(x).at(y); }
  const StepTable& table() const noexcept { return hom_; }

  friend bool operator==(const NablaCategory& a, const NablaCategory& b) {
    return a.points_ == b.points_ && a.hom_ == b.hom_;
  }

 private:
  std::vector<std::string> points_;
  StepTable hom_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Category enriched in an explicit finite quantale; homs are carrier indices.
class FiniteQCategory {
 public:
  FiniteQCategory(FiniteQuantale quantale, std::vector<std::string> points,
                  std::vector<std::vector<std::size_t>> hom)
      : quantale_(std::move(quantale)), points_(std::move(points)), hom_(std::move(hom)) {
    index_ = detail::index_points(points_);
    detail::check_table_shape(hom_, points_.size());
    for (const auto& row : hom_)
      for (std::size_t v : row)
        if (v >= quantale_.size()) throw InputError("hom value outside the quantale carrier");
  }

  const FiniteQuantale& quantale() const noexcept { return quantale_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& name(std::size_t i) const { return points_.at(i); }
  std::size_t index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw InputError("unknown point '" + std::string(id) + "'");
    return it->second;
  }
  std::size_t hom(std::size_t x, std::size_t y) const { return hom_.at(x).at(y); }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return hom_; }

 private:
  FiniteQuantale quantale_;
  std::vector<std::string> points_;
  std::vector<std::vector<std::size_t>> hom_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct QCategoryReport {
  bool qc1 = false;  // top <= q(x, x)
  bool qc2 = false;  // q(x, z) * q(z, y) <= q(x, y)
  bool separated = false;
  bool symmetric = false;

  bool valid() const { return qc1 && qc2; }
};

inline QCategoryReport check_qcategory(const NablaCategory& C) {
  const StepFunction top = StepFunction::zero();
  const std::size_t n = C.size();
  QCategoryReport r;
  r.qc1 = r.qc2 = r.separated = r.symmetric = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (!le_op(top, C.hom(x, x))) r.qc1 = false;
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && C.hom(x, y) == top && C.hom(y, x) == top) r.separated = false;
      if (!(C.hom(x, y) == C.hom(y, x))) r.symmetric = false;
    }
  }
  for (std::size_t x = 0; x < n && r.qc2; ++x)
    for (std::size_t z = 0; z < n && r.qc2; ++z)
      for (std::size_t y = 0; y < n; ++y)
        if (!le_op(oplus(C.hom(x, z), C.hom(z, y)), C.hom(x, y))) {
          r.qc2 = false;
          break;
        }
  return r;
}

inline QCategoryReport check_qcategory(const FiniteQCategory& C) {
  const auto& Q = C.quantale();
  const auto& L = Q.lattice();
  const std::size_t n = C.size();
  QCategoryReport r;
  r.qc1 = r.qc2 = r.separated = r.symmetric = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (!L.leq(L.top(), C.hom(x, x))) r.qc1 = false;
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && L.leq(L.top(), C.hom(x, y)) && L.leq(L.top(), C.hom(y, x))) r.separated = false;
      if (C.hom(x, y) != C.hom(y, x)) r.symmetric = false;
      for (std::size_t z = 0; z < n; ++z)
        if (!L.leq(Q.op(C.hom(x, z), C.hom(z, y)), C.hom(x, y))) r.qc2 = false;
    }
  }
  return r;
}

// --- transposition functors -------------------------------------------------

/// a_w(x, y)(t) = w(t, x, y).
inline NablaCategory e_mod(const StepModularSpace& S) {
  StepTable hom(S.size(), std::vector<StepFunction>(S.size()));
  for (std::size_t x = 0; x < S.size(); ++x)
    for (std::size_t y = 0; y < S.size(); ++y) hom[x][y] = S.w(x, y);
  return NablaCategory(S.points(), std::move(hom));
}

/// w_a(t, x, y) = a(x, y)(t).
inline StepModularSpace e_nabla(const NablaCategory& C) {
  StepTable w(C.size(), std::vector<StepFunction>(C.size()));
  for (std::size_t x = 0; x < C.size(); ++x)
    for (std::size_t y = 0; y < C.size(); ++y) w[x][y] = C.hom(x, y);
  return StepModularSpace(C.points(), std::move(w));
}

/// e_nabla restricted to categories whose homs are all left-continuous.
inline StepModularSpace e_nabla_L(const NablaCategory& C) {
  for (std::size_t x = 0; x < C.size(); ++x)
    for (std::size_t y = 0; y < C.size(); ++y)
      if (!is_left_continuous(C.hom(x, y)))
        throw ContractError("hom(" + C.name(x) + "," + C.name(y) + ") is not left-continuous");
  return e_nabla(C);
}

/// a(x, y) <=op b(f x, f y) for all pairs.
inline bool is_q_functor(const NablaCategory& source, const NablaCategory& target, const PointMap& f) {
  f.validate(source.size(), target.size());
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y)
      if (!le_op(source.hom(x, y), target.hom(f(x), f(y)))) return false;
  return true;
}

inline bool is_q_functor(const FiniteQCategory& source, const FiniteQCategory& target, const PointMap& f) {
  f.validate(source.size(), target.size());
  const auto& L = target.quantale().lattice();
  if (source.quantale().table() != target.quantale().table() ||
      source.quantale().lattice().poset().relation() != L.poset().relation())
    throw InputError("functor between categories over different quantales");
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y)
      if (!L.leq(source.hom(x, y), target.hom(f(x), f(y)))) return false;
  return true;
}

/// Left-regularizes every hom.
inline NablaCategory u_regularize(const NablaCategory& C) {
  StepTable hom = C.table();
  for (auto& row : hom)
    for (auto& f : row) f = left_regularize(f);
  return NablaCategory(C.points(), std::move(hom));
}

/// Regularizing on the category side and transporting back agrees with
/// regularizing the space directly.
inline bool verify_diagram(const StepModularSpace& S) {
  return e_nabla_L(u_regularize(e_mod(S))) == regularize(S);
}

// --- open balls -------------------------------------------------------------

/// B(x, f_step(t, eps)) = {y : f_step(t, eps) well below a(x, y)}.
inline PointSet ball(const NablaCategory& C, std::size_t x, const Rational& t, const Rational& eps) {
  if (sgn(t) <= 0 || sgn(eps) <= 0) throw InputError("ball parameters must be positive");
  if (x >= C.size()) throw InputError("point index out of range");
  const ExtRational radius(eps);
  PointSet out = 0;
  for (std::size_t y = 0; y < C.size(); ++y)
    if (well_below_fstep(t, radius, C.hom(x, y))) out |= singleton(y);
  return out;
}

inline PointSet ball(const NablaCategory& C, std::string_view x, const Rational& t, const Rational& eps) {
  return ball(C, C.index_of(x), t, eps);
}

namespace detail {

inline std::vector<std::vector<PointSet>> candidate_balls(const NablaCategory& C) {
  const auto params = candidate_parameters(e_nabla(C));
  std::vector<std::vector<PointSet>> out(C.size());
  for (std::size_t x = 0; x < C.size(); ++x)
    for (const auto& t : params.t)
      for (const auto& eps : params.eps) out[x].push_back(ball(C, x, t, eps));
  return out;
}

}  // namespace detail

/**
 * Open-ball topology: G is open iff every x in G has a ball B(x, r) inside G,
 * r well below the top. Radii range over the f_step(t, eps) family on the
 * candidate grid; every radius well below the top lies below some f_step in
 * the opposite order, and smaller radii give larger balls.
 */
inline FiniteTopology ball_topology(const NablaCategory& C, std::size_t max_points = kDefaultMaxPoints) {
  check_point_bound(C.size(), max_points);
  return topology_from_neighborhoods(C.points(), detail::candidate_balls(C), max_points);
}

/// The coarsest topology in which every ball is open. Differs from
/// ball_topology whenever some ball is not a neighborhood of its members.
inline FiniteTopology ball_generated_topology(const NablaCategory& C, std::size_t max_points = kDefaultMaxPoints) {
  check_point_bound(C.size(), max_points);
  std::set<PointSet> sub{0, full_set(C.size())};
  for (const auto& row : detail::candidate_balls(C)) sub.insert(row.begin(), row.end());
  std::set<PointSet> opens = sub;
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<PointSet> current(opens.begin(), opens.end());
    for (PointSet a : current)
      for (PointSet b : current)
        grew |= opens.insert(a | b).second | opens.insert(a & b).second;
  }
  return FiniteTopology(C.points(), std::vector<PointSet>(opens.begin(), opens.end()));
}

/// The modular topology and the open-ball topology of the transposed category coincide.
inline bool verify_topology_theorem(const StepModularSpace& S, std::size_t max_points = kDefaultMaxPoints) {
  return topology(S, max_points) == ball_topology(e_mod(S), max_points);
}

/// Open-ball topology over a finite value quantale.
inline FiniteTopology ball_topology(const FiniteQCategory& C, std::size_t max_points = kDefaultMaxPoints) {
  check_point_bound(C.size(), max_points);
  const auto& L = C.quantale().lattice();
  if (!vdl_check(L).value_distributive()) throw InputError("open balls need a value quantale");
  std::vector<std::vector<PointSet>> balls(C.size());
  for (std::size_t r = 0; r < L.size(); ++r) {
    if (!well_below(L, r, L.top())) continue;
    for (std::size_t x = 0; x < C.size(); ++x) {
      PointSet b = 0;
      for (std::size_t y = 0; y < C.size(); ++y)
        if (well_below(L, r, C.hom(x, y))) b |= singleton(y);
      balls[x].push_back(b);
    }
  }
  return topology_from_neighborhoods(C.points(), balls, max_points);
}

// --- bridges to preorders and metric spaces ---------------------------------

/// The two-element quantale ({0, 1}, <=, meet).
inline FiniteQuantale two_quantale() { return make_meet_quantale("two"); }

inline bool is_two_quantale(const FiniteQuantale& Q) {
  const auto two = two_quantale();
  return Q.size() == 2 && Q.lattice().poset().relation() == two.lattice().poset().relation() &&
         Q.table() == two.table();
}

/// x <= y iff a(x, y) is the top element 1.
inline Preorder to_preorder(const FiniteQCategory& C) {
  if (!is_two_quantale(C.quantale())) throw InputError("to_preorder needs a category over the two-element quantale");
  const std::size_t top = C.quantale().lattice().top();
  Relation leq(C.size(), std::vector<bool>(C.size()));
  for (std::size_t x = 0; x < C.size(); ++x)
    for (std::size_t y = 0; y < C.size(); ++y) leq[x][y] = C.hom(x, y) == top;
  return Preorder(C.points(), std::move(leq));
}

inline FiniteQCategory from_preorder(const Preorder& P) {
  auto Q = two_quantale();
  const std::size_t top = Q.lattice().top(), bottom = Q.lattice().bottom();
  std::vector<std::vector<std::size_t>> hom(P.size(), std::vector<std::size_t>(P.size()));
  for (std::size_t x = 0; x < P.size(); ++x)
    for (std::size_t y = 0; y < P.size(); ++y) hom[x][y] = P.leq(x, y) ? top : bottom;
  return FiniteQCategory(std::move(Q), P.elements(), std::move(hom));
}

inline bool is_isotone(const Preorder& source, const Preorder& target, const PointMap& f) {
  f.validate(source.size(), target.size());
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y)
      if (source.leq(x, y) && !target.leq(f(x), f(y))) return false;
  return true;
}

using ExtMatrix = std::vector<std::vector<ExtRational>>;

inline constexpr std::size_t kMaxLawvereCarrier = 4096;

/**
 * Finite sub-chain of the Lawvere quantale ([0, inf], >=, +) generated by
 * `values`: 0, infinity, and all sums of given values up to the largest
 * finite one; larger sums truncate to infinity. Element names are the values.
 */
inline FiniteQuantale lawvere_chain(const std::vector<ExtRational>& values) {
  std::vector<Rational> gens;
  Rational cap = 0;
  for (const auto& v : values)
    if (v.is_finite() && sgn(v.value()) > 0) {
      gens.push_back(v.value());
      if (v.value() > cap) cap = v.value();
    }
  std::set<Rational> closed{Rational(0)};
  std::vector<Rational> frontier{Rational(0)};
  while (!frontier.empty()) {
    const Rational s = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      Rational next = s + g;
      if (next <= cap && closed.insert(next).second) {
        if (closed.size() > kMaxLawvereCarrier) throw InputError("value set does not close to a finite chain within bound");
        frontier.push_back(next);
      }
    }
  }
  std::vector<ExtRational> carrier(closed.begin(), closed.end());
  carrier.push_back(ExtRational::infinity());
  const std::size_t n = carrier.size();
  std::vector<std::string> names;
  Relation leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(to_string(carrier[i]));
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = carrier[j] <= carrier[i];
  }
  std::vector<std::vector<std::size_t>> op(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ExtRational sum = carrier[i] + carrier[j];
      const auto it = std::find(carrier.begin(), carrier.end(), sum);
      op[i][j] = it == carrier.end() ? n - 1 : static_cast<std::size_t>(it - carrier.begin());
    }
  return FiniteQuantale(FiniteLattice(FinitePoset(std::move(names), std::move(leq))), std::move(op), 0);
}

/// Extended quasi-pseudometric as a category over its generated Lawvere chain.
inline FiniteQCategory from_eqpm(std::vector<std::string> points, const ExtMatrix& a) {
  detail::check_table_shape(a, points.size());
  std::vector<ExtRational> values;
  for (const auto& row : a) values.insert(values.end(), row.begin(), row.end());
  FiniteQuantale Q = lawvere_chain(values);
  std::vector<std::vector<std::size_t>> hom(points.size(), std::vector<std::size_t>(points.size()));
  for (std::size_t x = 0; x < points.size(); ++x)
    for (std::size_t y = 0; y < points.size(); ++y) hom[x][y] = Q.lattice().index_of(to_string(a[x][y]));
  return FiniteQCategory(std::move(Q), std::move(points), std::move(hom));
}

/// Reads hom values back from a category over a Lawvere chain.
inline ExtMatrix to_eqpm(const FiniteQCategory& C) {
  const auto& L = C.quantale().lattice();
  std::vector<ExtRational> values;
  for (std::size_t i = 0; i < L.size(); ++i) {
    try {
      values.push_back(parse_ext_rational(L.name(i)));
    } catch (const InputError&) {
      throw InputError("element '" + L.name(i) + "' is not a Lawvere value");
    }
  }
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < L.size(); ++j)
      if (L.leq(i, j) != (values[j] <= values[i])) throw InputError("carrier order is not the reversed numeric order");
  ExtMatrix out(C.size(), std::vector<ExtRational>(C.size()));
  for (std::size_t x = 0; x < C.size(); ++x)
    for (std::size_t y = 0; y < C.size(); ++y) out[x][y] = values[C.hom(x, y)];
  return out;
}

}  // namespace nabla

#endif  // NABLA_QCAT_HPP_
