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
#ifndef NABLA_QUANTALE_LAB_HPP_
#define NABLA_QUANTALE_LAB_HPP_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nabla/error.hpp"

namespace nabla {

using Relation = std::vector<std::vector<bool>>;

namespace detail {

inline std::unordered_map<std::string, std::size_t> index_names(const std::vector<std::string>& names) {
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!idx.emplace(names[i], i).second) throw InputError("duplicate element identifier '" + names[i] + "'");
  return idx;
}

inline void check_square(const Relation& r, std::size_t n) {
  if (r.size() != n) throw InputError("relation table has wrong size");
  for (const auto& row : r)
    if (row.size() != n) throw InputError("relation table has wrong size");
}

inline bool reflexive(const Relation& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!r[i][i]) return false;
  return true;
}

inline bool transitive(const Relation& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j])
        for (std::size_t k = 0; k < n; ++k)
          if (r[j][k] && !r[i][k]) return false;
  return true;
}

}  // namespace detail

/// Finite set with a reflexive, transitive relation given extensionally.
class Preorder {
 public:
  Preorder(std::vector<std::string> elements, Relation leq) : elements_(std::move(elements)), leq_(std::move(leq)) {
    index_ = detail::index_names(elements_);
    detail::check_square(leq_, elements_.size());
    if (!detail::reflexive(leq_)) throw InputError("preorder relation is not reflexive");
    if (!detail::transitive(leq_)) throw InputError("preorder relation is not transitive");
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::string& name(std::size_t i) const { return elements_.at(i); }
  std::size_t index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw InputError("unknown element '" + std::string(id) + "'");
    return it->second;
  }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  const Relation& relation() const noexcept { return leq_; }

  friend bool operator==(const Preorder& a, const Preorder& b) {
    return a.elements_ == b.elements_ && a.leq_ == b.leq_;
  }

 private:
  std::vector<std::string> elements_;
  Relation leq_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Finite partial order with opaque string identifiers.
class FinitePoset {
 public:
  FinitePoset(std::vector<std::string> elements, Relation leq) : elements_(std::move(elements)), leq_(std::move(leq)) {
    if (elements_.empty()) throw InputError("a poset needs at least one element");
    index_ = detail::index_names(elements_);
    detail::check_square(leq_, elements_.size());
    if (!detail::reflexive(leq_)) throw InputError("order relation is not reflexive");
    if (!detail::transitive(leq_)) throw InputError("order relation is not transitive");
    for (std::size_t i = 0; i < leq_.size(); ++i)
      for (std::size_t j = i + 1; j < leq_.size(); ++j)
        if (leq_[i][j] && leq_[j][i])
          throw InputError("order relation is not antisymmetric ('" + elements_[i] + "', '" + elements_[j] + "')");
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::string& name(std::size_t i) const { return elements_.at(i); }
  std::size_t index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw InputError("unknown element '" + std::string(id) + "'");
    return it->second;
  }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  const Relation& relation() const noexcept { return leq_; }

  std::optional<std::size_t> join(std::size_t a, std::size_t b) const { return bound(a, b, true); }
  std::optional<std::size_t> meet(std::size_t a, std::size_t b) const { return bound(a, b, false); }

  std::optional<std::size_t> top() const { return extreme(true); }
  std::optional<std::size_t> bottom() const { return extreme(false); }

  /// Binary joins and meets plus top and bottom; for a finite carrier this is
  /// completeness.
  bool is_lattice() const {
    if (!top() || !bottom()) return false;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = a + 1; b < size(); ++b)
        if (!join(a, b) || !meet(a, b)) return false;
    return true;
  }

 private:
  std::optional<std::size_t> bound(std::size_t a, std::size_t b, bool upper) const {
    auto below = [&](std::size_t x, std::size_t y) { return upper ? leq_[x][y] : leq_[y][x]; };
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < size(); ++c) {
      if (!below(a, c) || !below(b, c)) continue;
      if (!best || below(c, *best)) best = c;
    }
    if (!best) return std::nullopt;
    for (std::size_t c = 0; c < size(); ++c)
      if (below(a, c) && below(b, c) && !below(*best, c)) return std::nullopt;
    return best;
  }

  std::optional<std::size_t> extreme(bool upper) const {
    for (std::size_t c = 0; c < size(); ++c) {
      bool ok = true;
      for (std::size_t x = 0; x < size() && ok; ++x) ok = upper ? leq_[x][c] : leq_[c][x];
      if (ok) return c;
    }
    return std::nullopt;
  }

  std::vector<std::string> elements_;
  Relation leq_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A finite poset known to be a (complete) lattice, with cached join/meet tables.
class FiniteLattice {
 public:
  explicit FiniteLattice(FinitePoset poset) : poset_(std::move(poset)) {
    if (!poset_.is_lattice()) throw InputError("poset is not a lattice");
    const std::size_t n = poset_.size();
    join_.assign(n, std::vector<std::size_t>(n));
    meet_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        join_[a][b] = *poset_.join(a, b);
        meet_[a][b] = *poset_.meet(a, b);
      }
    top_ = *poset_.top();
    bottom_ = *poset_.bottom();
  }

  const FinitePoset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_.size(); }
  const std::string& name(std::size_t i) const { return poset_.name(i); }
  std::size_t index_of(std::string_view id) const { return poset_.index_of(id); }
  bool leq(std::size_t a, std::size_t b) const { return poset_.leq(a, b); }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t top() const noexcept { return top_; }
  std::size_t bottom() const noexcept { return bottom_; }

  template <class Range>
  std::size_t join_all(const Range& xs) const {
    std::size_t acc = bottom_;
    for (std::size_t x : xs) acc = join_[acc][x];
    return acc;
  }

 private:
  FinitePoset poset_;
  std::vector<std::vector<std::size_t>> join_, meet_;
  std::size_t top_ = 0, bottom_ = 0;
};

/**
 * a is well below b: every subset whose join dominates b has a member above a.
 *
 * The largest subset with no member above a is {s : a !<= s}; a is well below
 * b exactly when even that subset fails to reach b.
 */
inline bool well_below(const FiniteLattice& L, std::size_t a, std::size_t b) {
  if (a >= L.size() || b >= L.size()) throw InputError("element index out of range");
  std::size_t acc = L.bottom();
  for (std::size_t s = 0; s < L.size(); ++s)
    if (!L.leq(a, s)) acc = L.join(acc, s);
  return !L.leq(b, acc);
}

inline bool well_below(const FiniteLattice& L, std::string_view a, std::string_view b) {
  return well_below(L, L.index_of(a), L.index_of(b));
}

/// b equals the join of its well-below set for every b; on a finite lattice
/// this decides complete distributivity.
inline bool raney_check(const FiniteLattice& L) {
  for (std::size_t b = 0; b < L.size(); ++b) {
    std::size_t acc = L.bottom();
    for (std::size_t a = 0; a < L.size(); ++a)
      if (well_below(L, a, b)) acc = L.join(acc, a);
    if (acc != b) return false;
  }
  return true;
}

inline bool raney_check(const FinitePoset& P) { return raney_check(FiniteLattice(P)); }

struct VdlReport {
  bool raney = false;
  bool vdl1 = false;         // bottom well below top
  bool nontrivial = false;   // carrier has at least two elements
  bool vdl2 = false;         // {a : a well below top} closed under binary join
  bool value_distributive() const { return raney && vdl1 && vdl2; }
};

inline VdlReport vdl_check(const FiniteLattice& L) {
  VdlReport r;
  r.raney = raney_check(L);
  r.vdl1 = well_below(L, L.bottom(), L.top());
  r.nontrivial = L.size() >= 2;
  std::vector<std::size_t> below_top;
  for (std::size_t a = 0; a < L.size(); ++a)
    if (well_below(L, a, L.top())) below_top.push_back(a);
  r.vdl2 = true;
  for (std::size_t a : below_top)
    for (std::size_t b : below_top)
      if (!well_below(L, L.join(a, b), L.top())) r.vdl2 = false;
  return r;
}

inline VdlReport vdl_check(const FinitePoset& P) { return vdl_check(FiniteLattice(P)); }

/// Finite lattice with a total binary operation table.
class FiniteQuantale {
 public:
  FiniteQuantale(FiniteLattice lattice, std::vector<std::vector<std::size_t>> op,
                 std::optional<std::size_t> unit = std::nullopt)
      : lattice_(std::move(lattice)), op_(std::move(op)), unit_(unit) {
    const std::size_t n = lattice_.size();
    if (op_.size() != n) throw InputError("operation table is partial");
    for (const auto& row : op_) {
      if (row.size() != n) throw InputError("operation table is partial");
      for (std::size_t v : row)
        if (v >= n) throw InputError("operation table entry out of range");
    }
    if (unit_ && *unit_ >= n) throw InputError("unit out of range");
  }

  const FiniteLattice& lattice() const noexcept { return lattice_; }
  std::size_t size() const noexcept { return lattice_.size(); }
  std::size_t op(std::size_t a, std::size_t b) const { return op_[a][b]; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return op_; }
  std::optional<std::size_t> declared_unit() const noexcept { return unit_; }

 private:
  FiniteLattice lattice_;
  std::vector<std::vector<std::size_t>> op_;
  std::optional<std::size_t> unit_;
};

struct QuantaleReport {
  bool semigroup = false;
  bool left_dist = false;    // a * (join S) = join (a * s)
  bool right_dist = false;   // (join S) * a = join (s * a)
  bool commutative = false;
  bool unital = false;
  bool integral = false;
  bool integral_meet_bound = false;  // u * v <= u meet v, vacuous unless integral
  bool value_quantale = false;
  std::optional<std::size_t> unit;

  bool quantale() const { return semigroup && left_dist && right_dist; }
};

namespace detail {

// Distributivity over arbitrary joins. Exhaustive over all subsets up to this
// carrier size; past it the binary-plus-empty-join form, which is equivalent
// on a finite lattice.
inline constexpr std::size_t kExhaustiveSubsetLimit = 16;

inline bool distributes(const FiniteQuantale& Q, bool left) {
  const auto& L = Q.lattice();
  const std::size_t n = L.size();
  auto mul = [&](std::size_t a, std::size_t s) { return left ? Q.op(a, s) : Q.op(s, a); };
  if (n <= kExhaustiveSubsetLimit) {
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::size_t> join_of(subsets), join_prod(subsets);
    for (std::size_t a = 0; a < n; ++a) {
      join_of[0] = L.bottom();
      join_prod[0] = L.bottom();
      for (std::size_t mask = 1; mask < subsets; ++mask) {
        const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
        const std::size_t rest = mask & (mask - 1);
        join_of[mask] = L.join(join_of[rest], low);
        join_prod[mask] = L.join(join_prod[rest], mul(a, low));
      }
      for (std::size_t mask = 0; mask < subsets; ++mask)
        if (mul(a, join_of[mask]) != join_prod[mask]) return false;
    }
    return true;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (mul(a, L.bottom()) != L.bottom()) return false;
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul(a, L.join(b, c)) != L.join(mul(a, b), mul(a, c))) return false;
  }
  return true;
}

}  // namespace detail

inline QuantaleReport check_quantale_laws(const FiniteQuantale& Q) {
  const auto& L = Q.lattice();
  const std::size_t n = Q.size();
  QuantaleReport r;

  r.semigroup = true;
  for (std::size_t a = 0; a < n && r.semigroup; ++a)
    for (std::size_t b = 0; b < n && r.semigroup; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (Q.op(Q.op(a, b), c) != Q.op(a, Q.op(b, c))) {
          r.semigroup = false;
          break;
        }

  r.commutative = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (Q.op(a, b) != Q.op(b, a)) r.commutative = false;

  r.left_dist = detail::distributes(Q, true);
  r.right_dist = detail::distributes(Q, false);

  auto is_unit = [&](std::size_t e) {
    for (std::size_t a = 0; a < n; ++a)
      if (Q.op(e, a) != a || Q.op(a, e) != a) return false;
    return true;
  };
  if (auto u = Q.declared_unit()) {
    if (is_unit(*u)) r.unit = u;
  } else {
    for (std::size_t e = 0; e < n && !r.unit; ++e)
      if (is_unit(e)) r.unit = e;
  }
  r.unital = r.unit.has_value();
  r.integral = r.unital && *r.unit == L.top();

  r.integral_meet_bound = true;
  if (r.integral)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (!L.leq(Q.op(u, v), L.meet(u, v))) r.integral_meet_bound = false;

  r.value_quantale = r.quantale() && vdl_check(L).value_distributive();
  return r;
}

// --- named examples ---------------------------------------------------------

inline constexpr std::size_t kMaxChain = 64;
inline constexpr std::size_t kMaxPowerset = 5;

namespace detail {

inline std::size_t parse_size_arg(std::string_view name, std::string_view prefix) {
  std::string_view arg = name.substr(prefix.size());
  if (arg.size() < 3 || arg.front() != '(' || arg.back() != ')') throw InputError("malformed example '" + std::string(name) + "'");
  arg = arg.substr(1, arg.size() - 2);
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (ec != std::errc() || p != arg.data() + arg.size()) throw InputError("malformed example '" + std::string(name) + "'");
  return n;
}

inline std::string subset_name(std::uint32_t mask, std::size_t n) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) {
      if (!first) out += ',';
      out += std::to_string(i + 1);
      first = false;
    }
  return out + "}";
}

}  // namespace detail

inline FinitePoset make_chain(std::size_t n) {
  if (n < 1 || n > kMaxChain) throw InputError("chain size must be in [1, " + std::to_string(kMaxChain) + "]");
  std::vector<std::string> names;
  Relation leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
  }
  return FinitePoset(std::move(names), std::move(leq));
}

/// Subsets of {1..n} ordered by inclusion; element i is the subset with bitmask i.
inline FinitePoset make_powerset(std::size_t n) {
  if (n > kMaxPowerset) throw InputError("powerset size must be at most " + std::to_string(kMaxPowerset));
  const std::size_t m = std::size_t{1} << n;
  std::vector<std::string> names;
  Relation leq(m, std::vector<bool>(m));
  for (std::size_t a = 0; a < m; ++a) {
    names.push_back(detail::subset_name(static_cast<std::uint32_t>(a), n));
    for (std::size_t b = 0; b < m; ++b) leq[a][b] = (a & ~b) == 0;
  }
  return FinitePoset(std::move(names), std::move(leq));
}

/// M3: bottom, three pairwise incomparable atoms, top.
inline FinitePoset make_diamond() {
  std::vector<std::string> names{"bot", "a", "b", "c", "top"};
  Relation leq(5, std::vector<bool>(5));
  for (std::size_t i = 0; i < 5; ++i) {
    leq[i][i] = true;
    leq[0][i] = true;
    leq[i][4] = true;
  }
  return FinitePoset(std::move(names), std::move(leq));
}

/// `two`, `chain(n)`, `powerset(n)` or `diamond`.
inline FinitePoset make_example(std::string_view name) {
  if (name == "two") return make_chain(2);
  if (name == "diamond") return make_diamond();
  if (name.starts_with("chain")) return make_chain(detail::parse_size_arg(name, "chain"));
  if (name.starts_with("powerset")) return make_powerset(detail::parse_size_arg(name, "powerset"));
  throw InputError("unknown example '" + std::string(name) + "'");
}

/// The example lattice with meet as its operation and top as unit.
inline FiniteQuantale make_meet_quantale(std::string_view name) {
  FiniteLattice L(make_example(name));
  std::vector<std::vector<std::size_t>> op(L.size(), std::vector<std::size_t>(L.size()));
  for (std::size_t a = 0; a < L.size(); ++a)
    for (std::size_t b = 0; b < L.size(); ++b) op[a][b] = L.meet(a, b);
  const std::size_t top = L.top();
  return FiniteQuantale(std::move(L), std::move(op), top);
}

// --- lattice DSL ------------------------------------------------------------

/// Parsed lattice file: the order, and optionally an operation table and unit.
struct LatticeDocument {
  FinitePoset poset;
  std::vector<std::vector<std::optional<std::size_t>>> op;  // empty when no 'op' lines
  std::optional<std::size_t> unit;

  bool has_op() const { return !op.empty(); }

  /// Requires the carrier to be a lattice and the table, if any, to be total.
  FiniteQuantale quantale() const {
    if (!has_op()) throw InputError("lattice file has no 'op' declarations");
    std::vector<std::vector<std::size_t>> table(op.size(), std::vector<std::size_t>(op.size()));
    for (std::size_t a = 0; a < op.size(); ++a)
      for (std::size_t b = 0; b < op.size(); ++b) {
        if (!op[a][b]) throw InputError("operation table is partial: missing " + poset.name(a) + " * " + poset.name(b));
        table[a][b] = *op[a][b];
      }
    return FiniteQuantale(FiniteLattice(poset), std::move(table), unit);
  }
};

/**
 * One declaration per line: `elem <id>`, `leq <id> <id>`, `op <a> <b> <c>`
 * (a * b = c), `unit <id>`. `#` starts a comment. The reflexive-transitive
 * closure of `leq` is taken; a cycle between distinct elements is an error.
 */
inline LatticeDocument parse_lattice(std::string_view text) {
  struct Pending {
    std::vector<std::string> words;
    std::vector<std::size_t> columns;
    std::size_t line;
  };
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Pending> rest;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Pending p{{}, {}, line_no};
    for (std::size_t i = 0; i < line.size();) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      p.words.emplace_back(line.substr(i, j - i));
      p.columns.push_back(i + 1);
      i = j;
    }
    pos = end + 1;
    if (p.words.empty()) continue;
    const auto& kw = p.words[0];
    const std::size_t arity = kw == "elem" || kw == "unit" ? 1 : kw == "leq" ? 2 : kw == "op" ? 3 : 0;
    if (arity == 0) throw ParseError("unknown declaration '" + kw + "'", line_no, p.columns[0]);
    if (p.words.size() != arity + 1)
      throw ParseError("'" + kw + "' takes " + std::to_string(arity) + " argument(s)", line_no, p.columns[0]);
    if (kw == "elem") {
      if (!index.emplace(p.words[1], names.size()).second)
        throw ParseError("duplicate element '" + p.words[1] + "'", line_no, p.columns[1]);
      names.push_back(p.words[1]);
    } else {
      rest.push_back(std::move(p));
    }
  }
  if (names.empty()) throw ParseError("no elements declared", line_no, 1);

  const std::size_t n = names.size();
  auto lookup = [&](const Pending& p, std::size_t k) {
    auto it = index.find(p.words[k]);
    if (it == index.end()) throw ParseError("unknown element '" + p.words[k] + "'", p.line, p.columns[k]);
    return it->second;
  };

  Relation leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  std::vector<std::vector<std::optional<std::size_t>>> op;
  std::optional<std::size_t> unit;
  for (const auto& p : rest) {
    if (p.words[0] == "leq") {
      const std::size_t a = lookup(p, 1), b = lookup(p, 2);
      if (leq[a][b]) continue;
      if (leq[b][a]) throw ParseError("order cycle between '" + names[a] + "' and '" + names[b] + "'", p.line, p.columns[2]);
      for (std::size_t x = 0; x < n; ++x)
        if (leq[x][a])
          for (std::size_t y = 0; y < n; ++y)
            if (leq[b][y]) leq[x][y] = true;
    } else if (p.words[0] == "op") {
      if (op.empty()) op.assign(n, std::vector<std::optional<std::size_t>>(n));
      const std::size_t a = lookup(p, 1), b = lookup(p, 2), c = lookup(p, 3);
      if (op[a][b] && *op[a][b] != c)
        throw ParseError("conflicting 'op' entry for " + names[a] + " * " + names[b], p.line, p.columns[3]);
      op[a][b] = c;
    } else {
      if (unit) throw ParseError("duplicate 'unit' declaration", p.line, p.columns[0]);
      unit = lookup(p, 1);
    }
  }
  return LatticeDocument{FinitePoset(std::move(names), std::move(leq)), std::move(op), unit};
}

}  // namespace nabla

#endif  // NABLA_QUANTALE_LAB_HPP_
