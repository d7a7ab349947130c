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
#ifndef NABLA_STEP_FUNCTION_HPP_
#define NABLA_STEP_FUNCTION_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/rational.hpp"

namespace nabla {

/// A jump point of a step function: its position, the value taken exactly
/// there, and the value on the open interval up to the next cut.
struct Cut {
  Rational t;
  ExtRational at;
  ExtRational after;

  friend bool operator==(const Cut& a, const Cut& b) {
    return a.t == b.t && a.at == b.at && a.after == b.after;
  }
};

/**
 * A non-increasing map (0, inf) -> [0, inf] with finitely many rational cut
 * points. Together with the opposite pointwise order these form the value
 * quantale used throughout the library: the constant 0 is its top and unit,
 * the constant infinity its bottom.
 *
 * Values are kept canonical (no cut where the value does not change), so
 * structural equality is pointwise equality.
 */
class StepFunction {
 public:
  /// The constant 0 function.
  StepFunction() = default;

  static StepFunction constant(ExtRational v) {
    StepFunction f;
    f.head_ = std::move(v);
    return f;
  }
  static StepFunction zero() { return StepFunction(); }
  static StepFunction infinity() { return constant(ExtRational::infinity()); }

  /// Validates ordering and monotonicity, then drops redundant cuts.
  static StepFunction make(ExtRational head, std::vector<Cut> cuts) {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (sgn(cuts[i].t) <= 0) throw InputError("cut position must be positive");
      if (i > 0 && !(cuts[i - 1].t < cuts[i].t)) throw InputError("cut positions must be strictly increasing");
      const ExtRational& before = i == 0 ? head : cuts[i - 1].after;
      if (before < cuts[i].at || cuts[i].at < cuts[i].after)
        throw InputError("step function must be non-increasing (at cut " + to_string(cuts[i].t) + ")");
    }
    StepFunction f;
    f.head_ = std::move(head);
    for (auto& c : cuts) {
      const ExtRational& before = f.cuts_.empty() ? f.head_ : f.cuts_.back().after;
      if (before == c.at && c.at == c.after) continue;
      f.cuts_.push_back(std::move(c));
    }
    return f;
  }

  const ExtRational& head() const noexcept { return head_; }
  std::span<const Cut> cuts() const noexcept { return cuts_; }
  const ExtRational& tail() const noexcept { return cuts_.empty() ? head_ : cuts_.back().after; }
  bool is_constant() const noexcept { return cuts_.empty(); }

  /// Value on the open interval immediately left of cut i.
  const ExtRational& before(std::size_t i) const { return i == 0 ? head_ : cuts_[i - 1].after; }

  ExtRational operator()(const Rational& t) const {
    if (sgn(t) <= 0) throw InputError("step functions are defined on (0, inf); got t = " + to_string(t));
    auto it = std::lower_bound(cuts_.begin(), cuts_.end(), t,
                               [](const Cut& c, const Rational& x) { return c.t < x; });
    if (it != cuts_.end() && it->t == t) return it->at;
    if (it == cuts_.begin()) return head_;
    return std::prev(it)->after;
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.head_ == b.head_ && a.cuts_ == b.cuts_;
  }

 private:
  ExtRational head_;
  std::vector<Cut> cuts_;
};

inline ExtRational eval(const StepFunction& f, const Rational& t) { return f(t); }

// --- grids ---------------------------------------------------------------

/// Sorted union of the cut positions of all given functions.
inline std::vector<Rational> merged_cuts(std::span<const StepFunction> fs) {
  std::vector<Rational> out;
  for (const auto& f : fs)
    for (const auto& c : f.cuts()) out.push_back(c.t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Rational> merged_cuts(const StepFunction& f, const StepFunction& g) {
  std::vector<Rational> out;
  out.reserve(f.cuts().size() + g.cuts().size());
  for (const auto& c : f.cuts()) out.push_back(c.t);
  for (const auto& c : g.cuts()) out.push_back(c.t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// One representative per constancy regime of a cut set: every cut, one point
/// strictly inside each open interval, and one point past the last cut.
inline std::vector<Rational> regime_samples(const std::vector<Rational>& cuts) {
  if (cuts.empty()) return {Rational(1)};
  std::vector<Rational> out;
  out.reserve(2 * cuts.size() + 1);
  out.push_back(cuts.front() / 2);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    out.push_back(cuts[i]);
    out.push_back(i + 1 < cuts.size() ? midpoint(cuts[i], cuts[i + 1]) : Rational(cuts[i] + 1));
  }
  return out;
}

/// Builds the step function that agrees with `value` on a function known to
/// be constant on every regime of `cuts`.
template <class ValueAt>
StepFunction tabulate(const std::vector<Rational>& cuts, ValueAt&& value) {
  const auto samples = regime_samples(cuts);
  if (cuts.empty()) return StepFunction::constant(value(samples.front()));
  std::vector<Cut> out;
  out.reserve(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i)
    out.push_back(Cut{cuts[i], value(samples[2 * i + 1]), value(samples[2 * i + 2])});
  return StepFunction::make(value(samples.front()), std::move(out));
}

// --- order and lattice operations ------------------------------------------

/// f <=op g, i.e. g(t) <= f(t) for every t > 0.
inline bool le_op(const StepFunction& f, const StepFunction& g) {
  for (const auto& t : regime_samples(merged_cuts(f, g)))
    if (f(t) < g(t)) return false;
  return true;
}

/// Join in the opposite order: pointwise minimum.
inline StepFunction join_op(std::span<const StepFunction> fs) {
  if (fs.empty()) throw InputError("join_op of an empty family; use StepFunction::infinity() for the bottom");
  return tabulate(merged_cuts(fs), [&](const Rational& t) {
    ExtRational v = fs.front()(t);
    for (const auto& f : fs.subspan(1)) v = min(v, f(t));
    return v;
  });
}

/// Meet in the opposite order: pointwise maximum.
inline StepFunction meet_op(std::span<const StepFunction> fs) {
  if (fs.empty()) throw InputError("meet_op of an empty family; use StepFunction::zero() for the top");
  return tabulate(merged_cuts(fs), [&](const Rational& t) {
    ExtRational v = fs.front()(t);
    for (const auto& f : fs.subspan(1)) v = max(v, f(t));
    return v;
  });
}

inline StepFunction join_op(const StepFunction& f, const StepFunction& g) {
  return tabulate(merged_cuts(f, g), [&](const Rational& t) { return min(f(t), g(t)); });
}

inline StepFunction meet_op(const StepFunction& f, const StepFunction& g) {
  return tabulate(merged_cuts(f, g), [&](const Rational& t) { return max(f(t), g(t)); });
}

// --- infimal convolution ---------------------------------------------------

namespace detail {

// inf over r in (0, t) of f(r) + g(t - r). As a function of r the summand is
// constant between consecutive points of {cuts of f} u {t - cuts of g}, so a
// finite scan over those points and one interior point per gap is exact.
inline ExtRational convolution_at(const StepFunction& f, const StepFunction& g, const Rational& t) {
  std::vector<Rational> pts;
  for (const auto& c : f.cuts())
    if (c.t < t) pts.push_back(c.t);
  for (const auto& c : g.cuts())
    if (c.t < t) pts.emplace_back(t - c.t);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  ExtRational best = ExtRational::infinity();
  auto probe = [&](const Rational& r) { best = min(best, f(r) + g(Rational(t - r))); };
  Rational lo = 0;
  for (const auto& p : pts) {
    probe(midpoint(lo, p));
    probe(p);
    lo = p;
  }
  probe(midpoint(lo, t));
  return best;
}

}  // namespace detail

/**
 * Infimal convolution (f + g)(t) = inf over r + s = t of f(r) + g(s); the
 * quantale operation. The result only changes value at sums a + b where a, b
 * range over {0} u cuts, so it is tabulated on those candidates.
 */
inline StepFunction oplus(const StepFunction& f, const StepFunction& g) {
  std::vector<Rational> fpos{Rational(0)}, gpos{Rational(0)};
  for (const auto& c : f.cuts()) fpos.push_back(c.t);
  for (const auto& c : g.cuts()) gpos.push_back(c.t);
  std::vector<Rational> candidates;
  candidates.reserve(fpos.size() * gpos.size());
  for (const auto& a : fpos)
    for (const auto& b : gpos) {
      Rational s = a + b;
      if (sgn(s) > 0) candidates.push_back(std::move(s));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  return tabulate(candidates, [&](const Rational& t) { return detail::convolution_at(f, g, t); });
}

// --- constructors and transforms ------------------------------------------

/// infinity on (0, t), eps from t on.
inline StepFunction f_step(const Rational& t, const ExtRational& eps) {
  if (sgn(t) <= 0) throw InputError("f_step needs t > 0");
  if (eps.is_zero()) throw InputError("f_step needs eps > 0");
  return StepFunction::make(ExtRational::infinity(), {Cut{t, eps, eps}});
}

/// Pointwise product c * f with 0 * inf = 0.
inline StepFunction scale(const StepFunction& f, const Rational& c) {
  if (sgn(c) == 0) return StepFunction::zero();
  std::vector<Cut> cuts;
  for (const auto& cut : f.cuts()) cuts.push_back(Cut{cut.t, cut.at * c, cut.after * c});
  return StepFunction::make(f.head() * c, std::move(cuts));
}

/// t -> f(k * t) for k > 0.
inline StepFunction dilate(const StepFunction& f, const Rational& k) {
  if (sgn(k) <= 0) throw InputError("dilation factor must be positive");
  std::vector<Cut> cuts;
  for (const auto& cut : f.cuts()) cuts.push_back(Cut{Rational(cut.t / k), cut.at, cut.after});
  return StepFunction::make(f.head(), std::move(cuts));
}

/// t -> inf over 0 < s < t of f(s); replaces each cut value by the value just
/// left of it.
inline StepFunction left_regularize(const StepFunction& f) {
  std::vector<Cut> cuts;
  for (std::size_t i = 0; i < f.cuts().size(); ++i)
    cuts.push_back(Cut{f.cuts()[i].t, f.before(i), f.cuts()[i].after});
  return StepFunction::make(f.head(), std::move(cuts));
}

inline bool is_left_continuous(const StepFunction& f) {
  for (std::size_t i = 0; i < f.cuts().size(); ++i)
    if (f.cuts()[i].at != f.before(i)) return false;
  return true;
}

// --- well-below tests -------------------------------------------------------

/// f well below the top 0: infinite on an initial interval and bounded away
/// from 0.
inline bool well_below_top(const StepFunction& f) {
  return f.head().is_infinite() && !f.tail().is_zero();
}

/// f_step(t, eps) well below g. For finite eps this is g(t) < eps; f_step(t, inf)
/// is the bottom, which is well below everything except the bottom.
inline bool well_below_fstep(const Rational& t, const ExtRational& eps, const StepFunction& g) {
  if (sgn(t) <= 0) throw InputError("radius parameter t must be positive");
  if (eps.is_zero()) throw InputError("radius parameter eps must be positive");
  if (eps.is_infinite()) return !(g == StepFunction::infinity());
  return g(t) < eps;
}

// --- text form -------------------------------------------------------------

/// `step head=<v> [cut=<t> at=<v> after=<v>]*`
inline std::string to_literal(const StepFunction& f) {
  std::string out = "step head=" + to_string(f.head());
  for (const auto& c : f.cuts())
    out += " cut=" + to_string(c.t) + " at=" + to_string(c.at) + " after=" + to_string(c.after);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const StepFunction& f) { return os << to_literal(f); }

/// Parses a literal. Errors carry `line` and a column relative to
/// `column_offset` so callers embedding literals can report file positions.
inline StepFunction parse_step_literal(std::string_view text, std::size_t line = 0, std::size_t column_offset = 0) {
  struct Token {
    std::string_view text;
    std::size_t column;
  };
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    tokens.push_back({text.substr(i, j - i), column_offset + i + 1});
    i = j;
  }
  auto fail = [&](const std::string& msg, std::size_t column) -> ParseError { return ParseError(msg, line, column); };
  if (tokens.empty() || tokens[0].text != "step")
    throw fail("step literal must start with 'step'", tokens.empty() ? column_offset + 1 : tokens[0].column);
  auto field = [&](std::size_t idx, std::string_view key) -> std::string_view {
    if (idx >= tokens.size()) throw fail("expected '" + std::string(key) + "=' field", column_offset + text.size() + 1);
    const auto& tok = tokens[idx];
    if (tok.text.substr(0, key.size() + 1) != std::string(key) + "=")
      throw fail("expected '" + std::string(key) + "=' but found '" + std::string(tok.text) + "'", tok.column);
    return tok.text.substr(key.size() + 1);
  };
  auto value = [&](std::size_t idx, std::string_view key) {
    const auto raw = field(idx, key);
    try {
      return parse_ext_rational(raw);
    } catch (const InputError& e) {
      throw fail(e.what(), tokens[idx].column + key.size() + 1);
    }
  };
  ExtRational head = value(1, "head");
  if ((tokens.size() - 2) % 3 != 0) throw fail("incomplete cut group", tokens.back().column);
  std::vector<Cut> cuts;
  for (std::size_t i = 2; i < tokens.size(); i += 3) {
    const auto raw = field(i, "cut");
    Rational t;
    try {
      t = parse_rational(raw);
    } catch (const InputError& e) {
      throw fail(e.what(), tokens[i].column + 4);
    }
    if (sgn(t) <= 0) throw fail("cut position must be positive", tokens[i].column + 4);
    cuts.push_back(Cut{t, value(i + 1, "at"), value(i + 2, "after")});
  }
  try {
    return StepFunction::make(std::move(head), std::move(cuts));
  } catch (const InputError& e) {
    throw fail(e.what(), tokens[0].column);
  }
}

}  // namespace nabla

#endif  // NABLA_STEP_FUNCTION_HPP_
