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
#ifndef NABLA_RATIONAL_HPP_
#define NABLA_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "nabla/error.hpp"

namespace nabla {

/// Exact rational number, always kept in canonical (reduced) form.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational r{mpz_class(std::to_string(num)), mpz_class(std::to_string(den))};
  r.canonicalize();
  return r;
}

/// Reduced form, `p/q` or plain `p` when q = 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Accepts `p` or `p/q` with decimal digits and an optional leading '-'.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? digits(body)
                      : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) throw InputError("malformed rational '" + std::string(text) + "'");
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) throw InputError("malformed rational '" + std::string(text) + "'");
  if (r.get_den() == 0) throw InputError("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

/// A value of [0, +inf]: a nonnegative rational or infinity.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(const Rational& v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (sgn(value_) < 0) throw InputError("negative value " + to_string(v) + " outside [0, inf]");
  }
  ExtRational(std::int64_t v) : ExtRational(make_rational(v)) {}  // NOLINT(google-explicit-constructor)

  static ExtRational infinity() {
    ExtRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  bool is_zero() const noexcept { return !infinite_ && sgn(value_) == 0; }

  /// Finite value; calling this on infinity is a contract violation.
  const Rational& value() const {
    if (infinite_) throw ContractError("value() of infinity");
    return value_;
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtRational(Rational(a.value_ + b.value_));
  }

  /// Scaling by a nonnegative rational with 0 * inf = 0.
  friend ExtRational operator*(const ExtRational& a, const Rational& c) {
    if (sgn(c) < 0) throw InputError("negative scale factor");
    if (sgn(c) == 0) return ExtRational();
    if (a.infinite_) return infinity();
    return ExtRational(Rational(a.value_ * c));
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline std::string to_string(const ExtRational& e) {
  return e.is_infinite() ? std::string("inf") : to_string(e.value());
}

inline std::ostream& operator<<(std::ostream& os, const ExtRational& e) { return os << to_string(e); }

/// Accepts `inf` or a nonnegative rational literal.
inline ExtRational parse_ext_rational(std::string_view text) {
  if (text == "inf") return ExtRational::infinity();
  Rational r = parse_rational(text);
  if (sgn(r) < 0) throw InputError("negative value '" + std::string(text) + "'");
  return ExtRational(r);
}

inline const ExtRational& min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }
inline const ExtRational& max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

}  // namespace nabla

#endif  // NABLA_RATIONAL_HPP_
