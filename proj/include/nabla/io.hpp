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
#ifndef NABLA_IO_HPP_
#define NABLA_IO_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/modular.hpp"
#include "nabla/qcat.hpp"
#include "nabla/quantale_lab.hpp"
#include "nabla/rational.hpp"
#include "nabla/step_function.hpp"

namespace nabla {

namespace detail {

struct Word {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct SourceLine {
  std::size_t number;
  std::string_view text;  // comment stripped
  std::vector<Word> words;

  /// Text from word k to the end of the line, with its 1-based column.
  std::pair<std::string_view, std::size_t> rest(std::size_t k) const {
    const std::size_t start = words[k].column - 1;
    return {text.substr(start), words[k].column};
  }
};

inline std::vector<SourceLine> split_lines(std::string_view text) {
  std::vector<SourceLine> out;
  std::size_t number = 0;
  for (std::size_t pos = 0; pos <= text.size();) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    SourceLine line{++number, text.substr(pos, end - pos), {}};
    if (auto hash = line.text.find('#'); hash != std::string_view::npos) line.text = line.text.substr(0, hash);
    for (std::size_t i = 0; i < line.text.size();) {
      const char c = line.text[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.text.size() && line.text[j] != ' ' && line.text[j] != '\t' && line.text[j] != '\r') ++j;
      line.words.push_back({line.text.substr(i, j - i), i + 1});
      i = j;
    }
    if (!line.words.empty()) out.push_back(line);
    pos = end + 1;
  }
  return out;
}

inline void expect_arity(const SourceLine& line, std::size_t arity) {
  if (line.words.size() != arity + 1)
    throw ParseError("'" + std::string(line.words[0].text) + "' takes " + std::to_string(arity) + " argument(s)",
                     line.number, line.words[0].column);
}

inline void expect_min_arity(const SourceLine& line, std::size_t arity) {
  if (line.words.size() < arity + 1)
    throw ParseError("'" + std::string(line.words[0].text) + "' needs at least " + std::to_string(arity) +
                         " argument(s)",
                     line.number, line.words[0].column);
}

/// Header line, point declarations, and the remaining pair lines of a space or category file.
struct PairFile {
  SourceLine header;
  std::vector<std::string> points;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<SourceLine> pairs;

  std::size_t lookup(const SourceLine& line, std::size_t k) const {
    auto it = index.find(std::string(line.words[k].text));
    if (it == index.end())
      throw ParseError("unknown point '" + std::string(line.words[k].text) + "'", line.number, line.words[k].column);
    return it->second;
  }
};

inline PairFile read_pair_file(std::string_view text, std::string_view keyword, std::string_view pair_keyword) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty input; expected a '" + std::string(keyword) + "' header", 1, 1);
  PairFile file{lines.front(), {}, {}, {}};
  if (file.header.words[0].text != keyword)
    throw ParseError("expected '" + std::string(keyword) + "' header", file.header.number, file.header.words[0].column);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto kw = line.words[0].text;
    if (kw == "point") {
      expect_arity(line, 1);
      const std::string id(line.words[1].text);
      if (!file.index.emplace(id, file.points.size()).second)
        throw ParseError("duplicate point '" + id + "'", line.number, line.words[1].column);
      file.points.push_back(id);
    } else if (kw == pair_keyword) {
      file.pairs.push_back(line);
    } else {
      throw ParseError("unknown declaration '" + std::string(kw) + "'", line.number, line.words[0].column);
    }
  }
  if (file.points.empty()) throw ParseError("no points declared", lines.back().number, 1);
  return file;
}

/// Fills a pairwise table from pair lines; duplicates are errors.
template <class T, class Parse>
std::vector<std::vector<std::optional<T>>> read_pairs(const PairFile& file, std::size_t min_arity, Parse parse) {
  const std::size_t n = file.points.size();
  std::vector<std::vector<std::optional<T>>> table(n, std::vector<std::optional<T>>(n));
  for (const auto& line : file.pairs) {
    expect_min_arity(line, min_arity);
    const std::size_t a = file.lookup(line, 1), b = file.lookup(line, 2);
    if (table[a][b])
      throw ParseError("duplicate entry for (" + file.points[a] + "," + file.points[b] + ")", line.number,
                       line.words[0].column);
    table[a][b] = parse(line);
  }
  return table;
}

template <class T>
std::vector<std::vector<T>> require_total(const PairFile& file, std::vector<std::vector<std::optional<T>>> table,
                                          const T& diagonal) {
  const std::size_t n = file.points.size();
  std::vector<std::vector<T>> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    out[a].reserve(n);
    for (std::size_t b = 0; b < n; ++b) {
      if (!table[a][b]) {
        if (a != b)
          throw ParseError("missing entry for (" + file.points[a] + "," + file.points[b] + ")", file.header.number,
                           file.header.words[0].column);
        table[a][b] = diagonal;
      }
      out[a].push_back(std::move(*table[a][b]));
    }
  }
  return out;
}

inline std::vector<std::size_t> name_order(const std::vector<std::string>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  return order;
}

template <class Space, class Entry>
std::string format_pairs(std::string header, const Space& S, std::string_view keyword, Entry entry) {
  std::string out = std::move(header) + "\n";
  const auto order = name_order(S.points());
  for (std::size_t i : order) out += "point " + S.name(i) + "\n";
  for (std::size_t i : order)
    for (std::size_t j : order)
      out += std::string(keyword) + " " + S.name(i) + " " + S.name(j) + " " + entry(i, j) + "\n";
  return out;
}

}  // namespace detail

// --- space files ------------------------------------------------------------

using Space = std::variant<StepModularSpace, ScaledModularSpace>;

/**
 * `space step` with `w <id> <id> <step-literal>` lines, or `space scaled`
 * with `d <id> <id> <p/q>` lines; `point <id>` declares points and `#`
 * starts a comment. Omitted diagonal entries are 0. With `close`, missing
 * step pairs start at infinity and the table is replaced by its triangle
 * closure; otherwise every off-diagonal pair must be given.
 */
inline Space parse_space(std::string_view text, bool close = false) {
  auto header_lines = detail::split_lines(text);
  if (header_lines.empty()) throw ParseError("empty input; expected a 'space' header", 1, 1);
  const auto& header = header_lines.front();
  if (header.words[0].text != "space") throw ParseError("expected 'space' header", header.number, header.words[0].column);
  detail::expect_arity(header, 1);
  const auto kind = header.words[1].text;
  if (kind == "step") {
    auto file = detail::read_pair_file(text, "space", "w");
    auto table = detail::read_pairs<StepFunction>(file, 3, [](const detail::SourceLine& line) {
      const auto [literal, column] = line.rest(3);
      return parse_step_literal(literal, line.number, column - 1);
    });
    try {
      if (close) return triangle_closure(file.points, table);
      return StepModularSpace(file.points, detail::require_total(file, std::move(table), StepFunction::zero()));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), header.number, header.words[0].column);
    }
  }
  if (kind == "scaled") {
    if (close) throw InputError("closure applies only to step spaces");
    auto file = detail::read_pair_file(text, "space", "d");
    auto table = detail::read_pairs<Rational>(file, 3, [](const detail::SourceLine& line) {
      detail::expect_arity(line, 3);
      try {
        Rational v = parse_rational(line.words[3].text);
        if (sgn(v) < 0) throw InputError("distance must be nonnegative");
        return v;
      } catch (const InputError& e) {
        throw ParseError(e.what(), line.number, line.words[3].column);
      }
    });
    auto matrix = detail::require_total(file, std::move(table), Rational(0));
    try {
      return ScaledModularSpace(file.points, std::move(matrix));
    } catch (const InputError& e) {
      throw ParseError(e.what(), header.number, header.words[0].column);
    }
  }
  throw ParseError("space kind must be 'step' or 'scaled'", header.number, header.words[1].column);
}

/// Canonical space file: points and pairs in identifier order, every pair explicit.
inline std::string format_space(const StepModularSpace& S) {
  return detail::format_pairs("space step", S, "w", [&](std::size_t i, std::size_t j) { return to_literal(S.w(i, j)); });
}

inline std::string format_space(const ScaledModularSpace& S) {
  return detail::format_pairs("space scaled", S, "d", [&](std::size_t i, std::size_t j) { return to_string(S.d(i, j)); });
}

inline std::string format_space(const Space& S) {
  return std::visit([](const auto& s) { return format_space(s); }, S);
}

// --- category files ---------------------------------------------------------

struct FiniteCategoryDocument {
  std::string quantale_path;
  FiniteQCategory category;
};

using Category = std::variant<NablaCategory, FiniteCategoryDocument>;

/// Reads the lattice file named in a `qcat finite` header.
using QuantaleLoader = std::function<std::string(const std::string& path)>;

/**
 * `qcat nabla` with `hom <id> <id> <step-literal>` lines, or
 * `qcat finite <quantale-file>` with `hom <id> <id> <element-id>` lines.
 * The quantale file uses the lattice format and must declare an `op` table.
 */
inline Category parse_category(std::string_view text, const QuantaleLoader& load = {}) {
  auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("empty input; expected a 'qcat' header", 1, 1);
  const auto header = lines.front();
  if (header.words[0].text != "qcat") throw ParseError("expected 'qcat' header", header.number, header.words[0].column);
  detail::expect_min_arity(header, 1);
  const auto kind = header.words[1].text;
  if (kind != "nabla" && kind != "finite")
    throw ParseError("category kind must be 'nabla' or 'finite'", header.number, header.words[1].column);
  auto file = detail::read_pair_file(text, "qcat", "hom");
  auto wrap = [&](auto&& build) -> Category {
    try {
      return build();
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), header.number, header.words[0].column);
    }
  };
  if (kind == "nabla") {
    detail::expect_arity(header, 1);
    auto table = detail::read_pairs<StepFunction>(file, 3, [](const detail::SourceLine& line) {
      const auto [literal, column] = line.rest(3);
      return parse_step_literal(literal, line.number, column - 1);
    });
    return wrap([&] { return NablaCategory(file.points, detail::require_total(file, std::move(table), StepFunction::zero())); });
  }
  detail::expect_arity(header, 2);
  if (!load) throw InputError("no loader for the quantale file");
  const std::string path(header.words[2].text);
  LatticeDocument doc = [&] {
    try {
      return parse_lattice(load(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what(),
                       header.number, header.words[2].column);
    }
  }();
  if (!doc.has_op()) throw ParseError("quantale file declares no 'op' table", header.number, header.words[2].column);
  FiniteQuantale Q = [&] {
    try {
      return doc.quantale();
    } catch (const InputError& e) {
      throw ParseError(path + ": " + e.what(), header.number, header.words[2].column);
    }
  }();
  const auto& L = Q.lattice();
  auto table = detail::read_pairs<std::size_t>(file, 3, [&](const detail::SourceLine& line) {
    detail::expect_arity(line, 3);
    try {
      return L.index_of(line.words[3].text);
    } catch (const InputError& e) {
      throw ParseError(e.what(), line.number, line.words[3].column);
    }
  });
  return wrap([&] {
    auto hom = detail::require_total(file, std::move(table), L.top());
    return FiniteCategoryDocument{path, FiniteQCategory(std::move(Q), file.points, std::move(hom))};
  });
}

inline std::string format_category(const NablaCategory& C) {
  return detail::format_pairs("qcat nabla", C, "hom", [&](std::size_t i, std::size_t j) { return to_literal(C.hom(i, j)); });
}

inline std::string format_category(const FiniteCategoryDocument& doc) {
  const auto& C = doc.category;
  const auto& L = C.quantale().lattice();
  return detail::format_pairs("qcat finite " + doc.quantale_path, C, "hom",
                              [&](std::size_t i, std::size_t j) { return L.name(C.hom(i, j)); });
}

}  // namespace nabla

#endif  // NABLA_IO_HPP_
