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
#ifndef NABLA_CLI_HPP_
#define NABLA_CLI_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/generate.hpp"
#include "nabla/io.hpp"
#include "nabla/modular.hpp"
#include "nabla/qcat.hpp"
#include "nabla/quantale_lab.hpp"
#include "nabla/topology.hpp"

namespace nabla::cli {

enum Status : int { kOk = 0, kCheckFailed = 1, kParseError = 2, kResourceError = 3 };

struct Command {
  std::string verb;  // check, topology, entourage, dw, regularize, convert, verify, lattice
  std::vector<std::string> inputs;
  std::optional<Rational> t, eps;     // entourage
  std::string to;                     // convert: qcat or space
  bool close = false;                 // step spaces: close missing pairs
  std::optional<std::size_t> random;  // verify: number of random instances
  std::uint64_t seed = 0;
  std::optional<std::string> example;  // lattice
  std::size_t max_points = kDefaultMaxPoints;
};

struct Result {
  int status = kOk;
  std::string out;
  std::string err;
};

using FileReader = std::function<std::string(const std::string& path)>;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses NABLA_MAX_POINTS-style text; rejects values above the hard limit.
inline std::size_t parse_max_points(std::string_view text) {
  std::size_t value = 0;
  if (text.empty()) throw InputError("empty point bound");
  for (char c : text) {
    if (c < '0' || c > '9') throw InputError("point bound must be a positive integer");
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > kHardMaxPoints) throw ResourceError("point bound above hard limit " + std::to_string(kHardMaxPoints));
  }
  if (value == 0) throw InputError("point bound must be a positive integer");
  return value;
}

namespace detail {

inline const char* flag(bool b) { return b ? "true" : "false"; }
inline const char* verdict(bool b) { return b ? "PASS" : "FAIL"; }

inline bool is_category_text(std::string_view text) {
  const auto lines = nabla::detail::split_lines(text);
  return !lines.empty() && lines.front().words[0].text == "qcat";
}

struct Context {
  const Command& cmd;
  const FileReader& read;
  std::ostringstream out;

  const std::string& input() const {
    if (cmd.inputs.size() != 1) throw InputError("'" + cmd.verb + "' takes exactly one input file");
    return cmd.inputs.front();
  }

  Space space() const { return parse_space(read(input()), cmd.close); }

  StepModularSpace step_space() const {
    auto s = space();
    if (auto* step = std::get_if<StepModularSpace>(&s)) return std::move(*step);
    throw InputError("'" + cmd.verb + "' needs a step space");
  }

  Category category() const {
    const std::filesystem::path base = std::filesystem::path(input()).parent_path();
    return parse_category(read(input()), [&](const std::string& path) {
      const std::filesystem::path p(path);
      return read((p.is_absolute() ? p : base / p).string());
    });
  }
};

inline int report_axioms(std::ostream& out, const AxiomReport& r) {
  out << "m1 " << flag(r.m1) << "\n"
      << "m2 " << flag(r.m2) << "\n"
      << "m3 " << flag(r.m3) << "\n"
      << "m4 " << flag(r.m4) << "\n"
      << "left_continuous " << flag(r.left_continuous) << "\n";
  return r.valid() ? kOk : kCheckFailed;
}

inline int report_qcategory(std::ostream& out, const QCategoryReport& r) {
  out << "qc1 " << flag(r.qc1) << "\n"
      << "qc2 " << flag(r.qc2) << "\n"
      << "separated " << flag(r.separated) << "\n"
      << "symmetric " << flag(r.symmetric) << "\n";
  return r.valid() ? kOk : kCheckFailed;
}

inline void print_topology(std::ostream& out, const FiniteTopology& T) {
  for (const auto& members : T.sorted_sets()) {
    out << "{";
    for (std::size_t i = 0; i < members.size(); ++i) out << (i ? "," : "") << members[i];
    out << "}\n";
  }
}

inline int run_check(Context& c) {
  if (is_category_text(c.read(c.input()))) {
    return std::visit(
        [&](const auto& cat) {
          if constexpr (std::is_same_v<std::decay_t<decltype(cat)>, NablaCategory>)
            return report_qcategory(c.out, check_qcategory(cat));
          else
            return report_qcategory(c.out, check_qcategory(cat.category));
        },
        c.category());
  }
  return std::visit([&](const auto& s) { return report_axioms(c.out, check_axioms(s)); }, c.space());
}

inline int run_topology(Context& c) {
  const std::size_t bound = c.cmd.max_points;
  if (is_category_text(c.read(c.input()))) {
    std::visit(
        [&](const auto& cat) {
          if constexpr (std::is_same_v<std::decay_t<decltype(cat)>, NablaCategory>)
            print_topology(c.out, ball_topology(cat, bound));
          else
            print_topology(c.out, ball_topology(cat.category, bound));
        },
        c.category());
    return kOk;
  }
  std::visit([&](const auto& s) { print_topology(c.out, topology(s, bound)); }, c.space());
  return kOk;
}

inline int run_entourage(Context& c) {
  if (!c.cmd.t || !c.cmd.eps) throw InputError("entourage needs --t and --eps");
  if (sgn(*c.cmd.t) <= 0 || sgn(*c.cmd.eps) <= 0) throw InputError("--t and --eps must be positive");
  std::visit(
      [&](const auto& s) {
        const Entourage e = entourage(s, *c.cmd.t, *c.cmd.eps);
        const auto order = nabla::detail::name_order(s.points());
        for (std::size_t x : order)
          for (std::size_t y : order)
            if (contains(e[x], y)) c.out << "(" << s.name(x) << "," << s.name(y) << ")\n";
      },
      c.space());
  return kOk;
}

inline int run_dw(Context& c) {
  const auto s = c.space();
  if (const auto* step = std::get_if<StepModularSpace>(&s)) {
    const auto order = nabla::detail::name_order(step->points());
    for (std::size_t x : order)
      for (std::size_t y : order) c.out << "dw " << step->name(x) << " " << step->name(y) << " " << d_w(*step, x, y) << "\n";
  } else {
    const auto& scaled = std::get<ScaledModularSpace>(s);
    const auto order = nabla::detail::name_order(scaled.points());
    for (std::size_t x : order)
      for (std::size_t y : order) {
        const Enclosure e = d_w(scaled, x, y);
        c.out << "dw " << scaled.name(x) << " " << scaled.name(y) << " ";
        if (e.lo == e.hi)
          c.out << to_string(e.lo) << "\n";
        else
          c.out << "[" << to_string(e.lo) << "," << to_string(e.hi) << "]\n";
      }
  }
  return kOk;
}

inline int run_regularize(Context& c) {
  c.out << format_space(regularize(c.step_space()));
  return kOk;
}

inline int run_convert(Context& c) {
  if (c.cmd.to == "qcat") {
    c.out << format_category(e_mod(c.step_space()));
  } else if (c.cmd.to == "space") {
    auto cat = c.category();
    const auto* nc = std::get_if<NablaCategory>(&cat);
    if (!nc) throw InputError("only 'qcat nabla' categories convert to spaces");
    c.out << format_space(e_nabla(*nc));
  } else {
    throw InputError("--to must be 'qcat' or 'space'");
  }
  return kOk;
}

struct VerifyTally {
  bool base = true, diagram = true, topology = true;
};

inline void verify_instance(const StepModularSpace& S, std::size_t bound, VerifyTally& tally,
                            std::vector<std::string>* details) {
  const auto base = check_quasi_uniformity_base(S);
  if (!base.ok()) {
    tally.base = false;
    if (details)
      for (const auto& v : base.violations) details->push_back("violation " + v.kind + " " + v.detail);
  }
  if (!verify_diagram(S)) tally.diagram = false;
  if (!verify_topology_theorem(S, bound)) tally.topology = false;
}

inline int print_tally(std::ostream& out, const VerifyTally& t, const std::vector<std::string>& details) {
  out << "quasi_uniformity_base " << verdict(t.base) << "\n";
  for (const auto& d : details) out << "  " << d << "\n";
  out << "regularization_diagram " << verdict(t.diagram) << "\n"
      << "ball_topology_equals_entourage_topology " << verdict(t.topology) << "\n";
  return t.base && t.diagram && t.topology ? kOk : kCheckFailed;
}

inline int run_verify(Context& c) {
  const std::size_t bound = c.cmd.max_points;
  if (c.cmd.random) {
    if (!c.cmd.inputs.empty()) throw InputError("verify --random takes no input file");
    Rng rng(c.cmd.seed);
    SpaceGenOptions opts;
    opts.max_points = std::min<std::size_t>(opts.max_points, bound);
    VerifyTally tally;
    std::vector<std::string> details;
    for (std::size_t i = 0; i < *c.cmd.random; ++i) {
      const auto S = random_step_space(rng, opts);
      VerifyTally one;
      verify_instance(S, bound, one, nullptr);
      if (!one.base || !one.diagram || !one.topology) details.push_back("failing instance " + std::to_string(i));
      tally.base &= one.base;
      tally.diagram &= one.diagram;
      tally.topology &= one.topology;
    }
    c.out << "instances " << *c.cmd.random << "\n"
          << "seed " << c.cmd.seed << "\n";
    return print_tally(c.out, tally, details);
  }
  const auto S = c.step_space();
  check_point_bound(S.size(), bound);
  const AxiomReport axioms = check_axioms(S);
  c.out << "axioms " << verdict(axioms.valid()) << "\n";
  if (!axioms.valid()) return kCheckFailed;
  VerifyTally tally;
  std::vector<std::string> details;
  verify_instance(S, bound, tally, &details);
  return print_tally(c.out, tally, details);
}

inline int run_lattice(Context& c) {
  std::optional<LatticeDocument> doc;
  if (c.cmd.example) {
    if (!c.cmd.inputs.empty()) throw InputError("lattice takes a file or --example, not both");
    auto Q = make_meet_quantale(*c.cmd.example);
    std::vector<std::vector<std::optional<std::size_t>>> op(Q.size(), std::vector<std::optional<std::size_t>>(Q.size()));
    for (std::size_t a = 0; a < Q.size(); ++a)
      for (std::size_t b = 0; b < Q.size(); ++b) op[a][b] = Q.op(a, b);
    doc = LatticeDocument{Q.lattice().poset(), std::move(op), Q.lattice().top()};
  } else {
    doc = parse_lattice(c.read(c.input()));
  }
  const FinitePoset& P = doc->poset;
  c.out << "elements " << P.size() << "\n";
  const bool lattice = P.is_lattice();
  c.out << "lattice " << flag(lattice) << "\n";
  if (!lattice) return kCheckFailed;
  const FiniteLattice L(P);
  const VdlReport vdl = vdl_check(L);
  c.out << "raney " << flag(vdl.raney) << "\n"
        << "vdl1 " << flag(vdl.vdl1) << "\n"
        << "vdl2 " << flag(vdl.vdl2) << "\n"
        << "value_distributive " << flag(vdl.value_distributive()) << "\n";
  std::vector<std::pair<std::string, std::string>> below;
  for (std::size_t a = 0; a < L.size(); ++a)
    for (std::size_t b = 0; b < L.size(); ++b)
      if (well_below(L, a, b)) below.emplace_back(L.name(a), L.name(b));
  std::sort(below.begin(), below.end());
  for (const auto& [a, b] : below) c.out << "well_below " << a << " " << b << "\n";
  if (!doc->has_op()) return kOk;
  const QuantaleReport q = check_quantale_laws(doc->quantale());
  c.out << "semigroup " << flag(q.semigroup) << "\n"
        << "left_dist " << flag(q.left_dist) << "\n"
        << "right_dist " << flag(q.right_dist) << "\n"
        << "quantale " << flag(q.quantale()) << "\n"
        << "commutative " << flag(q.commutative) << "\n"
        << "unital " << flag(q.unital);
  if (q.unit) c.out << " " << L.name(*q.unit);
  c.out << "\n"
        << "integral " << flag(q.integral) << "\n"
        << "value_quantale " << flag(q.value_quantale) << "\n";
  return q.quantale() ? kOk : kCheckFailed;
}

}  // namespace detail

/// Runs one verb. Never throws for input, parse, or resource problems; those
/// become status codes with a message in `err`.
inline Result run(const Command& cmd, const FileReader& reader = read_file) {
  detail::Context ctx{cmd, reader, {}};
  Result result;
  try {
    if (cmd.max_points > kHardMaxPoints) throw ResourceError("point bound above hard limit " + std::to_string(kHardMaxPoints));
    const std::string& v = cmd.verb;
    if (v == "check")
      result.status = detail::run_check(ctx);
    else if (v == "topology")
      result.status = detail::run_topology(ctx);
    else if (v == "entourage")
      result.status = detail::run_entourage(ctx);
    else if (v == "dw")
      result.status = detail::run_dw(ctx);
    else if (v == "regularize")
      result.status = detail::run_regularize(ctx);
    else if (v == "convert")
      result.status = detail::run_convert(ctx);
    else if (v == "verify")
      result.status = detail::run_verify(ctx);
    else if (v == "lattice")
      result.status = detail::run_lattice(ctx);
    else
      throw InputError("unknown verb '" + v + "'");
    result.out = ctx.out.str();
  } catch (const ParseError& e) {
    const std::string where = cmd.inputs.empty() ? std::string("<input>") : cmd.inputs.front();
    result = {kParseError, "", where + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": error: " + e.what() + "\n"};
  } catch (const InputError& e) {
    result = {kParseError, "", std::string("error: ") + e.what() + "\n"};
  } catch (const ResourceError& e) {
    result = {kResourceError, "", std::string("error: ") + e.what() + "\n"};
  } catch (const ContractError& e) {
    result = {kCheckFailed, "", std::string("error: ") + e.what() + "\n"};
  }
  return result;
}

}  // namespace nabla::cli

#endif  // NABLA_CLI_HPP_
