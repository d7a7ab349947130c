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
// Command-line front end: parses flags and delegates to nabla::cli::run.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nabla/cli.hpp"

namespace {

nabla::Rational rational_flag(const std::string& text) { return nabla::parse_rational(text); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for modular spaces, step-function quantales and enriched categories"};
  app.require_subcommand(1);

  nabla::cli::Command cmd;
  bool close = false;
  std::string t_text, eps_text;

  auto file_verb = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", cmd.inputs, "input file")->required()->expected(1);
    sub->add_flag("--close", close, "complete missing step pairs by triangle closure");
    return sub;
  };
  file_verb("check", "report modular-space or category axioms");
  file_verb("topology", "list all open sets");
  auto* ent = file_verb("entourage", "list the pairs of one entourage");
  ent->add_option("--t", t_text, "parameter t (p/q)")->required();
  ent->add_option("--eps", eps_text, "parameter eps (p/q)")->required();
  file_verb("dw", "print the derived extended quasi-pseudometric");
  file_verb("regularize", "print the left-regularized space");
  auto* conv = file_verb("convert", "transpose between space and category files");
  conv->add_option("--to", cmd.to, "qcat or space")->required()->check(CLI::IsMember({"qcat", "space"}));

  auto* verify = app.add_subcommand("verify", "run the base, diagram and topology verifiers");
  verify->add_option("file", cmd.inputs, "input space file")->expected(0, 1);
  verify->add_flag("--close", close, "complete missing step pairs by triangle closure");
  std::size_t random = 0;
  auto* random_opt = verify->add_option("--random", random, "verify N random spaces instead of a file");
  verify->add_option("--seed", cmd.seed, "generator seed")->needs(random_opt);

  auto* lattice = app.add_subcommand("lattice", "well-below, Raney, VDL and quantale-law reports");
  lattice->add_option("file", cmd.inputs, "lattice file")->expected(0, 1);
  std::string example;
  auto* example_opt = lattice->add_option("--example", example, "two, chain(n), powerset(n) or diamond");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nabla::cli::kParseError;
  }

  cmd.verb = app.get_subcommands().front()->get_name();
  cmd.close = close;
  if (random_opt->count()) cmd.random = random;
  if (example_opt->count()) cmd.example = example;
  try {
    if (!t_text.empty()) cmd.t = rational_flag(t_text);
    if (!eps_text.empty()) cmd.eps = rational_flag(eps_text);
    if (const char* bound = std::getenv("NABLA_MAX_POINTS")) cmd.max_points = nabla::cli::parse_max_points(bound);
  } catch (const nabla::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nabla::cli::kParseError;
  } catch (const nabla::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nabla::cli::kResourceError;
  }

  const auto result = nabla::cli::run(cmd);
  std::cout << result.out;
  std::cerr << result.err;
  return result.status;
}
