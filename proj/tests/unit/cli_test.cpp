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
#include <gtest/gtest.h>

#include <map>

#include "nabla/cli.hpp"

namespace nabla::cli {
namespace {

struct MemoryFiles {
  std::map<std::string, std::string> files;

  FileReader reader() const {
    return [this](const std::string& p) {
      auto it = files.find(p);
      if (it == files.end()) throw InputError("cannot read '" + p + "'");
      return it->second;
    };
  }
};

Command make(std::string verb, std::vector<std::string> inputs = {}) {
  Command c;
  c.verb = std::move(verb);
  c.inputs = std::move(inputs);
  return c;
}

std::string data(const std::string& name) { return std::string(NABLA_DATA_DIR) + "/" + name; }

TEST(Cli, OnePointTopology) {
  const auto r = run(make("topology", {data("one_point.space")}));
  EXPECT_EQ(r.status, kOk) << r.err;
  EXPECT_EQ(r.out, "{}\n{p}\n");
}

TEST(Cli, SierpinskiScaledTopology) {
  const auto r = run(make("topology", {data("sierpinski.space")}));
  EXPECT_EQ(r.status, kOk) << r.err;
  EXPECT_EQ(r.out, "{}\n{x}\n{x,y}\n");
}

TEST(Cli, RegularizeRestoresLeftContinuity) {
  const auto before = run(make("check", {data("two_point_drop.space")}));
  EXPECT_EQ(before.status, kOk);
  EXPECT_NE(before.out.find("left_continuous false\n"), std::string::npos);

  const auto reg = run(make("regularize", {data("two_point_drop.space")}));
  ASSERT_EQ(reg.status, kOk) << reg.err;
  MemoryFiles mem{{{"r.space", reg.out}}};
  const auto after = run(make("check", {"r.space"}), mem.reader());
  EXPECT_NE(after.out.find("left_continuous true\n"), std::string::npos);
  const auto twice = run(make("regularize", {"r.space"}), mem.reader());
  EXPECT_EQ(twice.out, reg.out);
}

TEST(Cli, ParseErrorsReportPosition) {
  MemoryFiles mem{{{"bad.space", "space step\npoint a\nw a q step head=1\n"}}};
  const auto r = run(make("check", {"bad.space"}), mem.reader());
  EXPECT_EQ(r.status, kParseError);
  EXPECT_EQ(r.err.rfind("bad.space:3:5: error: ", 0), 0u) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, MissingFileAndUnknownVerb) {
  MemoryFiles mem;
  EXPECT_EQ(run(make("check", {"absent.space"}), mem.reader()).status, kParseError);
  EXPECT_EQ(run(make("frobnicate", {"absent.space"}), mem.reader()).status, kParseError);
  EXPECT_EQ(run(make("check", {}), mem.reader()).status, kParseError);
}

TEST(Cli, PointBoundIsAResourceError) {
  auto cmd = make("topology", {data("chistyakov4.space")});
  cmd.max_points = 3;
  EXPECT_EQ(run(cmd).status, kResourceError);
  cmd.max_points = kHardMaxPoints + 1;
  EXPECT_EQ(run(cmd).status, kResourceError);
  EXPECT_THROW(parse_max_points("99999"), ResourceError);
  EXPECT_THROW(parse_max_points("0"), InputError);
  EXPECT_EQ(parse_max_points("12"), 12u);
}

TEST(Cli, FailedCheckExitsWithOne) {
  MemoryFiles mem{{{"broken.space", "space step\npoint a\npoint b\npoint c\n"
                                    "w a b step head=0\nw b a step head=0\nw a c step head=inf\n"
                                    "w c a step head=0\nw b c step head=0\nw c b step head=0\n"}}};
  const auto r = run(make("check", {"broken.space"}), mem.reader());
  EXPECT_EQ(r.status, kCheckFailed);
  EXPECT_NE(r.out.find("m2 false\n"), std::string::npos);
}

TEST(Cli, VerifyFileAndRandom) {
  const auto file = run(make("verify", {data("chistyakov4.space")}));
  EXPECT_EQ(file.status, kOk) << file.out << file.err;
  EXPECT_EQ(file.out,
            "axioms PASS\nquasi_uniformity_base PASS\nregularization_diagram PASS\n"
            "ball_topology_equals_entourage_topology PASS\n");
  auto cmd = make("verify");
  cmd.random = 25;
  cmd.seed = 7;
  const auto a = run(cmd), b = run(cmd);
  EXPECT_EQ(a.status, kOk) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("instances 25\nseed 7\n", 0), 0u);
}

TEST(Cli, EntourageAndDw) {
  auto cmd = make("entourage", {data("two_point_drop.space")});
  cmd.t = Rational(1);
  cmd.eps = make_rational(1, 2);
  const auto e = run(cmd);
  EXPECT_EQ(e.status, kOk) << e.err;
  EXPECT_EQ(e.out, "(x,x)\n(x,y)\n(y,x)\n(y,y)\n");
  cmd.t = make_rational(1, 2);
  EXPECT_EQ(run(cmd).out, "(x,x)\n(y,y)\n");
  cmd.t.reset();
  EXPECT_EQ(run(cmd).status, kParseError);

  const auto dw = run(make("dw", {data("two_point_drop.space")}));
  EXPECT_EQ(dw.out, "dw x x 0\ndw x y 1\ndw y x 1\ndw y y 0\n");
  const auto scaled = run(make("dw", {data("sierpinski.space")}));
  EXPECT_EQ(scaled.status, kOk) << scaled.err;
  EXPECT_EQ(scaled.out, "dw x x 0\ndw x y 1\ndw y x 0\ndw y y 0\n");
}

TEST(Cli, ConvertRoundTrip) {
  auto to_cat = make("convert", {data("chistyakov3.space")});
  to_cat.to = "qcat";
  const auto cat = run(to_cat);
  ASSERT_EQ(cat.status, kOk) << cat.err;
  MemoryFiles mem{{{"c.qcat", cat.out}}};
  auto back = make("convert", {"c.qcat"});
  back.to = "space";
  const auto space = run(back, mem.reader());
  ASSERT_EQ(space.status, kOk) << space.err;
  EXPECT_EQ(space.out, format_space(parse_space(read_file(data("chistyakov3.space")))));
  const auto check = run(make("check", {"c.qcat"}), mem.reader());
  EXPECT_EQ(check.out, "qc1 true\nqc2 true\nseparated true\nsymmetric true\n");
  to_cat.to = "graph";
  EXPECT_EQ(run(to_cat).status, kParseError);
}

TEST(Cli, FiniteCategoryResolvesRelativeQuantale) {
  MemoryFiles mem{{{"dir/two.lat", "elem 0\nelem 1\nleq 0 1\nop 0 0 0\nop 0 1 0\nop 1 0 0\nop 1 1 1\n"},
                   {"dir/c.qcat", "qcat finite two.lat\npoint a\npoint b\nhom a b 1\nhom b a 0\n"}}};
  const auto topo = run(make("topology", {"dir/c.qcat"}), mem.reader());
  EXPECT_EQ(topo.status, kOk) << topo.err;
  EXPECT_EQ(topo.out, "{}\n{a,b}\n{b}\n");
}

TEST(Cli, LatticeExample) {
  auto cmd = make("lattice");
  cmd.example = "powerset(2)";
  const auto r = run(cmd);
  EXPECT_EQ(r.status, kOk) << r.err;
  EXPECT_EQ(r.out.rfind("elements 4\nlattice true\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("quantale true\n"), std::string::npos);
  // Meet does not distribute over joins in the non-distributive diamond.
  cmd.example = "diamond";
  const auto d = run(cmd);
  EXPECT_EQ(d.status, kCheckFailed);
  EXPECT_NE(d.out.find("quantale false\n"), std::string::npos) << d.out;
  MemoryFiles mem{{{"v.lat", "elem a\nelem b\n"}}};
  const auto nl = run(make("lattice", {"v.lat"}), mem.reader());
  EXPECT_EQ(nl.status, kCheckFailed);
  EXPECT_EQ(nl.out, "elements 2\nlattice false\n");
}

}  // namespace
}  // namespace nabla::cli
