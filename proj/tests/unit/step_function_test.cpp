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

#include "nabla/generate.hpp"
#include "nabla/step_function.hpp"

namespace nabla {
namespace {

const ExtRational kInf = ExtRational::infinity();

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }
ExtRational v(std::int64_t p, std::int64_t d = 1) { return ExtRational(make_rational(p, d)); }

// 1 on (0, 1], 0 after.
StepFunction drop_after_one() { return StepFunction::make(v(1), {Cut{q(1), v(1), v(0)}}); }
// 1 on (0, 1), 0 from 1.
StepFunction drop_at_one() { return StepFunction::make(v(1), {Cut{q(1), v(0), v(0)}}); }

TEST(StepFunction, EvaluatesAtAndAfterCuts) {
  EXPECT_EQ(drop_after_one()(q(1)), v(1));
  EXPECT_EQ(drop_after_one()(q(101, 100)), v(0));
  EXPECT_EQ(StepFunction::zero()(q(7, 3)), v(0));
  const auto f = StepFunction::make(kInf, {Cut{q(1), v(2), v(3, 2)}});
  EXPECT_EQ(f(q(5, 4)), v(3, 2));
  EXPECT_EQ(f(q(1)), v(2));
  EXPECT_EQ(f(q(1, 2)), kInf);
  EXPECT_EQ(eval(f, q(5, 4)), v(3, 2));
}

TEST(StepFunction, RejectsNonPositiveArguments) {
  EXPECT_THROW(drop_at_one()(q(0)), InputError);
  EXPECT_THROW(drop_at_one()(q(-1)), InputError);
}

TEST(StepFunction, MakeValidatesShape) {
  EXPECT_THROW(StepFunction::make(v(1), {Cut{q(0), v(1), v(1)}}), InputError);
  EXPECT_THROW(StepFunction::make(v(1), {Cut{q(2), v(1), v(0)}, Cut{q(1), v(0), v(0)}}), InputError);
  EXPECT_THROW(StepFunction::make(v(1), {Cut{q(1), v(2), v(0)}}), InputError);
  EXPECT_THROW(StepFunction::make(v(1), {Cut{q(1), v(1), v(2)}}), InputError);
}

TEST(StepFunction, CanonicalFormDropsRedundantCuts) {
  const auto f = StepFunction::make(v(2), {Cut{q(1), v(2), v(2)}, Cut{q(2), v(2), v(1)}});
  ASSERT_EQ(f.cuts().size(), 1u);
  EXPECT_EQ(f.cuts()[0].t, q(2));
  EXPECT_EQ(f_step(q(1), kInf), StepFunction::infinity());
  EXPECT_TRUE(StepFunction::make(v(3), {Cut{q(5), v(3), v(3)}}).is_constant());
}

TEST(StepFunction, EqualityIsPointwiseEquality) {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto f = random_step_function(rng), g = random_step_function(rng);
    bool same = true;
    for (const auto& t : regime_samples(merged_cuts(f, g))) same = same && f(t) == g(t);
    EXPECT_EQ(same, f == g);
  }
}

TEST(StepFunction, EvalIsNonIncreasing) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_step_function(rng);
    ExtRational previous = kInf;
    for (std::int64_t k = 1; k <= 80; ++k) {
      const auto value = f(q(k, 8));
      EXPECT_LE(value, previous);
      previous = value;
    }
  }
}

TEST(LeOp, ZeroIsTheTop) {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(le_op(random_step_function(rng), StepFunction::zero()));
  EXPECT_TRUE(le_op(StepFunction::infinity(), drop_at_one()));
}

TEST(LeOp, SpotValues) {
  EXPECT_TRUE(le_op(left_regularize(drop_at_one()), drop_at_one()));
  EXPECT_FALSE(le_op(drop_at_one(), left_regularize(drop_at_one())));
  EXPECT_TRUE(le_op(f_step(q(1), v(2)), f_step(q(1), v(1))));
}

TEST(LatticeOps, JoinIsPointwiseMinimum) {
  const auto j = join_op(f_step(q(1), v(2)), f_step(q(2), v(1)));
  EXPECT_EQ(j, StepFunction::make(kInf, {Cut{q(1), v(2), v(2)}, Cut{q(2), v(1), v(1)}}));
  EXPECT_EQ(join_op(drop_at_one(), StepFunction::zero()), StepFunction::zero());
  EXPECT_EQ(meet_op(drop_at_one(), StepFunction::infinity()), StepFunction::infinity());
}

TEST(LatticeOps, EmptyFamiliesAreRejected) {
  EXPECT_THROW(join_op(std::span<const StepFunction>{}), InputError);
  EXPECT_THROW(meet_op(std::span<const StepFunction>{}), InputError);
}

TEST(LatticeOps, AgreeWithPointwiseOracle) {
  Rng rng(10);
  for (int i = 0; i < 200; ++i) {
    std::vector<StepFunction> fs;
    for (int k = 0; k < 4; ++k) fs.push_back(random_step_function(rng));
    const auto j = join_op(fs), m = meet_op(fs);
    for (const auto& t : regime_samples(merged_cuts(fs))) {
      ExtRational lo = kInf, hi = v(0);
      for (const auto& f : fs) {
        lo = min(lo, f(t));
        hi = max(hi, f(t));
      }
      EXPECT_EQ(j(t), lo);
      EXPECT_EQ(m(t), hi);
    }
  }
}

TEST(FStep, ValuesAndErrors) {
  EXPECT_EQ(f_step(q(1), v(1, 2))(q(1)), v(1, 2));
  EXPECT_EQ(f_step(q(1), v(1, 2))(q(1, 2)), kInf);
  EXPECT_THROW(f_step(q(0), v(1)), InputError);
  EXPECT_THROW(f_step(q(1), v(0)), InputError);
}

TEST(Scale, ZeroTimesInfinityIsZero) {
  const auto g = f_step(q(1), v(1));
  EXPECT_EQ(scale(g, q(2)), StepFunction::make(kInf, {Cut{q(1), v(2), v(2)}}));
  EXPECT_EQ(scale(g, q(0)), StepFunction::zero());
}

TEST(Dilate, ShiftsCuts) {
  const auto f = dilate(drop_at_one(), q(2));
  EXPECT_EQ(f, StepFunction::make(v(1), {Cut{q(1, 2), v(0), v(0)}}));
  EXPECT_THROW(dilate(f, q(0)), InputError);
}

TEST(LeftRegularize, DropAtOneMovesPastOne) {
  EXPECT_EQ(left_regularize(drop_at_one()), drop_after_one());
  EXPECT_FALSE(is_left_continuous(drop_at_one()));
  EXPECT_TRUE(is_left_continuous(drop_after_one()));
  EXPECT_TRUE(is_left_continuous(StepFunction::constant(v(3))));
}

TEST(LeftRegularize, IsIdempotentAndBelowInOppositeOrder) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto f = random_step_function(rng);
    const auto r = left_regularize(f);
    EXPECT_EQ(left_regularize(r), r);
    EXPECT_TRUE(is_left_continuous(r));
    EXPECT_TRUE(le_op(r, f));
    EXPECT_EQ(is_left_continuous(f), r == f);
    // Oracle: inf over s < t is the value just left of t; samples are at
    // least 1/8 apart on the generator grid.
    for (const auto& t : regime_samples(merged_cuts(f, r))) EXPECT_EQ(r(t), f(t - q(1, 1024)));
  }
}

TEST(WellBelowTop, Characterization) {
  EXPECT_TRUE(well_below_top(f_step(q(1), v(1, 2))));
  EXPECT_FALSE(well_below_top(StepFunction::constant(v(1))));
  EXPECT_FALSE(well_below_top(StepFunction::make(kInf, {Cut{q(1), v(0), v(0)}})));
  EXPECT_TRUE(well_below_top(StepFunction::infinity()));
  EXPECT_FALSE(well_below_top(StepFunction::zero()));
}

TEST(WellBelowFStep, SpotValues) {
  EXPECT_TRUE(well_below_fstep(q(1), v(1, 2), drop_at_one()));
  EXPECT_FALSE(well_below_fstep(q(1), v(1, 2), drop_after_one()));
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const Rational t = q(1 + static_cast<std::int64_t>(uniform_below(rng, 16)), 4);
    const ExtRational eps = v(1 + static_cast<std::int64_t>(uniform_below(rng, 16)), 4);
    EXPECT_EQ(well_below_fstep(t, eps, StepFunction::zero()), well_below_top(f_step(t, eps)));
  }
}

TEST(WellBelowFStep, InfiniteRadiusIsTheBottom) {
  EXPECT_TRUE(well_below_fstep(q(1), kInf, drop_at_one()));
  EXPECT_FALSE(well_below_fstep(q(1), kInf, StepFunction::infinity()));
  EXPECT_THROW(well_below_fstep(q(0), v(1), drop_at_one()), InputError);
  EXPECT_THROW(well_below_fstep(q(1), v(0), drop_at_one()), InputError);
}

TEST(Literal, PrintsCanonicalForm) {
  EXPECT_EQ(to_literal(StepFunction::make(kInf, {Cut{q(2, 4), v(6, 4), v(1)}})), "step head=inf cut=1/2 at=3/2 after=1");
  EXPECT_EQ(to_literal(StepFunction::zero()), "step head=0");
}

TEST(Literal, RoundTrips) {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto f = random_step_function(rng);
    EXPECT_EQ(parse_step_literal(to_literal(f)), f);
  }
}

TEST(Literal, ParseErrorsCarryColumns) {
  try {
    parse_step_literal("step head=1 cut=x at=0 after=0", 4, 10);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 10u + 13u + 4u);
  }
  EXPECT_THROW(parse_step_literal("stp head=1"), ParseError);
  EXPECT_THROW(parse_step_literal("step head=1 cut=1 at=0"), ParseError);
  EXPECT_THROW(parse_step_literal("step head=1 cut=1 at=2 after=0"), ParseError);
  EXPECT_THROW(parse_step_literal("step head=1 cut=0 at=0 after=0"), ParseError);
}

}  // namespace
}  // namespace nabla
