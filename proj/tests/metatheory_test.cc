// Copyright 2026 The ulc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <set>

#include <gtest/gtest.h>

#include "ulc/eval.h"
#include "ulc/metatheory.h"
#include "ulc/surface.h"

namespace ulc {
namespace {

Term p(const char* src) { return parse_term(src); }

constexpr const char* kTypedExample1 =
    R"((\y:[X:int]int. (\z:[X:int]int[X:int=>2].z) y + (\z:[X:int]int[X:int=>3].z) y)
       <x:int=>X | x+1>)";
constexpr const char* kTypedIntro =
    R"((\z:[X:int, Y:int]int[X:int=>1, Y:int=>2].z) <x:int=>X, y:int=>Y | x+y>)";
constexpr const char* kTypedExample3 =
    R"((\w:[X:int]int[X:int=>1].w)
       ((\x1:[X:int](int->int). \x2:[X:int]int.
           <y1:int=>X, y2:int=>X |
             ((\z:[X:int](int->int)[X:int=>y1].z) x1) ((\z:[X:int]int[X:int=>y2].z) x2)>)
        <x:int=>X | \y:int. y+x> <x:int=>X | x>))";
constexpr const char* kTypedModules =
    R"(((\m:[X1:int, X2:int]([Y1:int, Y2:int]int -> int)[X1:int=>1, X2:int=>2].m)
        <x1:int=>X1, x2:int=>X2 | \z:[Y1:int, Y2:int]int[Y1:int=>1, Y2:int=>x1+x2].z>)
       <x:int=>Y2 | x>)";

int constructor(const Term& t) { return static_cast<int>(t.node().index()); }

void collect(const Term& t, std::set<int>& kinds) {
  kinds.insert(constructor(t));
  if (const auto* n = t.as<Sum>()) {
    collect(n->left, kinds);
    collect(n->right, kinds);
  } else if (const auto* n = t.as<App>()) {
    collect(n->fun, kinds);
    collect(n->arg, kinds);
  } else if (const auto* n = t.as<Abs>()) {
    collect(n->body, kinds);
  } else if (const auto* n = t.as<Unbind>()) {
    collect(n->body, kinds);
  } else if (const auto* n = t.as<RebindAbs>()) {
    for (const auto& e : n->map.entries()) collect(e.term, kinds);
    collect(n->body, kinds);
  }
}

TEST(Generator, Deterministic) {
  for (Mode mode : {Mode::kUntyped, Mode::kTyped}) {
    GenConfig cfg;
    cfg.mode = mode;
    Generator a(cfg);
    Generator b(cfg);
    for (int i = 0; i < 200; ++i) ASSERT_TRUE(structural_eq(a.term(), b.term()));
  }
}

TEST(Generator, DepthZeroGivesAtoms) {
  GenConfig cfg;
  cfg.max_depth = 0;
  Generator gen(cfg);
  for (int i = 0; i < 200; ++i) {
    Term t = gen.term();
    EXPECT_TRUE(t.as<Num>() || t.as<VarRef>()) << print(t);
  }
}

TEST(Generator, CoversEveryConstructor) {
  GenConfig cfg;
  Generator gen(cfg);
  std::set<int> kinds;
  for (int i = 0; i < 500; ++i) collect(gen.term(), kinds);
  EXPECT_EQ(kinds.size(), std::variant_size_v<TermNode::variant>);
}

TEST(Generator, TypedTermsAreModeCoherent) {
  GenConfig cfg;
  cfg.mode = Mode::kTyped;
  Generator gen(cfg);
  for (int i = 0; i < 500; ++i) {
    Term t = gen.term();
    ASSERT_FALSE(find_mode_error(t, Mode::kTyped).has_value()) << print(t);
  }
  cfg.mode = Mode::kUntyped;
  Generator untyped(cfg);
  for (int i = 0; i < 500; ++i) {
    Term t = untyped.term();
    ASSERT_FALSE(find_mode_error(t, Mode::kUntyped).has_value()) << print(t);
  }
}

TEST(Generator, TypeDirectedBranchIsMostlyTypable) {
  GenConfig cfg;
  cfg.mode = Mode::kTyped;
  Generator gen(cfg);
  const Type goal = parse_type("[X:int]int");
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    Term t = gen.term_of_type(TypingContext(), goal, 5);
    auto ty = try_synthesize(TypingContext(), t);
    if (ty) {
      ++accepted;
      EXPECT_TRUE(subtype(*ty, goal)) << print(t) << " : " << print_type(*ty);
    }
  }
  RecordProperty("accepted", accepted);
  // Every type-directed term is expected to check.
  EXPECT_EQ(accepted, 1000);

  int well_typed = 0;
  for (int i = 0; i < 1000; ++i) well_typed += try_synthesize(TypingContext(), gen.term()).has_value();
  EXPECT_GE(well_typed, 300);
}

TEST(Generator, ValuesAreClosedValues) {
  GenConfig cfg;
  cfg.mode = Mode::kTyped;
  Generator gen(cfg);
  for (int i = 0; i < 300; ++i) {
    Term v = gen.value_of_type(gen.type(2), 4);
    ASSERT_TRUE(is_value(v)) << print(v);
    ASSERT_TRUE(free_vars(v).empty()) << print(v);
  }
}

TEST(Preservation, TypedExamples) {
  for (const char* src : {kTypedExample1, kTypedIntro, kTypedExample3, kTypedModules}) {
    CheckResult r = check_preservation(p(src));
    EXPECT_EQ(r.status, CheckResult::Status::kPassed) << src << r.detail;
  }
  // Every intermediate term of Example 1 has type int.
  FreshSupply s;
  Trace t = evaluate_typed(p(kTypedExample1), kDefaultFuel, s);
  for (const auto& step : t.steps) {
    EXPECT_EQ(synthesize(TypingContext(), step.to), Type::integer()) << print(step.to);
  }
  EXPECT_EQ(check_preservation(p(kTypedExample1)).stats.at("equal-type-steps"), 6u);
  EXPECT_EQ(check_preservation(p("3")).status, CheckResult::Status::kPassed);
  EXPECT_EQ(check_preservation(p(R"((\x:[Y:int]int[Y:int=>3]. x+4) <y:int->int=>Y | y 2>)")).status,
            CheckResult::Status::kSkipped);
}

TEST(Progress, TypedExamples) {
  for (const char* src : {kTypedExample1, kTypedIntro, kTypedExample3, kTypedModules}) {
    EXPECT_EQ(check_progress(p(src)).status, CheckResult::Status::kPassed) << src;
  }
}

TEST(ErasureSimulation, TypedExamples) {
  for (const char* src : {kTypedExample1, kTypedIntro, kTypedExample3, kTypedModules}) {
    CheckResult r = check_erasure_simulation(p(src));
    EXPECT_EQ(r.status, CheckResult::Status::kPassed) << src << r.detail;
  }
}

TEST(Checks, TrivialCases) {
  EXPECT_EQ(check_round_trip(p("1"), Mode::kUntyped).status, CheckResult::Status::kPassed);
  EXPECT_EQ(check_canonical_forms(p("x")).status, CheckResult::Status::kSkipped);
}

TEST(Shrink, FindsSmallestFailingSubterm) {
  Term t = p(R"((\x.x) (1 + (2 3)) + 4)");
  Term s = shrink(t, [](const Term& c) {
    FreshSupply supply;
    Trace tr = evaluate(c, 100, supply);
    return std::holds_alternative<StuckOutcome>(tr.outcome);
  });
  EXPECT_TRUE(structural_eq(s, p("2 3")));
}

TEST(Verify, SmallRunPasses) {
  VerifyConfig cfg;
  cfg.cases = 200;
  for (const auto& r : run_verify(cfg)) {
    EXPECT_TRUE(r.passed()) << r.property << ": " << r.failures.at(0).term_src
                            << "\n" << r.failures.at(0).detail;
    EXPECT_EQ(r.cases, 200u);
  }
}

TEST(Verify, ZeroCasesTriviallyPasses) {
  VerifyConfig cfg;
  cfg.cases = 0;
  auto reports = run_verify(cfg);
  EXPECT_FALSE(reports.empty());
  for (const auto& r : reports) EXPECT_TRUE(r.passed());
}

TEST(Verify, CaptureMutantIsCaughtByAlphaInvariance) {
  testing_hooks::disable_capture_avoidance = true;
  VerifyConfig cfg;
  cfg.cases = 300;
  auto reports = run_verify(cfg);
  testing_hooks::disable_capture_avoidance = false;
  bool caught = false;
  for (const auto& r : reports) {
    if (r.property == "alpha-invariance-untyped") caught = !r.passed();
  }
  EXPECT_TRUE(caught);
}

}  // namespace
}  // namespace ulc
