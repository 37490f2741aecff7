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


#include <gtest/gtest.h>

#include "oracles.h"
#include "ulc/eval.h"
#include "ulc/metatheory.h"
#include "ulc/surface.h"
#include "ulc/typing.h"

namespace ulc {
namespace {

Type ty(const char* src) { return parse_type(src); }
Term p(const char* src) { return parse_term(src); }

NameContext ctx(std::vector<std::pair<const char*, const char*>> entries) {
  std::vector<NameBinding> out;
  for (auto [n, t] : entries) out.push_back({Name{n}, ty(t)});
  return NameContext(std::move(out));
}

TypeErrorKind error_kind(const char* src, const TypingOptions& opts = {}) {
  try {
    synthesize(TypingContext(), p(src), opts);
  } catch (const TypeError& e) {
    return e.kind;
  }
  ADD_FAILURE() << src << " was accepted";
  return TypeErrorKind::kUnboundVariable;
}

TEST(NameContexts, WellFormedness) {
  EXPECT_FALSE(wf_name_ctx(ctx({{"X", "int"}, {"X", "int->int"}})));
  EXPECT_TRUE(wf_name_ctx(ctx({{"X", "int"}, {"X", "int"}})));
  EXPECT_TRUE(wf_name_ctx(ctx({})));
  EXPECT_FALSE(wf_type(ty("int->[X:int, X:[]int]int")));
}

TEST(NameContexts, EqualModuloPermutationAndRepetition) {
  EXPECT_EQ(ctx({{"Y1", "int"}, {"Y2", "int->int"}}),
            ctx({{"Y2", "int->int"}, {"Y1", "int"}, {"Y1", "int"}}));
  EXPECT_FALSE(ctx({{"X", "int"}}) == ctx({{"X", "int->int"}}));
  EXPECT_EQ(ty("[Y:int, X:int]int"), ty("[X:int, Y:int, X:int]int"));
}

TEST(Subtype, Arrows) {
  EXPECT_TRUE(subtype(ty("int"), ty("int")));
  EXPECT_FALSE(subtype(ty("int"), ty("int->int")));
  EXPECT_TRUE(subtype(ty("[X:int]int->int"), ty("[X:int, Y:int]int->int")) ==
              subtype(ty("[X:int, Y:int]int"), ty("[X:int]int")));
}

TEST(Subtype, UnboundTypes) {
  // Code needing fewer names can stand in for code needing more: the
  // context premise of the unbound rule is contravariant.
  EXPECT_TRUE(subtype(ty("[X:int]int"), ty("[X:int, Y:int]int")));
  EXPECT_FALSE(subtype(ty("[X:int, Y:int]int"), ty("[X:int]int")));
  EXPECT_FALSE(subtype(ty("([X:int]int)->int"), ty("([X:int, Y:int]int)->int")));
  EXPECT_TRUE(subtype(ty("([X:int, Y:int]int)->int"), ty("([X:int]int)->int")));
  EXPECT_TRUE(subtype(ty("[]int"), ty("[X:int]int")));
  EXPECT_FALSE(subtype(ty("[]int"), ty("int")));
}

TEST(Subtype, Contexts) {
  EXPECT_TRUE(subtype_ctx(ctx({{"X", "int"}, {"Y", "int"}}), ctx({{"X", "int"}})));
  EXPECT_FALSE(subtype_ctx(ctx({{"X", "int"}}), ctx({{"X", "int"}, {"Y", "int"}})));
  EXPECT_FALSE(subtype_ctx(ctx({{"X", "[Y:int]int"}}), ctx({{"X", "[]int"}})));
  EXPECT_TRUE(subtype_ctx(ctx({{"X", "[]int"}}), ctx({{"X", "[Y:int]int"}})));
  EXPECT_FALSE(subtype_ctx(ctx({{"X", "int"}}), ctx({{"Y", "int"}})));
}

TEST(Subtype, MatchesDeclarativeOracleExhaustively) {
  const auto types = oracle::types_up_to(6, {"X", "Y"});
  ASSERT_EQ(types.size(), 67u);  // 1+1+2+6+15+42 by size
  std::size_t related = 0;
  for (const auto& a : types) {
    for (const auto& b : types) {
      const bool alg = subtype(a, b);
      ASSERT_EQ(alg, oracle::declarative_subtype(a, b))
          << print_type(a) << " <= " << print_type(b);
      related += alg;
    }
  }
  EXPECT_GT(related, types.size());
}

TEST(Subtype, ReflexiveAndTransitive) {
  const auto all = oracle::types_up_to(6, {"X", "Y"});
  for (const auto& a : all) ASSERT_TRUE(subtype(a, a)) << print_type(a);
  const auto small = oracle::types_up_to(4, {"X", "Y"});
  for (const auto& a : small) {
    for (const auto& b : small) {
      if (!subtype(a, b)) continue;
      for (const auto& c : small) {
        if (subtype(b, c)) {
          ASSERT_TRUE(subtype(a, c))
              << print_type(a) << " " << print_type(b) << " " << print_type(c);
        }
      }
    }
  }
}

TEST(Oracle, EnumerationCounts) {
  // int | []int | int->int, [][]int | [X:int]int, ...
  EXPECT_EQ(oracle::types_of_size(1, {"X"}).size(), 1u);
  EXPECT_EQ(oracle::types_of_size(2, {"X"}).size(), 1u);
  EXPECT_EQ(oracle::types_of_size(3, {"X"}).size(), 2u);
  const auto four = oracle::types_of_size(4, {"X"});
  EXPECT_NE(std::find(four.begin(), four.end(), parse_type("[X:int]int")), four.end());
  for (const auto& t : oracle::types_up_to(6, {"X", "Y"})) ASSERT_LE(t.size(), 6);
}

TEST(Env, NenvAndXenv) {
  UnbindingMap r({{Variable{"x1"}, ty("int"), Name{"X"}},
                  {Variable{"x2"}, ty("int"), Name{"X"}}});
  EXPECT_EQ(nenv(r).entries().size(), 1u);
  EXPECT_EQ(nenv(r), ctx({{"X", "int"}}));
  EXPECT_EQ(*xenv(r).lookup(Variable{"x2"}), ty("int"));
  UnbindingMap clash({{Variable{"x1"}, ty("int"), Name{"X"}},
                      {Variable{"x2"}, ty("int->int"), Name{"X"}}});
  EXPECT_THROW(xenv(clash), TypeError);
}

TEST(Env, Update) {
  TypingContext a = TypingContext().with(Variable{"x"}, ty("int"));
  TypingContext b = TypingContext().with(Variable{"x"}, ty("int->int"));
  EXPECT_EQ(*ctx_update(a, b).lookup(Variable{"x"}), ty("int->int"));
  EXPECT_EQ(*ctx_update(b, a).lookup(Variable{"x"}), ty("int"));
}

TEST(Synthesize, WorkedExamples) {
  EXPECT_EQ(synthesize(TypingContext(),
                       p(R"((\y:[X:int]int. (\z:[X:int]int[X:int=>2].z) y
                                          + (\z:[X:int]int[X:int=>3].z) y)
                            <x:int=>X | x+1>)")),
            ty("int"));
  EXPECT_EQ(error_kind(R"((\x:[Y:int]int[Y:int=>3]. x+4) <y:int->int=>Y | y 2>)"),
            TypeErrorKind::kArgNotSubtype);
  TypingContext gamma = TypingContext().with(Variable{"x"}, ty("int"));
  EXPECT_EQ(synthesize(gamma, p("<y:int=>Y | y+x>")), ty("[Y:int]int"));
  EXPECT_EQ(synthesize(TypingContext(), p("<x:int=>X | x>")), ty("[X:int]int"));
}

TEST(Synthesize, Basics) {
  EXPECT_EQ(synthesize(TypingContext(), p(R"(\x:int.x)")), ty("int->int"));
  EXPECT_EQ(synthesize(TypingContext(), p(R"(\x:[X:int]int[X:int=>1].x)")),
            ty("[X:int]int->int"));
  // Application uses subsumption.
  EXPECT_EQ(synthesize(TypingContext(),
                       p(R"((\f:[]int->int. 1) \g:[X:int]int. 2)")),
            ty("int"));
  // More rebindings than the code needs.
  EXPECT_EQ(synthesize(TypingContext(),
                       p(R"((\z:[X:int, Y:int]int[X:int=>1, Y:int=>2].z) <x:int=>X | x>)")),
            ty("int"));
}

TEST(Synthesize, ErrorKinds) {
  EXPECT_EQ(error_kind("x"), TypeErrorKind::kUnboundVariable);
  EXPECT_EQ(error_kind(R"(1 + \x:int.x)"), TypeErrorKind::kSumNonInt);
  EXPECT_EQ(error_kind("1 2"), TypeErrorKind::kApplyNonFunction);
  EXPECT_EQ(error_kind(R"((\x:int.x) \y:int.y)"), TypeErrorKind::kArgNotSubtype);
  EXPECT_EQ(error_kind(R"(\x:[X:int, X:int->int]int. 1)"),
            TypeErrorKind::kIllFormedNameContext);
  EXPECT_EQ(error_kind(R"(\x:[X:int]int[Y:int=>1].x)"),
            TypeErrorKind::kRebindAnnotationMismatch);
  EXPECT_EQ(error_kind(R"(\x:[X:int]int[X:int=>\y:int.y].x)"),
            TypeErrorKind::kRebindEntryTypeMismatch);
  EXPECT_EQ(error_kind("<x:int=>X, y:int->int=>X | 1>"),
            TypeErrorKind::kUnbindDecorationClash);
}

TEST(Synthesize, ErrorCarriesPath) {
  try {
    synthesize(TypingContext(), p(R"(\x:int. 1 2)"));
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(e.path, "/body");
  }
}

TEST(Synthesize, RejectsUntypedInput) {
  EXPECT_THROW(synthesize(TypingContext(), p(R"(\x.x)")), std::invalid_argument);
  EXPECT_FALSE(try_synthesize(TypingContext(), p(R"(\x.x)")).has_value());
}

// With exact entry checking the reduct of this well-typed term is rejected:
// after the application the entry Y holds a function of type
// ([X:int]int)->int, a proper subtype of its declaration.
constexpr const char* kExactCounterexample =
    R"((\f:([]int)->int. \z:[Y:([]int)->int]int [Y:([]int)->int=>f]. 1)
       (\q:[X:int]int. 1))";

TEST(RebindEntries, ExactCheckBreaksPreservation) {
  TypingOptions exact{RebindEntryCheck::kExact};
  Term t = p(kExactCounterexample);
  ASSERT_TRUE(try_synthesize(TypingContext(), t, exact).has_value());
  FreshSupply s;
  auto r = step_typed(t, s);
  ASSERT_TRUE(std::holds_alternative<Reduced>(r));
  const Term& next = std::get<Reduced>(r).next;
  EXPECT_FALSE(try_synthesize(TypingContext(), next, exact).has_value());
  try {
    synthesize(TypingContext(), next, exact);
  } catch (const TypeError& e) {
    EXPECT_EQ(e.kind, TypeErrorKind::kRebindEntryTypeMismatch);
  }
  // The default subtype check keeps the reduct typable at the same type.
  auto before = try_synthesize(TypingContext(), t);
  auto after = try_synthesize(TypingContext(), next);
  ASSERT_TRUE(before && after);
  EXPECT_TRUE(subtype(*after, *before));
  EXPECT_EQ(check_preservation(t).status, CheckResult::Status::kPassed);
}

TEST(Lemmas, FreeVariablesWithinContext) {
  TypingContext gamma = TypingContext().with(Variable{"x"}, ty("int"));
  EXPECT_EQ(check_free_vars_lemma(gamma, p("<y:int=>Y | y+x>")).status,
            CheckResult::Status::kPassed);
  EXPECT_EQ(check_free_vars_lemma(TypingContext(), p("<y:int=>Y | y+x>")).status,
            CheckResult::Status::kSkipped);
}

TEST(Lemmas, CanonicalForms) {
  EXPECT_EQ(check_canonical_forms(p("<x:int=>X | x>")).status,
            CheckResult::Status::kPassed);
  EXPECT_EQ(check_canonical_forms(p(R"(\x:[X:int]int[X:int=>1].x)")).status,
            CheckResult::Status::kPassed);
  EXPECT_EQ(check_canonical_forms(p("1+2")).status, CheckResult::Status::kSkipped);
}

}  // namespace
}  // namespace ulc
