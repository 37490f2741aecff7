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

#include "ulc/binding.h"
#include "ulc/metatheory.h"
#include "ulc/surface.h"

namespace ulc {
namespace {

VarSet vars(std::initializer_list<const char*> names) {
  VarSet out;
  for (const char* n : names) out.insert(Variable{n});
  return out;
}

Term p(const char* src) { return parse_term(src); }

TEST(FreeVars, Examples) {
  EXPECT_EQ(free_vars(p("<x=>X | x+y>")), vars({"y"}));
  EXPECT_EQ(free_vars(p(R"(\z[X=>w].z)")), vars({"w"}));
  EXPECT_EQ(free_vars(p(R"(\x.x y)")), vars({"y"}));
  // Rebinding terms are outside the binder's scope.
  EXPECT_EQ(free_vars(p(R"(\x[X=>x].x)")), vars({"x"}));
  EXPECT_EQ(free_vars(p("f x")), vars({"f", "x"}));
  EXPECT_TRUE(free_vars(p("error")).empty());
}

TEST(FreshSupply, SmallestUnusedSuffix) {
  FreshSupply s;
  EXPECT_EQ(s.fresh(Variable{"x"}, vars({"x"})), Variable{"x#1"});
  EXPECT_EQ(s.fresh(Variable{"x"}, vars({"x", "x#1", "x#3"})), Variable{"x#2"});
  EXPECT_EQ(s.fresh(Variable{"x#4"}, vars({"x#4"})), Variable{"x#1"});
  EXPECT_EQ(s.renamings(), 3u);
}

TEST(SubstRaw, UndefinedOnUnbinderCapture) {
  auto r = subst_raw(p("<x=>X | y x>"), Substitution(Variable{"y"}, p(R"(\z.x)")));
  ASSERT_TRUE(std::holds_alternative<SubstClash>(r));
  EXPECT_EQ(std::get<SubstClash>(r).var, Variable{"x"});
}

TEST(SubstRaw, UndefinedOnBinderCapture) {
  auto r = subst_raw(p(R"(\x.y)"), Substitution(Variable{"y"}, p("x")));
  EXPECT_TRUE(std::holds_alternative<SubstClash>(r));
}

TEST(SubstRaw, BinderShadows) {
  auto r = subst_raw(p(R"(\x.x)"), Substitution(Variable{"x"}, Term::num(1)));
  ASSERT_TRUE(std::holds_alternative<Term>(r));
  EXPECT_TRUE(structural_eq(std::get<Term>(r), p(R"(\x.x)")));
}

TEST(SubstRaw, RebindTermsAreSubstituted) {
  auto r = subst_raw(p(R"(\x[X=>x].x)"), Substitution(Variable{"x"}, Term::num(1)));
  ASSERT_TRUE(std::holds_alternative<Term>(r));
  EXPECT_TRUE(structural_eq(std::get<Term>(r), p(R"(\x[X=>1].x)")));
}

TEST(Subst, RenamesUnbinder) {
  FreshSupply s;
  Term out = subst(p("<x=>X | y x>"), Substitution(Variable{"y"}, p(R"(\z.x)")), s);
  EXPECT_TRUE(structural_eq(out, p(R"(<x#1=>X | (\z.x) x#1>)")));
  EXPECT_TRUE(alpha_equiv(out, p(R"(<x'=>X | (\z.x) x'>)")));
}

TEST(Subst, RenamesBinder) {
  FreshSupply s;
  Term out = subst(p(R"(\x.y)"), Substitution(Variable{"y"}, p("x")), s);
  EXPECT_TRUE(structural_eq(out, p(R"(\x#1.x)")));
}

TEST(Subst, NoRenamingWhenUnneeded) {
  FreshSupply s;
  Term out = subst(p(R"(\x.x+y)"), Substitution(Variable{"y"}, Term::num(2)), s);
  EXPECT_TRUE(structural_eq(out, p(R"(\x.x+2)")));
  EXPECT_EQ(s.renamings(), 0u);
}

TEST(Subst, RenamingAvoidsBodyVariables) {
  FreshSupply s;
  Term out = subst(p(R"(\x.x#1 x y)"), Substitution(Variable{"y"}, p("x")), s);
  EXPECT_TRUE(structural_eq(out, p(R"(\x#2.x#1 x#2 x)")));
}

TEST(Subst, SiblingUnbindersStayDistinct) {
  FreshSupply s;
  Term out = subst(p("<x=>X, x#1=>Y | x x#1 y>"),
                   Substitution(Variable{"y"}, p("x")), s);
  EXPECT_TRUE(alpha_equiv(out, p("<a=>X, b=>Y | a b x>")));
}

TEST(Subst, Simultaneous) {
  FreshSupply s;
  Substitution sigma({{Variable{"x"}, p("y")}, {Variable{"y"}, p("x")}});
  EXPECT_TRUE(structural_eq(subst(p("x+y"), sigma, s), p("y+x")));
}

TEST(AlphaEquiv, Examples) {
  EXPECT_TRUE(alpha_equiv(p("<x=>X | x>"), p("<y=>X | y>")));
  EXPECT_FALSE(alpha_equiv(p("<x=>X | x>"), p("<x=>Y | x>")));
  EXPECT_TRUE(alpha_equiv(p(R"(\x.\y.x)"), p(R"(\a.\b.a)")));
  EXPECT_FALSE(alpha_equiv(p(R"(\x.\y.x)"), p(R"(\a.\b.b)")));
  EXPECT_FALSE(alpha_equiv(p(R"(\x.y)"), p(R"(\x.z)")));
  // Unbinders for the same name may be matched in either order.
  EXPECT_TRUE(alpha_equiv(p("<x=>X, y=>X | x+y+x>"), p("<b=>X, a=>X | b+a+b>")));
  EXPECT_FALSE(alpha_equiv(p("<x=>X, y=>X | x+y+x>"), p("<a=>X, b=>X | a+a+b>")));
  EXPECT_FALSE(alpha_equiv(p("<x=>X, y=>Y | x>"), p("<a=>X, b=>Y | b>")));
  // Rebinding terms are compared in the outer scope.
  EXPECT_FALSE(alpha_equiv(p(R"(\x[X=>x].x)"), p(R"(\y[X=>y].y)")));
  EXPECT_TRUE(alpha_equiv(p(R"(\x[X=>w].x)"), p(R"(\y[X=>w].y)")));
}

TEST(RenameBinders, AlphaEquivalentAndFresh) {
  Term t = p(R"((\x.<y=>X | x y>) \b1.b1)");
  Term u = rename_binders(t);
  EXPECT_TRUE(alpha_equiv(t, u));
  EXPECT_FALSE(structural_eq(t, u));
  EXPECT_EQ(free_vars(u), free_vars(t));
}

// Properties over generated terms.

class SubstProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SubstProperty, AgreesWithRawAndRenaming) {
  GenConfig cfg;
  cfg.seed = GetParam();
  Generator gen(cfg);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.term();
    Substitution sigma = gen.substitution(2);
    CheckResult r = check_subst(t, sigma);
    ASSERT_NE(r.status, CheckResult::Status::kFailed) << print(t) << "\n" << r.detail;
  }
}

TEST_P(SubstProperty, AlphaEquivIsReflexiveAndSymmetric) {
  GenConfig cfg;
  cfg.seed = GetParam();
  Generator gen(cfg);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.term();
    Term u = rename_binders(t);
    ASSERT_TRUE(alpha_equiv(t, t)) << print(t);
    ASSERT_TRUE(alpha_equiv(t, u)) << print(t);
    ASSERT_TRUE(alpha_equiv(u, t)) << print(t);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SubstProperty, ::testing::Values(1, 2, 3));

TEST(CaptureMutation, ProducesTheWrongResult) {
  // With renaming switched off the unbinder captures the free x.
  testing_hooks::disable_capture_avoidance = true;
  FreshSupply s;
  Term out = subst(p("<x=>X | y x>"), Substitution(Variable{"y"}, p(R"(\z.x)")), s);
  testing_hooks::disable_capture_avoidance = false;
  EXPECT_TRUE(structural_eq(out, p(R"(<x=>X | (\z.x) x>)")));
}

}  // namespace
}  // namespace ulc
