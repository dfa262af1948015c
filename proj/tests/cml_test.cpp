// Copyright 2026 The cmlkg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <functional>

#include "cmlkg/cml/formula.hpp"
#include "cmlkg/error.hpp"
#include "support/random_instances.hpp"

namespace cmlkg::cml {
namespace {

// Size of the formula as a tree, with shared subterms counted every time.
std::size_t tree_size(const FormulaArena& a, FormulaId id) {
  const auto& n = a.node(id);
  std::size_t s = 1;
  if (n.left != kNoFormula) s += tree_size(a, n.left);
  if (n.right != kNoFormula) s += tree_size(a, n.right);
  return s;
}

TEST(Parse, DiamondOverTop) {
  FormulaArena a;
  const auto f = parse(a, "<R1>=1 top");
  const auto& n = a.node(f);
  EXPECT_EQ(n.kind, NodeKind::kDiamond);
  EXPECT_EQ(n.count, 1u);
  EXPECT_EQ(n.name, "R1");
  EXPECT_EQ(a.node(n.left).kind, NodeKind::kTop);
  EXPECT_EQ(f, a.diamond(1, "R1", a.top()));
}

TEST(Parse, ConstantAndNegatedPredicate) {
  FormulaArena a;
  const auto f = parse(a, "(@h & !P(red))");
  EXPECT_EQ(f, a.conjoin(a.constant("h"), a.negate(a.pred("red"))));
}

TEST(Parse, ChainRule) {
  FormulaArena a;
  const auto f = parse(a, "<R3>=1 <R2>=1 <R1>=1 @h");
  EXPECT_EQ(f, a.diamond(1, "R3", a.diamond(1, "R2", a.diamond(1, "R1", a.constant("h")))));
  EXPECT_EQ(f, canonical_formula(a, Canonical::kC));
}

TEST(Parse, PrecedenceAndDisjunction) {
  FormulaArena a;
  const auto p = a.pred("p");
  const auto q = a.pred("q");
  const auto r = a.pred("r");
  EXPECT_EQ(parse(a, "P(p) | P(q) & P(r)"), a.disjoin(p, a.conjoin(q, r)));
  EXPECT_EQ(parse(a, "!P(p) & P(q)"), a.conjoin(a.negate(p), q));
  EXPECT_EQ(parse(a, "<R>=2 P(p) & P(q)"), a.conjoin(a.diamond(2, "R", p), q));
  EXPECT_EQ(parse(a, "P(p) & P(q) & P(r)"), a.conjoin(a.conjoin(p, q), r));
}

TEST(Parse, EscapedNames) {
  FormulaArena a;
  const auto f = parse(a, "<has\\ part>=1 P(a\\&b)");
  EXPECT_EQ(f, a.diamond(1, "has part", a.pred("a&b")));
  EXPECT_EQ(parse(a, print(a, f)), f);
  const auto inv = parse(a, "<R1⁻¹>=1 top");
  EXPECT_EQ(a.node(inv).name, "R1⁻¹");
}

TEST(Parse, SyntaxErrors) {
  FormulaArena a;
  for (const char* bad : {"", "<R1>=0 top", "<R1>=1", "P(a", "@", "top top",
                          "<R1>=x top", "(top", "top &", "P(a\\q)", "top\\",
                          "<R1>=99999999999 top"}) {
    EXPECT_THROW(parse(a, bad), SyntaxError) << bad;
  }
}

TEST(Parse, ErrorOffset) {
  FormulaArena a;
  try {
    parse(a, "top & ");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(Subformulas, Top) {
  FormulaArena a;
  EXPECT_EQ(enumerate_subformulas(a, a.top()).size(), 1u);
}

TEST(Subformulas, ChainDecomposesIntoFour) {
  FormulaArena a;
  const auto f = canonical_formula(a, Canonical::kC);
  const auto subs = enumerate_subformulas(a, f);
  ASSERT_EQ(subs.size(), 4u);
  EXPECT_EQ(print(a, subs[0]), "@h");
  EXPECT_EQ(print(a, subs[1]), "<R1>=1 @h");
  EXPECT_EQ(print(a, subs[2]), "<R2>=1 <R1>=1 @h");
  EXPECT_EQ(print(a, subs[3]), "<R3>=1 <R2>=1 <R1>=1 @h");
}

TEST(Subformulas, SharedChildCountedOnce) {
  FormulaArena a;
  const auto f = parse(a, "(P(a) & P(a))");
  EXPECT_EQ(enumerate_subformulas(a, f).size(), 2u);
  EXPECT_EQ(tree_size(a, f), 3u);
}

TEST(Canonical, Shapes) {
  FormulaArena a;
  EXPECT_EQ(canonical_formula(a, Canonical::kI),
            parse(a, "<R3>=1 (<R4>=2 top & <R2>=1 <R1>=1 @h)"));
  EXPECT_EQ(canonical_formula(a, Canonical::kUprime),
            parse(a, "<R4>=1 <R2>=1 (<R1>=1 @h & @c) & <R5>=1 <R3>=1 (<R1>=1 @h & @c)"));
  EXPECT_EQ(canonical_formula(a, Canonical::kUquery),
            parse(a, "<R4>=1 <R2>=1 <R1>=1 @h & <R5>=1 <R3>=1 <R1>=1 @h"));
  EXPECT_EQ(constants_of(a, canonical_formula(a, Canonical::kUprime)),
            (std::set<std::string>{"c", "h"}));
  EXPECT_EQ(diamond_depth(a, canonical_formula(a, Canonical::kI)), 3u);
}

TEST(Arena, Queries) {
  FormulaArena a;
  const auto f = parse(a, "!<R1>=2 (P(x) & @k) & <R2>=1 top");
  EXPECT_EQ(constants_of(a, f), std::set<std::string>{"k"});
  EXPECT_EQ(predicates_of(a, f), std::set<std::string>{"x"});
  EXPECT_EQ(relations_of(a, f), (std::set<std::string>{"R1", "R2"}));
  EXPECT_EQ(diamond_depth(a, f), 1u);
  EXPECT_FALSE(negation_free(a, f));
  EXPECT_TRUE(negation_free(a, parse(a, "<R1>=1 @k")));
  EXPECT_THROW(a.diamond(0, "R", a.top()), Error);
  EXPECT_THROW(a.node(9999), Error);
}

class FormulaProperty : public ::testing::TestWithParam<int> {};

TEST_P(FormulaProperty, PrintParseRoundTrip) {
  testing::Rng rng(500 + GetParam());
  FormulaArena a;
  testing::FormulaShape shape;
  shape.constants = {"h", "c"};
  for (int i = 0; i < 20; ++i) {
    const auto f = testing::random_formula(rng, a, shape);
    const std::string text = print(a, f);
    EXPECT_EQ(parse(a, text), f) << text;
    FormulaArena fresh;
    EXPECT_EQ(print(fresh, parse(fresh, text)), text);
  }
}

TEST_P(FormulaProperty, TopologicalOrder) {
  testing::Rng rng(700 + GetParam());
  FormulaArena a;
  testing::FormulaShape shape;
  shape.constants = {"h"};
  const auto f = testing::random_formula(rng, a, shape);
  const auto order = enumerate_subformulas(a, f);
  ASSERT_EQ(order.back(), f);
  std::map<FormulaId, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  EXPECT_EQ(pos.size(), order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& n = a.node(order[i]);
    for (auto c : {n.left, n.right})
      if (c != kNoFormula) {
        ASSERT_TRUE(pos.count(c));
        EXPECT_LT(pos[c], i);
      }
  }
}

TEST_P(FormulaProperty, HashConsingSelfConjunction) {
  testing::Rng rng(900 + GetParam());
  FormulaArena a;
  const auto f = testing::random_formula(rng, a, {});
  const auto before = enumerate_subformulas(a, f).size();
  const auto ff = a.conjoin(f, f);
  EXPECT_EQ(enumerate_subformulas(a, ff).size(), before + 1);
  const std::size_t arena_size = a.size();
  EXPECT_EQ(a.conjoin(f, f), ff);
  EXPECT_EQ(a.size(), arena_size);
}

INSTANTIATE_TEST_SUITE_P(Random, FormulaProperty, ::testing::Range(0, 25));

}  // namespace
}  // namespace cmlkg::cml
