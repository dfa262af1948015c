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

#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cmlkg::cml {

using FormulaId = std::uint32_t;
inline constexpr FormulaId kNoFormula = std::numeric_limits<FormulaId>::max();

enum class NodeKind : std::uint8_t { kTop, kPred, kConst, kNot, kAnd, kDiamond };

// One arena node. Only the fields relevant to `kind` are set:
//   kPred / kConst : name
//   kNot           : left
//   kAnd           : left, right
//   kDiamond       : count (>= 1), name (relation), left (body)
// Diamond(n, R, phi) holds at x iff at least n heads y of (y, R, x) satisfy phi.
struct FormulaNode {
  NodeKind kind = NodeKind::kTop;
  std::uint32_t count = 0;
  FormulaId left = kNoFormula;
  FormulaId right = kNoFormula;
  std::string name;

  bool operator==(const FormulaNode&) const = default;
};

struct FormulaNodeHash {
  std::size_t operator()(const FormulaNode& n) const noexcept;
};

// Hash-consed, append-only formula store. Structurally equal formulas share
// one id and children always have smaller ids than their parents.
class FormulaArena {
 public:
  FormulaId top();
  FormulaId pred(std::string_view name);
  FormulaId constant(std::string_view name);
  FormulaId negate(FormulaId sub);
  FormulaId conjoin(FormulaId left, FormulaId right);
  // Sugar: !(!left & !right).
  FormulaId disjoin(FormulaId left, FormulaId right);
  FormulaId diamond(std::uint32_t count, std::string_view relation,
                    FormulaId body);

  const FormulaNode& node(FormulaId id) const;
  std::size_t size() const { return nodes_.size(); }
  bool valid(FormulaId id) const { return id < nodes_.size(); }

 private:
  FormulaId intern(FormulaNode node);

  std::vector<FormulaNode> nodes_;
  std::unordered_map<FormulaNode, FormulaId, FormulaNodeHash> index_;
};

// Distinct subformulas of root in topological order (children first, root
// last). Ties are broken by arena index, which is itself topological.
std::vector<FormulaId> enumerate_subformulas(const FormulaArena& arena,
                                             FormulaId root);

std::set<std::string> constants_of(const FormulaArena& arena, FormulaId root);
std::set<std::string> predicates_of(const FormulaArena& arena, FormulaId root);
std::set<std::string> relations_of(const FormulaArena& arena, FormulaId root);

// Maximum nesting of diamonds.
std::uint32_t diamond_depth(const FormulaArena& arena, FormulaId root);
bool negation_free(const FormulaArena& arena, FormulaId root);

// Grammar:
//   formula := disj
//   disj    := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := '!' unary | '<' NAME '>' '=' INT unary | atom
//   atom    := 'top' | 'P(' NAME ')' | '@' NAME | '(' formula ')'
// Special characters inside names are written with a backslash escape.
// Throws SyntaxError.
FormulaId parse(FormulaArena& arena, std::string_view text);

// Deterministic printer emitting the grammar above with minimal parentheses.
std::string print(const FormulaArena& arena, FormulaId id);

// The rule formulas for the synthetic relations.
enum class Canonical {
  kC,       // <R3>=1 <R2>=1 <R1>=1 @h
  kI,       // <R3>=1 (<R4>=2 top & <R2>=1 <R1>=1 @h)
  kUprime,  // both branches of the fork-join anchored at @c
  kUquery,  // U' without the @c conjunct; the best query-labeled analogue
};

FormulaId canonical_formula(FormulaArena& arena, Canonical kind);

}  // namespace cmlkg::cml
