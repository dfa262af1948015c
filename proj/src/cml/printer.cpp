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

#include <string>

#include "cmlkg/cml/formula.hpp"
#include "name_chars.hpp"

namespace cmlkg::cml {

namespace {

void put_name(std::string& out, const std::string& name) {
  for (char c : name) {
    if (is_escapable(c)) out += '\\';
    out += c;
  }
}

// `operand` is true when the node appears as the operand of a prefix
// operator or as the right child of a conjunction; conjunctions there need
// parentheses to reparse into the same tree.
void print_into(const FormulaArena& arena, FormulaId id, bool operand,
                std::string& out) {
  const FormulaNode& n = arena.node(id);
  switch (n.kind) {
    case NodeKind::kTop:
      out += "top";
      return;
    case NodeKind::kPred:
      out += "P(";
      put_name(out, n.name);
      out += ')';
      return;
    case NodeKind::kConst:
      out += '@';
      put_name(out, n.name);
      return;
    case NodeKind::kNot:
      out += '!';
      print_into(arena, n.left, true, out);
      return;
    case NodeKind::kDiamond:
      out += '<';
      put_name(out, n.name);
      out += ">=";
      out += std::to_string(n.count);
      out += ' ';
      print_into(arena, n.left, true, out);
      return;
    case NodeKind::kAnd:
      if (operand) out += '(';
      print_into(arena, n.left, false, out);
      out += " & ";
      print_into(arena, n.right, true, out);
      if (operand) out += ')';
      return;
  }
}

}  // namespace

std::string print(const FormulaArena& arena, FormulaId id) {
  std::string out;
  print_into(arena, id, false, out);
  return out;
}

}  // namespace cmlkg::cml
