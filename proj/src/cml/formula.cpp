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

#include "cmlkg/cml/formula.hpp"

#include <algorithm>
#include <functional>

#include "cmlkg/error.hpp"

namespace cmlkg::cml {

std::size_t FormulaNodeHash::operator()(const FormulaNode& n) const noexcept {
  std::size_t h = std::hash<std::string>{}(n.name);
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(n.kind));
  mix(n.count);
  mix(n.left);
  mix(n.right);
  return h;
}

FormulaId FormulaArena::intern(FormulaNode node) {
  if (auto it = index_.find(node); it != index_.end()) return it->second;
  const auto id = static_cast<FormulaId>(nodes_.size());
  nodes_.push_back(node);
  index_.emplace(std::move(node), id);
  return id;
}

FormulaId FormulaArena::top() { return intern({.kind = NodeKind::kTop, .name = {}}); }

FormulaId FormulaArena::pred(std::string_view name) {
  if (name.empty()) throw Error("empty predicate name");
  return intern({.kind = NodeKind::kPred, .name = std::string(name)});
}

FormulaId FormulaArena::constant(std::string_view name) {
  if (name.empty()) throw Error("empty constant name");
  return intern({.kind = NodeKind::kConst, .name = std::string(name)});
}

FormulaId FormulaArena::negate(FormulaId sub) {
  node(sub);
  return intern({.kind = NodeKind::kNot, .left = sub, .name = {}});
}

FormulaId FormulaArena::conjoin(FormulaId left, FormulaId right) {
  node(left);
  node(right);
  return intern({.kind = NodeKind::kAnd, .left = left, .right = right, .name = {}});
}

FormulaId FormulaArena::disjoin(FormulaId left, FormulaId right) {
  return negate(conjoin(negate(left), negate(right)));
}

FormulaId FormulaArena::diamond(std::uint32_t count, std::string_view relation,
                                FormulaId body) {
  if (count < 1) throw Error("diamond count must be >= 1");
  if (relation.empty()) throw Error("empty relation name");
  node(body);
  return intern({.kind = NodeKind::kDiamond,
                 .count = count,
                 .left = body,
                 .name = std::string(relation)});
}

const FormulaNode& FormulaArena::node(FormulaId id) const {
  if (id >= nodes_.size())
    throw Error("invalid formula id " + std::to_string(id));
  return nodes_[id];
}

namespace {

// Visits every distinct subformula once.
template <typename Fn>
void visit(const FormulaArena& arena, FormulaId root, Fn&& fn) {
  std::vector<char> seen(arena.size(), 0);
  std::vector<FormulaId> stack{root};
  arena.node(root);
  while (!stack.empty()) {
    const FormulaId id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = 1;
    const FormulaNode& n = arena.node(id);
    fn(id, n);
    if (n.left != kNoFormula) stack.push_back(n.left);
    if (n.right != kNoFormula) stack.push_back(n.right);
  }
}

}  // namespace

std::vector<FormulaId> enumerate_subformulas(const FormulaArena& arena,
                                             FormulaId root) {
  std::vector<FormulaId> out;
  visit(arena, root, [&](FormulaId id, const FormulaNode&) { out.push_back(id); });
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> constants_of(const FormulaArena& arena, FormulaId root) {
  std::set<std::string> out;
  visit(arena, root, [&](FormulaId, const FormulaNode& n) {
    if (n.kind == NodeKind::kConst) out.insert(n.name);
  });
  return out;
}

std::set<std::string> predicates_of(const FormulaArena& arena, FormulaId root) {
  std::set<std::string> out;
  visit(arena, root, [&](FormulaId, const FormulaNode& n) {
    if (n.kind == NodeKind::kPred) out.insert(n.name);
  });
  return out;
}

std::set<std::string> relations_of(const FormulaArena& arena, FormulaId root) {
  std::set<std::string> out;
  visit(arena, root, [&](FormulaId, const FormulaNode& n) {
    if (n.kind == NodeKind::kDiamond) out.insert(n.name);
  });
  return out;
}

std::uint32_t diamond_depth(const FormulaArena& arena, FormulaId root) {
  const auto order = enumerate_subformulas(arena, root);
  std::unordered_map<FormulaId, std::uint32_t> depth;
  for (FormulaId id : order) {
    const FormulaNode& n = arena.node(id);
    std::uint32_t d = 0;
    switch (n.kind) {
      case NodeKind::kNot:
        d = depth.at(n.left);
        break;
      case NodeKind::kAnd:
        d = std::max(depth.at(n.left), depth.at(n.right));
        break;
      case NodeKind::kDiamond:
        d = depth.at(n.left) + 1;
        break;
      default:
        break;
    }
    depth[id] = d;
  }
  return depth.at(root);
}

bool negation_free(const FormulaArena& arena, FormulaId root) {
  bool free = true;
  visit(arena, root, [&](FormulaId, const FormulaNode& n) {
    if (n.kind == NodeKind::kNot) free = false;
  });
  return free;
}

}  // namespace cmlkg::cml
