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

#include "cmlkg/synthgen/rules.hpp"

#include <algorithm>
#include <string>

#include "cmlkg/error.hpp"

namespace cmlkg::synthgen {

std::string_view rule_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::kC:
      return "C";
    case RuleKind::kI:
      return "I";
    case RuleKind::kU:
      return "U";
  }
  return "?";
}

RuleKind parse_rule_kind(std::string_view name) {
  if (name == "C") return RuleKind::kC;
  if (name == "I") return RuleKind::kI;
  if (name == "U") return RuleKind::kU;
  throw Error("unknown relation kind '" + std::string(name) +
              "' (expected C, I or U)");
}

std::size_t rule_vocabulary(RuleKind kind) {
  switch (kind) {
    case RuleKind::kC:
      return 3;
    case RuleKind::kI:
      return 4;
    case RuleKind::kU:
      return 5;
  }
  return 0;
}

RuleGraph::RuleGraph(std::size_t entities) { resize(entities); }

void RuleGraph::resize(std::size_t entities) {
  for (auto& adj : out_) adj.resize(entities);
  for (auto& adj : in_) adj.resize(entities);
}

bool RuleGraph::add(EntityId head, std::size_t relation, EntityId tail) {
  auto& out = out_.at(relation).at(head);
  const auto it = std::lower_bound(out.begin(), out.end(), tail);
  if (it != out.end() && *it == tail) return false;
  out.insert(it, tail);
  auto& in = in_.at(relation).at(tail);
  in.insert(std::lower_bound(in.begin(), in.end(), head), head);
  return true;
}

void RuleGraph::remove(EntityId head, std::size_t relation, EntityId tail) {
  auto& out = out_.at(relation).at(head);
  out.erase(std::remove(out.begin(), out.end(), tail), out.end());
  auto& in = in_.at(relation).at(tail);
  in.erase(std::remove(in.begin(), in.end(), head), in.end());
}

bool RuleGraph::contains(EntityId head, std::size_t relation,
                         EntityId tail) const {
  const auto& out = out_.at(relation).at(head);
  return std::binary_search(out.begin(), out.end(), tail);
}

std::set<EntityId> RuleGraph::tails(RuleKind kind, EntityId head) const {
  std::set<EntityId> out;
  const auto& r1 = out_[0];
  const auto& r2 = out_[1];
  const auto& r3 = out_[2];
  switch (kind) {
    case RuleKind::kC:
    case RuleKind::kI:
      for (EntityId z1 : r1[head])
        for (EntityId z2 : r2[z1]) {
          if (kind == RuleKind::kI && in_[3][z2].size() < 2) continue;
          for (EntityId x : r3[z2]) out.insert(x);
        }
      break;
    case RuleKind::kU:
      for (EntityId c : r1[head]) {
        std::set<EntityId> left;
        for (EntityId z2 : r2[c])
          for (EntityId x : out_[3][z2]) left.insert(x);
        for (EntityId z3 : r3[c])
          for (EntityId x : out_[4][z3])
            if (left.contains(x)) out.insert(x);
      }
      break;
  }
  return out;
}

std::set<Pair> RuleGraph::pairs(RuleKind kind) const {
  std::set<Pair> out;
  for (EntityId h = 0; h < entities(); ++h) {
    if (out_[0][h].empty()) continue;
    for (EntityId t : tails(kind, h)) out.emplace(h, t);
  }
  return out;
}

std::size_t RuleGraph::count_pairs(RuleKind kind) const {
  std::size_t total = 0;
  for (EntityId h = 0; h < entities(); ++h)
    if (!out_[0][h].empty()) total += tails(kind, h).size();
  return total;
}

RuleGraph rule_graph(const TripleStore& store) {
  RuleGraph g(store.num_entities());
  std::vector<int> index(store.num_relations(), -1);
  for (std::size_t i = 0; i < kRuleRelations; ++i)
    if (auto r = store.find_relation(kRelationNames[i]))
      index[*r] = static_cast<int>(i);
  for (const Triple& t : store.triples())
    if (index[t.relation] >= 0)
      g.add(t.head, static_cast<std::size_t>(index[t.relation]), t.tail);
  return g;
}

std::set<Pair> rule_pairs(const TripleStore& store, RuleKind kind) {
  return rule_graph(store).pairs(kind);
}

}  // namespace cmlkg::synthgen
