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

#include "cmlkg/checker/model_check.hpp"

#include "cmlkg/error.hpp"

namespace cmlkg::checker {

using cml::FormulaId;
using cml::NodeKind;

TruthTable model_check(const TripleStore& store, const cml::FormulaArena& arena,
                       FormulaId root, const Labeling& binding,
                       CheckStats* stats) {
  const std::size_t n = store.num_entities();
  TruthTable table;
  table.order = cml::enumerate_subformulas(arena, root);
  table.rows.reserve(table.order.size());
  std::uint64_t ops = 0;

  for (FormulaId id : table.order) {
    const cml::FormulaNode& node = arena.node(id);
    std::vector<std::uint8_t> row(n, 0);
    switch (node.kind) {
      case NodeKind::kTop:
        std::fill(row.begin(), row.end(), 1);
        ops += n;
        break;
      case NodeKind::kPred:
        for (EntityId v : store.predicate_extension(node.name)) row[v] = 1;
        ops += n;
        break;
      case NodeKind::kConst:
        row[binding.resolve(node.name)] = 1;
        ops += n;
        break;
      case NodeKind::kNot: {
        const auto& sub = table.row(node.left);
        for (std::size_t v = 0; v < n; ++v) row[v] = sub[v] ? 0 : 1;
        ops += n;
        break;
      }
      case NodeKind::kAnd: {
        const auto& a = table.row(node.left);
        const auto& b = table.row(node.right);
        for (std::size_t v = 0; v < n; ++v) row[v] = a[v] & b[v];
        ops += n;
        break;
      }
      case NodeKind::kDiamond: {
        const auto rel = store.find_relation(node.name);
        if (!rel)
          throw Error("formula uses unknown relation '" + node.name + "'");
        const auto& sub = table.row(node.left);
        for (EntityId v = 0; v < n; ++v) {
          std::uint32_t witnesses = 0;
          const auto heads = store.neighbors(v, *rel);
          for (EntityId u : heads) witnesses += sub[u];
          row[v] = witnesses >= node.count ? 1 : 0;
          ops += 1 + heads.size();
        }
        break;
      }
    }
    table.position.emplace(id, table.rows.size());
    table.rows.push_back(std::move(row));
  }
  if (stats) stats->bit_ops += ops;
  return table;
}

bool combine(EraCombinator combinator, bool head_value, bool tail_value) {
  switch (combinator) {
    case EraCombinator::kAnd:
      return head_value && tail_value;
    case EraCombinator::kNotLeft:
      return !head_value;
    case EraCombinator::kOr:
      return head_value || tail_value;
  }
  return false;
}

bool check_sentence_pair(const TripleStore& store,
                         const cml::FormulaArena& arena, FormulaId g1,
                         FormulaId g2, EraCombinator combinator, EntityId h,
                         EntityId t) {
  for (FormulaId g : {g1, g2}) {
    if (const auto cs = cml::constants_of(arena, g); !cs.empty())
      throw Error("entity-pair scorers take constant-free formulas; found @" +
                  *cs.begin());
  }
  store.entity_name(h);
  store.entity_name(t);
  const Labeling none;
  const bool head_value = model_check(store, arena, g1, none).root_row()[h];
  const bool tail_value = model_check(store, arena, g2, none).root_row()[t];
  return combine(combinator, head_value, tail_value);
}

}  // namespace cmlkg::checker
