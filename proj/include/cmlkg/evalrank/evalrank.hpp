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
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmlkg/checker/model_check.hpp"
#include "cmlkg/cml/formula.hpp"
#include "cmlkg/compiler/compiled_net.hpp"
#include "cmlkg/engine/engine.hpp"
#include "cmlkg/kg/triple_store.hpp"
#include "cmlkg/synthgen/synthgen.hpp"

namespace cmlkg::evalrank {

// kNone scores entity pairs from two constant-free formulas (ERA style);
// kQuery binds @h to the query head; kEntity also labels high out-degree
// entities and grounds the remaining constants over them.
enum class LabelingMode : std::uint8_t { kNone, kQuery, kEntity };

std::string_view mode_name(LabelingMode mode);  // "none" | "query" | "el"
// Accepts none|era, query|ql, el.
LabelingMode parse_mode(std::string_view text);

struct EraPair {
  std::string g1 = "top";
  std::string g2 = "top";
  checker::EraCombinator combinator = checker::EraCombinator::kAnd;
};

std::string_view combinator_name(checker::EraCombinator c);  // and | not-left | or
checker::EraCombinator parse_combinator(std::string_view text);

struct ScoreOptions {
  LabelingMode mode = LabelingMode::kQuery;
  std::uint32_t degree = 1;
  EraPair era;
  engine::EngineOptions engine;
};

// Scores every entity as a tail for queries (h, ?) with a fixed formula.
// In kNone mode a non-empty formula replaces era.g2 and must be constant-free.
// In kQuery mode the only allowed constant is @h.
class QueryScorer {
 public:
  QueryScorer(const TripleStore& store, std::string_view formula,
              ScoreOptions options);

  std::vector<std::uint8_t> score(EntityId head) const;

  const ScoreOptions& options() const { return options_; }
  // Printed formula(s) actually evaluated.
  std::string description() const;
  std::uint64_t groundings() const { return groundings_; }

 private:
  const TripleStore& store_;
  ScoreOptions options_;
  cml::FormulaArena arena_;
  cml::FormulaId root_ = cml::kNoFormula;
  cml::FormulaId g1_ = cml::kNoFormula;
  cml::FormulaId g2_ = cml::kNoFormula;
  compiler::CompiledNet net_;
  compiler::CompiledNet g1_net_;
  std::vector<std::uint8_t> g1_bits_;
  std::vector<std::uint8_t> g2_bits_;
  std::set<std::string> constants_;
  mutable std::uint64_t groundings_ = 0;
};

std::vector<std::uint8_t> score_query(const TripleStore& store,
                                      std::string_view formula,
                                      const ScoreOptions& options,
                                      EntityId head);

// Filtered rank of one target under uniform random tie-breaking.
//   better = candidates scoring strictly above the target
//   tied   = candidates scoring equal to it, the target included
// The target's position is uniform on [better + 1, better + tied].
struct RankEntry {
  EntityId target = 0;
  std::uint64_t candidates = 0;
  std::uint64_t better = 0;
  std::uint64_t tied = 0;
  double expected_rank = 0;
  double reciprocal = 0;  // expected reciprocal rank
  std::map<std::uint32_t, double> hits;
};

double hit_at(std::uint64_t better, std::uint64_t tied, std::uint32_t k);

RankEntry rank_metrics(std::span<const double> scores, EntityId target,
                       const std::set<EntityId>& known_true,
                       std::span<const std::uint32_t> k_list);

struct QueryResult {
  std::string head;
  std::string tail;
  RankEntry rank;
  std::uint64_t positives = 0;  // entities with a nonzero score
};

struct RankReport {
  std::string metadata_json;  // JSON object, fixed key order
  std::vector<QueryResult> queries;
  double hit1 = 0;
  double hit10 = 0;
  double mrr = 0;

  std::string relation;
  LabelingMode mode = LabelingMode::kQuery;
};

std::string serialize(const RankReport& report);

struct Table2Options {
  EraPair era;
  // Replaces the canonical formula for the dataset's relation.
  std::optional<std::string> formula;
  std::uint32_t degree = 1;
  synthgen::Split split = synthgen::Split::kTest;
  engine::EngineOptions engine;
};

// Canonical formula text for a relation under a mode (query mode on U drops
// the fork constant, which query labeling cannot bind).
std::string canonical_formula_text(synthgen::RuleKind kind, LabelingMode mode);

RankReport table2_run(const synthgen::SynthDataset& data, LabelingMode mode,
                      const Table2Options& options = {});
RankReport table2_run(const std::filesystem::path& dataset_dir,
                      LabelingMode mode, const Table2Options& options = {});

// Rows are modes, columns relations, cells hit@1.
std::string render_table2(std::span<const RankReport> reports);

}  // namespace cmlkg::evalrank
