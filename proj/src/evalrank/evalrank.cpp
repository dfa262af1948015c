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

#include "cmlkg/evalrank/evalrank.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "cmlkg/error.hpp"
#include "cmlkg/labeling/labeling.hpp"

namespace cmlkg::evalrank {

using nlohmann::ordered_json;

std::string_view mode_name(LabelingMode mode) {
  switch (mode) {
    case LabelingMode::kNone:
      return "none";
    case LabelingMode::kQuery:
      return "query";
    case LabelingMode::kEntity:
      return "el";
  }
  return "?";
}

LabelingMode parse_mode(std::string_view text) {
  if (text == "none" || text == "era") return LabelingMode::kNone;
  if (text == "query" || text == "ql") return LabelingMode::kQuery;
  if (text == "el") return LabelingMode::kEntity;
  throw Error("unknown labeling mode '" + std::string(text) +
              "' (expected none, query or el)");
}

std::string_view combinator_name(checker::EraCombinator c) {
  switch (c) {
    case checker::EraCombinator::kAnd:
      return "and";
    case checker::EraCombinator::kNotLeft:
      return "not-left";
    case checker::EraCombinator::kOr:
      return "or";
  }
  return "?";
}

checker::EraCombinator parse_combinator(std::string_view text) {
  if (text == "and") return checker::EraCombinator::kAnd;
  if (text == "not-left") return checker::EraCombinator::kNotLeft;
  if (text == "or") return checker::EraCombinator::kOr;
  throw Error("unknown combinator '" + std::string(text) + "'");
}

namespace {

void require_relations(const TripleStore& store, const cml::FormulaArena& arena,
                       cml::FormulaId root) {
  for (const auto& r : cml::relations_of(arena, root))
    if (!store.find_relation(r))
      throw Error("formula uses relation '" + r + "' which is not in the store");
}

}  // namespace

QueryScorer::QueryScorer(const TripleStore& store, std::string_view formula,
                         ScoreOptions options)
    : store_(store), options_(std::move(options)) {
  if (options_.mode == LabelingMode::kNone) {
    if (!formula.empty()) options_.era.g2 = std::string(formula);
    g1_ = cml::parse(arena_, options_.era.g1);
    g2_ = cml::parse(arena_, options_.era.g2);
    for (auto g : {g1_, g2_}) {
      if (const auto cs = cml::constants_of(arena_, g); !cs.empty())
        throw Error("labeling mode none cannot bind constants; formula uses @" +
                    *cs.begin());
      require_relations(store_, arena_, g);
    }
    const Labeling none;
    g1_net_ = compiler::compile(arena_, g1_);
    g1_bits_ = engine::evaluate(store_, g1_net_, none, options_.engine);
    net_ = compiler::compile(arena_, g2_);
    g2_bits_ = engine::evaluate(store_, net_, none, options_.engine);
    return;
  }
  if (formula.empty()) throw Error("a formula is required for labeling mode " +
                                   std::string(mode_name(options_.mode)));
  root_ = cml::parse(arena_, formula);
  constants_ = cml::constants_of(arena_, root_);
  if (options_.mode == LabelingMode::kQuery) {
    for (const auto& c : constants_)
      if (c != kQueryConstant)
        throw Error("query labeling binds only @" + std::string(kQueryConstant) +
                    "; formula uses @" + c);
  }
  require_relations(store_, arena_, root_);
  net_ = compiler::compile(arena_, root_);
}

std::vector<std::uint8_t> QueryScorer::score(EntityId head) const {
  store_.entity_name(head);
  const std::size_t n = store_.num_entities();
  switch (options_.mode) {
    case LabelingMode::kNone: {
      std::vector<std::uint8_t> out(n);
      for (std::size_t t = 0; t < n; ++t)
        out[t] = checker::combine(options_.era.combinator, g1_bits_[head] != 0,
                                  g2_bits_[t] != 0);
      return out;
    }
    case LabelingMode::kQuery:
      ++groundings_;
      return engine::evaluate(store_, net_, query_label(head), options_.engine);
    case LabelingMode::kEntity: {
      const Labeling lab = el_label(store_, options_.degree, head);
      std::vector<std::uint8_t> out(n, 0);
      for (const Labeling& g : ground_constants(constants_, lab, store_)) {
        ++groundings_;
        const auto bits = engine::evaluate(store_, net_, g, options_.engine);
        for (std::size_t v = 0; v < n; ++v) out[v] |= bits[v];
      }
      return out;
    }
  }
  return {};
}

std::string QueryScorer::description() const {
  if (options_.mode == LabelingMode::kNone)
    return std::string(combinator_name(options_.era.combinator)) + "(" +
           cml::print(arena_, g1_) + " ; " + cml::print(arena_, g2_) + ")";
  return cml::print(arena_, root_);
}

std::vector<std::uint8_t> score_query(const TripleStore& store,
                                      std::string_view formula,
                                      const ScoreOptions& options,
                                      EntityId head) {
  return QueryScorer(store, formula, options).score(head);
}

double hit_at(std::uint64_t better, std::uint64_t tied, std::uint32_t k) {
  if (tied == 0) throw Error("tie block must contain the target");
  if (k <= better) return 0.0;
  const double f = static_cast<double>(k - better) / static_cast<double>(tied);
  return std::min(1.0, f);
}

RankEntry rank_metrics(std::span<const double> scores, EntityId target,
                       const std::set<EntityId>& known_true,
                       std::span<const std::uint32_t> k_list) {
  if (target >= scores.size())
    throw Error("target " + std::to_string(target) + " is not a candidate");
  RankEntry e;
  e.target = target;
  const double ts = scores[target];
  for (std::size_t v = 0; v < scores.size(); ++v) {
    if (v != target && known_true.count(static_cast<EntityId>(v))) continue;
    ++e.candidates;
    if (scores[v] > ts)
      ++e.better;
    else if (scores[v] == ts)
      ++e.tied;
  }
  e.expected_rank = static_cast<double>(e.better) +
                    static_cast<double>(e.tied + 1) / 2.0;
  double rr = 0;
  for (std::uint64_t p = e.better + 1; p <= e.better + e.tied; ++p)
    rr += 1.0 / static_cast<double>(p);
  e.reciprocal = rr / static_cast<double>(e.tied);
  for (std::uint32_t k : k_list) e.hits[k] = hit_at(e.better, e.tied, k);
  return e;
}

std::string serialize(const RankReport& report) {
  ordered_json j;
  j["format"] = "cmlkg-rank/1";
  j["metadata"] = ordered_json::parse(report.metadata_json);
  ordered_json agg;
  agg["queries"] = report.queries.size();
  agg["hit@1"] = report.hit1;
  agg["hit@10"] = report.hit10;
  agg["mrr"] = report.mrr;
  j["aggregate"] = agg;
  ordered_json qs = ordered_json::array();
  for (const QueryResult& q : report.queries) {
    ordered_json e;
    e["head"] = q.head;
    e["tail"] = q.tail;
    e["candidates"] = q.rank.candidates;
    e["better"] = q.rank.better;
    e["tied"] = q.rank.tied;
    e["expected_rank"] = q.rank.expected_rank;
    e["positives"] = q.positives;
    for (const auto& [k, v] : q.rank.hits) e["hit@" + std::to_string(k)] = v;
    e["rr"] = q.rank.reciprocal;
    qs.push_back(std::move(e));
  }
  j["queries"] = std::move(qs);
  return j.dump(2) + "\n";
}

std::string canonical_formula_text(synthgen::RuleKind kind, LabelingMode mode) {
  cml::FormulaArena arena;
  cml::Canonical which = cml::Canonical::kC;
  switch (kind) {
    case synthgen::RuleKind::kC:
      which = cml::Canonical::kC;
      break;
    case synthgen::RuleKind::kI:
      which = cml::Canonical::kI;
      break;
    case synthgen::RuleKind::kU:
      which = mode == LabelingMode::kEntity ? cml::Canonical::kUprime
                                            : cml::Canonical::kUquery;
      break;
  }
  return cml::print(arena, cml::canonical_formula(arena, which));
}

RankReport table2_run(const synthgen::SynthDataset& data, LabelingMode mode,
                      const Table2Options& options) {
  const TripleStore& store = data.store;
  ScoreOptions so;
  so.mode = mode;
  so.degree = options.degree;
  so.era = options.era;
  so.engine = options.engine;

  std::string formula;
  if (mode != LabelingMode::kNone)
    formula = options.formula ? *options.formula
                              : canonical_formula_text(data.config.kind, mode);
  else if (options.formula)
    formula = *options.formula;
  if (!formula.empty()) {
    cml::FormulaArena a;
    const auto root = cml::parse(a, formula);
    for (const auto& r : cml::relations_of(a, root))
      if (!store.find_relation(r))
        throw Error("formula/dataset kind mismatch: relation '" + r +
                    "' does not occur in the " +
                    std::string(synthgen::rule_name(data.config.kind)) +
                    " dataset");
  }
  const QueryScorer scorer(store, formula, so);

  std::map<EntityId, std::set<EntityId>> known;
  for (const auto& t : data.targets) known[t.head].insert(t.tail);

  RankReport report;
  report.relation = std::string(synthgen::rule_name(data.config.kind));
  report.mode = mode;
  static constexpr std::uint32_t kK[] = {1, 10};
  std::map<EntityId, std::vector<std::uint8_t>> cache;
  for (const auto& t : data.targets) {
    if (t.split != options.split) continue;
    auto it = cache.find(t.head);
    if (it == cache.end()) it = cache.emplace(t.head, scorer.score(t.head)).first;
    const auto& bits = it->second;
    std::vector<double> scores(bits.begin(), bits.end());
    QueryResult q;
    q.head = store.entity_name(t.head);
    q.tail = store.entity_name(t.tail);
    q.rank = rank_metrics(scores, t.tail, known[t.head], kK);
    q.positives = static_cast<std::uint64_t>(
        std::count_if(bits.begin(), bits.end(), [](auto b) { return b != 0; }));
    report.hit1 += q.rank.hits.at(1);
    report.hit10 += q.rank.hits.at(10);
    report.mrr += q.rank.reciprocal;
    report.queries.push_back(std::move(q));
  }
  if (!report.queries.empty()) {
    const auto n = static_cast<double>(report.queries.size());
    report.hit1 /= n;
    report.hit10 /= n;
    report.mrr /= n;
  }

  ordered_json meta;
  meta["relation"] = report.relation;
  meta["labeling"] = mode_name(mode);
  meta["degree"] = options.degree;
  meta["formula"] = scorer.description();
  meta["split"] = synthgen::split_name(options.split);
  meta["candidates"] = "all entities, filtered";
  meta["tie_policy"] = "expected rank under uniform tie-breaking";
  meta["groundings"] = scorer.groundings();
  ordered_json cfg;
  const std::string text = synthgen::format_config(data);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    const std::string line = text.substr(pos, end - pos);
    pos = end == std::string::npos ? text.size() : end + 1;
    const auto eq = line.find('=');
    if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 1);
  }
  meta["dataset"] = std::move(cfg);
  report.metadata_json = meta.dump();
  return report;
}

RankReport table2_run(const std::filesystem::path& dataset_dir,
                      LabelingMode mode, const Table2Options& options) {
  return table2_run(synthgen::load_dataset(dataset_dir), mode, options);
}

std::string render_table2(std::span<const RankReport> reports) {
  std::vector<std::string> relations;
  std::vector<LabelingMode> modes;
  std::map<std::pair<LabelingMode, std::string>, double> cell;
  for (const RankReport& r : reports) {
    if (std::find(relations.begin(), relations.end(), r.relation) == relations.end())
      relations.push_back(r.relation);
    if (std::find(modes.begin(), modes.end(), r.mode) == modes.end())
      modes.push_back(r.mode);
    cell[{r.mode, r.relation}] = r.hit1;
  }
  std::string out = "Hit@1";
  for (const auto& rel : relations) out += "\t" + rel;
  out += "\n";
  for (LabelingMode m : modes) {
    out += mode_name(m);
    for (const auto& rel : relations) {
      auto it = cell.find({m, rel});
      if (it == cell.end()) {
        out += "\t-";
        continue;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "\t%.3f", it->second);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace cmlkg::evalrank
