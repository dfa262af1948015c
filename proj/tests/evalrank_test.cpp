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

#include <algorithm>
#include <json.hpp>

#include "cmlkg/error.hpp"
#include "cmlkg/evalrank/evalrank.hpp"
#include "support/random_instances.hpp"

namespace cmlkg::evalrank {
namespace {

constexpr std::uint32_t kK[] = {1, 3, 10};

// Sort the surviving candidates by score and read off the block of
// positions that share the target's score.
struct Oracle {
  std::map<std::uint32_t, double> hits;
  double rr = 0;
};

Oracle sort_and_scan(const std::vector<double>& scores, EntityId target,
                     const std::set<EntityId>& known) {
  std::vector<std::pair<double, EntityId>> cand;
  for (EntityId v = 0; v < scores.size(); ++v)
    if (v == target || !known.count(v)) cand.emplace_back(scores[v], v);
  std::sort(cand.begin(), cand.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::size_t first = cand.size(), last = 0;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (cand[i].first == scores[target]) {
      first = std::min(first, i + 1);
      last = i + 1;
    }
  Oracle o;
  const double block = static_cast<double>(last - first + 1);
  for (std::uint32_t k : kK) {
    std::size_t inside = 0;
    for (std::size_t p = first; p <= last; ++p) inside += p <= k;
    o.hits[k] = static_cast<double>(inside) / block;
  }
  for (std::size_t p = first; p <= last; ++p) o.rr += 1.0 / static_cast<double>(p) / block;
  return o;
}

TEST(RankMetrics, UniqueTop) {
  const std::vector<double> s = {0, 1, 0, 0};
  const auto e = rank_metrics(s, 1, {}, kK);
  EXPECT_EQ(e.better, 0u);
  EXPECT_EQ(e.tied, 1u);
  EXPECT_DOUBLE_EQ(e.expected_rank, 1.0);
  EXPECT_DOUBLE_EQ(e.hits.at(1), 1.0);
  EXPECT_DOUBLE_EQ(e.reciprocal, 1.0);
}

TEST(RankMetrics, TwoWayTieAtTop) {
  const std::vector<double> s = {1, 1, 0, 0};
  const auto e = rank_metrics(s, 0, {}, kK);
  EXPECT_DOUBLE_EQ(e.hits.at(1), 0.5);
  EXPECT_DOUBLE_EQ(e.hits.at(3), 1.0);
  EXPECT_DOUBLE_EQ(e.expected_rank, 1.5);
  EXPECT_DOUBLE_EQ(e.reciprocal, 0.75);
}

TEST(RankMetrics, AllZero) {
  const std::vector<double> s(40, 0.0);
  const auto e = rank_metrics(s, 17, {}, kK);
  EXPECT_DOUBLE_EQ(e.hits.at(1), 1.0 / 40);
  EXPECT_DOUBLE_EQ(e.hits.at(10), 10.0 / 40);
}

TEST(RankMetrics, FilteredTailsRemoved) {
  const std::vector<double> s = {1, 1, 1, 0};
  const auto e = rank_metrics(s, 0, {0, 1, 2}, kK);
  EXPECT_EQ(e.candidates, 2u);
  EXPECT_DOUBLE_EQ(e.hits.at(1), 1.0);
  EXPECT_THROW(rank_metrics(s, 9, {}, kK), Error);
}

TEST(RankMetrics, MatchesSortAndScan) {
  testing::Rng rng(17);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = rng.between(1, 50);
    std::vector<double> s(n);
    for (auto& x : s) x = static_cast<double>(rng.below(3));
    const auto target = static_cast<EntityId>(rng.below(n));
    std::set<EntityId> known;
    for (EntityId v = 0; v < n; ++v)
      if (rng.coin(0.2)) known.insert(v);
    const auto e = rank_metrics(s, target, known, kK);
    const auto o = sort_and_scan(s, target, known);
    for (std::uint32_t k : kK) EXPECT_NEAR(e.hits.at(k), o.hits.at(k), 1e-12);
    EXPECT_NEAR(e.reciprocal, o.rr, 1e-12);
    EXPECT_LE(e.hits.at(1), e.hits.at(10));
    EXPECT_LE(e.reciprocal, 1.0);
  }
}

TEST(ScoreQuery, QueryModeChain) {
  const auto s = load_store("h\tR1\tz1\nz1\tR2\tz2\nz2\tR3\tt\n");
  ScoreOptions o;
  o.mode = LabelingMode::kQuery;
  const auto bits = score_query(s, "<R3>=1 <R2>=1 <R1>=1 @h", o, s.entity_id("h"));
  for (EntityId v = 0; v < s.num_entities(); ++v)
    EXPECT_EQ(bits[v], v == s.entity_id("t") ? 1 : 0);
}

TEST(ScoreQuery, EraModeTiesIsomorphicChains) {
  const auto s = load_store(
      "h\tR1\ta1\na1\tR2\ta2\na2\tR3\tt\n"
      "g\tR1\tb1\nb1\tR2\tb2\nb2\tR3\tu\n");
  const auto h = s.entity_id("h");
  for (const char* g2 : {"top", "<R3>=1 top", "<R3>=1 <R2>=1 <R1>=1 top", "!<R1>=1 top"}) {
    for (auto comb : {checker::EraCombinator::kAnd, checker::EraCombinator::kOr,
                      checker::EraCombinator::kNotLeft}) {
      ScoreOptions o;
      o.mode = LabelingMode::kNone;
      o.era = {"!<R1>=1 top", g2, comb};
      const auto bits = score_query(s, "", o, h);
      EXPECT_EQ(bits[s.entity_id("t")], bits[s.entity_id("u")]) << g2;
    }
  }
  ScoreOptions q;
  const auto ql = score_query(s, "<R3>=1 <R2>=1 <R1>=1 @h", q, h);
  EXPECT_NE(ql[s.entity_id("t")], ql[s.entity_id("u")]);
}

TEST(ScoreQuery, EntityModeSeparatesDecoy) {
  const auto s = load_store(
      "h\tR1\tc\nc\tR2\tz2\nz2\tR4\tt\nc\tR3\tz3\nz3\tR5\tt\n"
      "h\tR1\tc1\nc1\tR2\ty2\ny2\tR4\ttd\nh\tR1\tc2\nc2\tR3\ty3\ny3\tR5\ttd\n");
  ScoreOptions el;
  el.mode = LabelingMode::kEntity;
  el.degree = 1;
  const auto h = s.entity_id("h");
  cml::FormulaArena a;
  const auto uprime = cml::print(a, cml::canonical_formula(a, cml::Canonical::kUprime));
  const auto bits = score_query(s, uprime, el, h);
  EXPECT_EQ(bits[s.entity_id("t")], 1);
  EXPECT_EQ(bits[s.entity_id("td")], 0);

  ScoreOptions ql;
  const auto uq = cml::print(a, cml::canonical_formula(a, cml::Canonical::kUquery));
  const auto qbits = score_query(s, uq, ql, h);
  EXPECT_EQ(qbits[s.entity_id("t")], 1);
  EXPECT_EQ(qbits[s.entity_id("td")], 1);
}

TEST(ScoreQuery, ModeConstantChecks) {
  const auto s = load_store("h\tR1\tz\n");
  ScoreOptions none;
  none.mode = LabelingMode::kNone;
  EXPECT_THROW(score_query(s, "<R1>=1 @h", none, 0), Error);
  ScoreOptions q;
  EXPECT_THROW(score_query(s, "<R1>=1 @c", q, 0), Error);
  EXPECT_THROW(score_query(s, "<R7>=1 @h", q, 0), Error);
  EXPECT_THROW(parse_mode("bogus"), Error);
  EXPECT_EQ(parse_mode("ql"), LabelingMode::kQuery);
  EXPECT_EQ(parse_mode("era"), LabelingMode::kNone);
}

synthgen::SynthDataset dataset(synthgen::RuleKind kind, bool decoys, std::uint64_t seed) {
  synthgen::SynthConfig cfg;
  cfg.kind = kind;
  cfg.instances = 30;
  cfg.decoys = decoys;
  cfg.seed = seed;
  return synthgen::gen_dataset(cfg);
}

TEST(Table2, QueryLabelingCapturesChainAndInDegree) {
  for (auto kind : {synthgen::RuleKind::kC, synthgen::RuleKind::kI}) {
    const auto r = table2_run(dataset(kind, false, 1), LabelingMode::kQuery);
    EXPECT_EQ(r.queries.size(), 3u);
    EXPECT_DOUBLE_EQ(r.hit1, 1.0);
    EXPECT_DOUBLE_EQ(r.mrr, 1.0);
  }
}

TEST(Table2, DecoysSplitQueryAndEntityLabeling) {
  const auto d = dataset(synthgen::RuleKind::kU, true, 2);
  const auto ql = table2_run(d, LabelingMode::kQuery);
  const auto el = table2_run(d, LabelingMode::kEntity);
  EXPECT_DOUBLE_EQ(el.hit1, 1.0);
  EXPECT_LE(ql.hit1, 0.5 + 1e-12);
  EXPECT_GE(el.hit1, ql.hit1);
  for (const auto& q : ql.queries) EXPECT_GE(q.rank.tied, 2u) << q.head;
}

TEST(Table2, QueryBeatsEraForSeveralPairs) {
  for (auto kind : {synthgen::RuleKind::kC, synthgen::RuleKind::kI, synthgen::RuleKind::kU}) {
    const auto d = dataset(kind, false, 4);
    const auto ql = table2_run(d, LabelingMode::kQuery);
    for (const char* g2 : {"top", "<R3>=1 top", "<R3>=1 <R2>=1 top", "!<R1>=1 top"}) {
      Table2Options o;
      o.era = {"<R1>=1 top", g2, checker::EraCombinator::kOr};
      if (kind == synthgen::RuleKind::kU) o.era.g1 = "top";
      const auto era = table2_run(d, LabelingMode::kNone, o);
      EXPECT_GE(ql.hit1, era.hit1) << g2;
      EXPECT_LE(era.hit1, era.hit10);
      EXPECT_LE(era.hit10, 1.0);
      EXPECT_LE(era.mrr, 1.0);
    }
  }
}

TEST(Table2, FormulaDatasetMismatch) {
  const auto d = dataset(synthgen::RuleKind::kC, false, 0);
  Table2Options o;
  o.formula = "<R5>=1 @h";
  EXPECT_THROW(table2_run(d, LabelingMode::kQuery, o), Error);
}

TEST(Report, SerializeAndRender) {
  const auto d = dataset(synthgen::RuleKind::kC, false, 5);
  const auto r = table2_run(d, LabelingMode::kQuery);
  const auto text = serialize(r);
  EXPECT_EQ(serialize(table2_run(d, LabelingMode::kQuery)), text);
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"format", "metadata", "aggregate", "queries"}));
  EXPECT_EQ(j["metadata"]["labeling"], "query");
  EXPECT_EQ(j["metadata"]["dataset"]["seed"], "5");
  EXPECT_EQ(j["aggregate"]["hit@1"], 1.0);

  const std::vector<RankReport> reps = {r, table2_run(d, LabelingMode::kNone)};
  const auto table = render_table2(reps);
  EXPECT_EQ(table.substr(0, table.find('\n')), "Hit@1\tC");
  EXPECT_NE(table.find("query\t1.000"), std::string::npos);
}

}  // namespace
}  // namespace cmlkg::evalrank
