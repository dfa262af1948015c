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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmlkg/bisim/bisim.hpp"
#include "cmlkg/checker/model_check.hpp"
#include "cmlkg/error.hpp"
#include "cmlkg/synthgen/synthgen.hpp"

namespace cmlkg::synthgen {
namespace {

namespace fs = std::filesystem;

SynthDataset make(RuleKind kind, std::uint32_t n, std::optional<std::uint64_t> noise,
                  std::uint64_t seed = 0, bool decoys = false) {
  SynthConfig cfg;
  cfg.kind = kind;
  cfg.instances = n;
  cfg.noise = noise;
  cfg.seed = seed;
  cfg.decoys = decoys;
  return gen_dataset(cfg);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cmlkg_synth_" + name);
  fs::remove_all(dir);
  return dir;
}

cml::Canonical formula_for(RuleKind k) {
  switch (k) {
    case RuleKind::kC:
      return cml::Canonical::kC;
    case RuleKind::kI:
      return cml::Canonical::kI;
    case RuleKind::kU:
      return cml::Canonical::kUprime;
  }
  return cml::Canonical::kC;
}

// Tails x with rule(h, x), found by model checking the rule formula with @h
// on h and, for U, @c on every possible fork.
std::set<EntityId> checked_tails(const TripleStore& s, RuleKind kind, EntityId h) {
  cml::FormulaArena a;
  const auto f = cml::canonical_formula(a, formula_for(kind));
  std::set<EntityId> out;
  std::vector<EntityId> forks = {0};
  if (kind == RuleKind::kU) {
    forks.clear();
    for (EntityId c = 0; c < s.num_entities(); ++c) forks.push_back(c);
  }
  for (EntityId c : forks) {
    Labeling lab = query_label(h);
    if (kind == RuleKind::kU) lab.bind("c", c, LabelOrigin::kManual);
    const auto row = checker::model_check(s, a, f, lab).root_row();
    for (EntityId v = 0; v < row.size(); ++v)
      if (row[v]) out.insert(v);
  }
  return out;
}

TEST(Generate, ChainInstance) {
  const auto d = make(RuleKind::kC, 1, 0);
  EXPECT_EQ(d.store.num_triples(), 3u);
  ASSERT_EQ(d.targets.size(), 1u);
  EXPECT_EQ(d.store.entity_name(d.targets[0].head), "C0_h");
  EXPECT_EQ(d.store.entity_name(d.targets[0].tail), "C0_t");
}

TEST(Generate, InDegreeInstance) {
  const auto d = make(RuleKind::kI, 1, 0);
  EXPECT_EQ(d.store.num_triples(), 5u);
  ASSERT_EQ(d.targets.size(), 1u);
  EXPECT_EQ(checked_tails(d.store, RuleKind::kI, d.targets[0].head),
            std::set<EntityId>{d.targets[0].tail});
}

TEST(Generate, ForkJoinWithDecoy) {
  const auto d = make(RuleKind::kU, 1, 0, 0, true);
  // 5 rule triples plus two 3-edge decoy branches.
  EXPECT_EQ(d.store.num_triples(), 11u);
  ASSERT_EQ(d.targets.size(), 1u);
  const auto h = d.targets[0].head;
  const auto t = d.targets[0].tail;
  const auto td = d.store.entity_id("U0_td");
  const auto colors = bisim::color_refine(d.store, query_label(h), 10);
  for (std::size_t r = 0; r <= 10; ++r) EXPECT_TRUE(colors.same(r, t, td));
  EXPECT_EQ(checked_tails(d.store, RuleKind::kU, h), std::set<EntityId>{t});
}

TEST(Generate, DefaultNoiseIsTwiceSupport) {
  const auto d = make(RuleKind::kI, 10, std::nullopt);
  EXPECT_EQ(d.noise_added, 100u);
  EXPECT_EQ(d.store.num_triples(), 150u);
}

TEST(Generate, SplitSizes) {
  auto count = [](const SynthDataset& d, Split s) {
    return std::count_if(d.targets.begin(), d.targets.end(),
                         [&](const Target& t) { return t.split == s; });
  };
  const auto d = make(RuleKind::kC, 100, 0);
  EXPECT_EQ(count(d, Split::kTrain), 80);
  EXPECT_EQ(count(d, Split::kValid), 10);
  EXPECT_EQ(count(d, Split::kTest), 10);
  const auto e = make(RuleKind::kC, 7, 0);
  EXPECT_EQ(count(e, Split::kTrain), 5);
  EXPECT_EQ(count(e, Split::kValid), 0);
  EXPECT_EQ(count(e, Split::kTest), 2);
}

TEST(Generate, ConfigErrors) {
  SynthConfig cfg;
  cfg.split = {0.5, 0.5, 0.5};
  EXPECT_THROW(gen_dataset(cfg), Error);
  SynthConfig decoy;
  decoy.decoys = true;
  EXPECT_THROW(gen_dataset(decoy), Error);
  EXPECT_THROW(make(RuleKind::kC, 1, 100), Error);
  EXPECT_THROW(parse_rule_kind("X"), Error);
}

TEST(Generate, SeedDeterminism) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  write_dataset(make(RuleKind::kU, 20, std::nullopt, 7, true), a);
  write_dataset(make(RuleKind::kU, 20, std::nullopt, 7, true), b);
  for (const char* f : {"triples.tsv", "targets_train.tsv", "targets_valid.tsv",
                        "targets_test.tsv", "ground.tsv", "config.txt"}) {
    EXPECT_FALSE(slurp(a / f).empty()) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  const auto c = scratch("det_c");
  write_dataset(make(RuleKind::kU, 20, std::nullopt, 8, true), c);
  EXPECT_NE(slurp(a / "triples.tsv"), slurp(c / "triples.tsv"));
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST(Generate, WriteLoadRoundTrip) {
  const auto dir = scratch("roundtrip");
  const auto d = make(RuleKind::kI, 12, std::nullopt, 3);
  write_dataset(d, dir);
  const auto back = load_dataset(dir);
  EXPECT_EQ(back.config.kind, RuleKind::kI);
  EXPECT_EQ(back.config.seed, 3u);
  EXPECT_EQ(back.store.serialize_triples(), load_store(d.store.serialize_triples()).serialize_triples());
  ASSERT_EQ(back.targets.size(), d.targets.size());
  std::multiset<std::tuple<std::string, std::string, int>> x, y;
  for (const auto& t : d.targets)
    x.emplace(d.store.entity_name(t.head), d.store.entity_name(t.tail), static_cast<int>(t.split));
  for (const auto& t : back.targets)
    y.emplace(back.store.entity_name(t.head), back.store.entity_name(t.tail), static_cast<int>(t.split));
  EXPECT_EQ(x, y);
  EXPECT_EQ(format_config(back), format_config(d));
  fs::remove_all(dir);
  EXPECT_THROW(load_dataset(dir), Error);
}

struct Variant {
  RuleKind kind;
  bool decoys;
};

class SynthProperty : public ::testing::TestWithParam<std::tuple<Variant, int>> {};

TEST_P(SynthProperty, GroundTruthAndNoiseNeutrality) {
  const auto [variant, seed] = GetParam();
  const auto [kind, decoys] = variant;
  const auto d = make(kind, 6, std::nullopt, static_cast<std::uint64_t>(seed), decoys);
  std::map<EntityId, std::set<EntityId>> listed;
  for (const auto& t : d.targets) listed[t.head].insert(t.tail);
  // Every entity as a head: exactly the listed tails, nothing else.
  for (EntityId h = 0; h < d.store.num_entities(); ++h) {
    const auto it = listed.find(h);
    const std::set<EntityId> expect = it == listed.end() ? std::set<EntityId>{} : it->second;
    EXPECT_EQ(checked_tails(d.store, kind, h), expect) << d.store.entity_name(h);
  }
  EXPECT_EQ(rule_pairs(d.store, kind).size(), d.targets.size());
}

INSTANTIATE_TEST_SUITE_P(
    Kinds, SynthProperty,
    ::testing::Combine(::testing::Values(Variant{RuleKind::kC, false}, Variant{RuleKind::kI, false},
                                         Variant{RuleKind::kU, false}, Variant{RuleKind::kU, true}),
                       ::testing::Range(0, 4)));

}  // namespace
}  // namespace cmlkg::synthgen
