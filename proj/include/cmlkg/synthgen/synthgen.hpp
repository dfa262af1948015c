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
#include <optional>
#include <string>
#include <vector>

#include "cmlkg/kg/triple_store.hpp"
#include "cmlkg/synthgen/rules.hpp"

namespace cmlkg::synthgen {

struct SplitFractions {
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;
};

struct SynthConfig {
  RuleKind kind = RuleKind::kC;
  std::uint32_t instances = 100;
  // Number of noise triples; nullopt means twice the support triples.
  std::optional<std::uint64_t> noise;
  std::uint64_t seed = 0;
  SplitFractions split;
  // U only: add a counting-bisimilar decoy branch pair per instance.
  bool decoys = false;
  // Noise sampling gives up after this many attempts per requested triple.
  std::uint64_t attempts_per_noise = 200;

  void validate() const;
  std::uint64_t support_per_instance() const;
  std::uint64_t resolved_noise() const;
};

enum class Split : std::uint8_t { kTrain, kValid, kTest };
std::string_view split_name(Split split);

struct Target {
  EntityId head;
  EntityId tail;
  Split split;
  std::uint32_t instance;
};

struct Role {
  std::uint32_t instance;
  EntityId entity;
  std::string role;
};

struct SynthDataset {
  SynthConfig config;
  TripleStore store;  // support + noise triples
  std::vector<Target> targets;
  std::vector<Role> ground;
  std::uint64_t noise_added = 0;

  std::string target_relation() const { return std::string(rule_name(config.kind)); }
};

// Builds vertex-disjoint rule instances, adds rejection-checked noise (no
// noise triple may create a rule match beyond the listed targets), then
// shuffles and splits the targets. Deterministic in the config.
SynthDataset gen_dataset(const SynthConfig& config);

// Writes triples.tsv, targets_{train,valid,test}.tsv, ground.tsv, config.txt.
void write_dataset(const SynthDataset& data, const std::filesystem::path& dir);
SynthDataset load_dataset(const std::filesystem::path& dir);

std::string format_config(const SynthDataset& data);

}  // namespace cmlkg::synthgen
