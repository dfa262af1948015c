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

#include "cmlkg/synthgen/synthgen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>

#include "cmlkg/error.hpp"

namespace cmlkg::synthgen {

namespace {

// std::uniform_int_distribution is implementation-defined; this is not.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() -
                              (std::mt19937_64::max() % n + 1) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x <= limit) return x % n;
  }
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i)
    std::swap(items[i - 1], items[bounded(rng, i)]);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Instance {
  std::vector<std::pair<std::string, std::string>> entities;  // name, role
  std::vector<std::tuple<std::string, std::size_t, std::string>> triples;
  std::string head;
  std::string tail;
};

Instance make_instance(RuleKind kind, std::uint32_t i, bool decoys) {
  const std::string prefix = std::string(rule_name(kind)) + std::to_string(i) + "_";
  Instance inst;
  auto ent = [&](const std::string& local, const std::string& role) {
    inst.entities.emplace_back(prefix + local, role);
    return prefix + local;
  };
  auto edge = [&](const std::string& h, std::size_t r, const std::string& t) {
    inst.triples.emplace_back(h, r, t);
  };
  const std::string h = ent("h", "head");
  inst.head = h;
  switch (kind) {
    case RuleKind::kC:
    case RuleKind::kI: {
      const std::string z1 = ent("z1", "z1");
      const std::string z2 = ent("z2", "z2");
      const std::string t = ent("t", "tail");
      edge(h, 0, z1);
      edge(z1, 1, z2);
      edge(z2, 2, t);
      if (kind == RuleKind::kI) {
        edge(ent("w1", "fan_in"), 3, z2);
        edge(ent("w2", "fan_in"), 3, z2);
      }
      inst.tail = t;
      break;
    }
    case RuleKind::kU: {
      const std::string c = ent("c", "fork");
      const std::string z2 = ent("z2", "z2");
      const std::string z3 = ent("z3", "z3");
      const std::string t = ent("t", "tail");
      edge(h, 0, c);
      edge(c, 1, z2);
      edge(z2, 3, t);
      edge(c, 2, z3);
      edge(z3, 4, t);
      inst.tail = t;
      if (decoys) {
        const std::string c1 = ent("c1", "decoy_fork");
        const std::string c2 = ent("c2", "decoy_fork");
        const std::string d2 = ent("z2d", "decoy_z2");
        const std::string d3 = ent("z3d", "decoy_z3");
        const std::string td = ent("td", "decoy_tail");
        edge(h, 0, c1);
        edge(c1, 1, d2);
        edge(d2, 3, td);
        edge(h, 0, c2);
        edge(c2, 2, d3);
        edge(d3, 4, td);
      }
      break;
    }
  }
  return inst;
}

}  // namespace

void SynthConfig::validate() const {
  for (double f : {split.train, split.valid, split.test})
    if (!(f >= 0.0 && f <= 1.0)) throw Error("split fractions must lie in [0, 1]");
  if (std::fabs(split.train + split.valid + split.test - 1.0) > 1e-9)
    throw Error("split fractions must sum to 1");
  if (decoys && kind != RuleKind::kU)
    throw Error("decoys are only defined for the U relation");
  if (attempts_per_noise == 0) throw Error("attempts_per_noise must be >= 1");
}

std::uint64_t SynthConfig::support_per_instance() const {
  switch (kind) {
    case RuleKind::kC:
      return 3;
    case RuleKind::kI:
      return 5;
    case RuleKind::kU:
      return decoys ? 11 : 5;
  }
  return 0;
}

std::uint64_t SynthConfig::resolved_noise() const {
  return noise ? *noise : 2 * support_per_instance() * instances;
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValid:
      return "valid";
    case Split::kTest:
      return "test";
  }
  return "?";
}

SynthDataset gen_dataset(const SynthConfig& config) {
  config.validate();
  SynthDataset data;
  data.config = config;

  TripleStore::Builder b;
  for (std::size_t r = 0; r < rule_vocabulary(config.kind); ++r)
    b.relation(kRelationNames[r]);

  RuleGraph graph;
  std::vector<Pair> expected;
  std::vector<Instance> instances;
  for (std::uint32_t i = 0; i < config.instances; ++i) {
    Instance inst = make_instance(config.kind, i, config.decoys);
    for (const auto& [name, role] : inst.entities)
      data.ground.push_back({i, b.entity(name), role});
    graph.resize(b.num_entities());
    for (const auto& [h, r, t] : inst.triples)
      graph.add(*b.find_entity(h), r, *b.find_entity(t));
    expected.emplace_back(*b.find_entity(inst.head), *b.find_entity(inst.tail));
    instances.push_back(std::move(inst));
  }
  if (graph.pairs(config.kind) != std::set<Pair>(expected.begin(), expected.end()))
    throw Error("internal: rule instances do not entail exactly their targets");

  std::mt19937_64 rng(config.seed);
  const std::uint64_t want = config.resolved_noise();
  const std::size_t n = b.num_entities();
  const std::size_t vocab = rule_vocabulary(config.kind);
  std::vector<std::tuple<EntityId, std::size_t, EntityId>> noise;
  if (want > 0 && n == 0)
    throw Error("cannot add noise triples without any instances");
  const std::uint64_t budget = want * config.attempts_per_noise;
  std::uint64_t attempts = 0;
  const std::size_t baseline = expected.size();
  while (noise.size() < want) {
    if (++attempts > budget)
      throw Error("noise rejection bound exceeded after " +
                  std::to_string(noise.size()) + " of " + std::to_string(want) +
                  " noise triples; request fewer noise triples");
    const auto h = static_cast<EntityId>(bounded(rng, n));
    const auto r = static_cast<std::size_t>(bounded(rng, vocab));
    const auto t = static_cast<EntityId>(bounded(rng, n));
    if (!graph.add(h, r, t)) continue;
    if (graph.count_pairs(config.kind) != baseline) {
      graph.remove(h, r, t);
      continue;
    }
    noise.emplace_back(h, r, t);
  }
  data.noise_added = noise.size();

  for (const auto& inst : instances)
    for (const auto& [h, r, t] : inst.triples)
      b.add_triple(*b.find_entity(h), static_cast<RelationId>(r),
                   *b.find_entity(t));
  for (const auto& [h, r, t] : noise)
    b.add_triple(h, static_cast<RelationId>(r), t);
  data.store = std::move(b).build();

  std::vector<std::uint32_t> order(expected.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, rng);
  const auto total = static_cast<double>(order.size());
  const auto n_train = static_cast<std::size_t>(std::floor(config.split.train * total + 1e-9));
  const auto n_valid = static_cast<std::size_t>(std::floor(config.split.valid * total + 1e-9));
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const Split s = pos < n_train             ? Split::kTrain
                    : pos < n_train + n_valid ? Split::kValid
                                              : Split::kTest;
    const auto i = order[pos];
    data.targets.push_back({expected[i].first, expected[i].second, s, i});
  }
  return data;
}

std::string format_config(const SynthDataset& data) {
  const SynthConfig& c = data.config;
  std::string out;
  out += "format=cmlkg-synth/1\n";
  out += "relation=" + std::string(rule_name(c.kind)) + "\n";
  out += "instances=" + std::to_string(c.instances) + "\n";
  out += "noise=" + std::to_string(c.resolved_noise()) + "\n";
  out += "seed=" + std::to_string(c.seed) + "\n";
  out += "split=" + format_double(c.split.train) + "," +
         format_double(c.split.valid) + "," + format_double(c.split.test) + "\n";
  out += "decoys=" + std::string(c.decoys ? "1" : "0") + "\n";
  out += "attempts_per_noise=" + std::to_string(c.attempts_per_noise) + "\n";
  out += "noise_added=" + std::to_string(data.noise_added) + "\n";
  out += "support_triples=" +
         std::to_string(c.support_per_instance() * c.instances) + "\n";
  out += "entities=" + std::to_string(data.store.num_entities()) + "\n";
  out += "triples=" + std::to_string(data.store.num_triples()) + "\n";
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config.txt: malformed line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace

void write_dataset(const SynthDataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const TripleStore& s = data.store;
  write_file(dir / "triples.tsv", s.serialize_triples());
  for (Split split : {Split::kTrain, Split::kValid, Split::kTest}) {
    std::string text;
    for (const Target& t : data.targets) {
      if (t.split != split) continue;
      text += s.entity_name(t.head) + "\t" + data.target_relation() + "\t" +
              s.entity_name(t.tail) + "\n";
    }
    write_file(dir / ("targets_" + std::string(split_name(split)) + ".tsv"), text);
  }
  std::string ground;
  for (const Role& r : data.ground)
    ground += std::to_string(r.instance) + "\t" + s.entity_name(r.entity) + "\t" +
              r.role + "\n";
  write_file(dir / "ground.tsv", ground);
  write_file(dir / "config.txt", format_config(data));
}

SynthDataset load_dataset(const std::filesystem::path& dir) {
  SynthDataset data;
  const auto kv = parse_config(read_text_file((dir / "config.txt").string()));
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error("config.txt: missing key '" + key + "'");
    return it->second;
  };
  try {
    data.config.kind = parse_rule_kind(get("relation"));
    data.config.instances = static_cast<std::uint32_t>(std::stoul(get("instances")));
    data.config.noise = std::stoull(get("noise"));
    data.config.seed = std::stoull(get("seed"));
    data.config.decoys = get("decoys") == "1";
    const std::string& split = get("split");
    const auto c1 = split.find(',');
    const auto c2 = split.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw Error("config.txt: malformed split '" + split + "'");
    data.config.split = {std::stod(split.substr(0, c1)),
                         std::stod(split.substr(c1 + 1, c2 - c1 - 1)),
                         std::stod(split.substr(c2 + 1))};
    if (auto it = kv.find("attempts_per_noise"); it != kv.end())
      data.config.attempts_per_noise = std::stoull(it->second);
    if (auto it = kv.find("noise_added"); it != kv.end())
      data.noise_added = std::stoull(it->second);
  } catch (const std::logic_error& e) {
    throw Error(std::string("config.txt: bad value: ") + e.what());
  }

  data.store = load_store(read_text_file((dir / "triples.tsv").string()));
  const std::string rel = data.target_relation();
  for (Split split : {Split::kTrain, Split::kValid, Split::kTest}) {
    const auto path = dir / ("targets_" + std::string(split_name(split)) + ".tsv");
    const std::string text = read_text_file(path.string());
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      const std::string line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (line.empty()) continue;
      const auto t1 = line.find('\t');
      const auto t2 = line.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
      if (t1 == std::string::npos || t2 == std::string::npos ||
          line.find('\t', t2 + 1) != std::string::npos)
        throw Error(path.string() + ": line " + std::to_string(line_no) +
                    ": expected 3 tab-separated fields");
      if (line.substr(t1 + 1, t2 - t1 - 1) != rel)
        throw Error(path.string() + ": line " + std::to_string(line_no) +
                    ": target relation does not match config (" + rel + ")");
      data.targets.push_back({data.store.entity_id(line.substr(0, t1)),
                              data.store.entity_id(line.substr(t2 + 1)), split,
                              0});
    }
  }
  return data;
}

}  // namespace cmlkg::synthgen
