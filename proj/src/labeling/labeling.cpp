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

#include "cmlkg/labeling/labeling.hpp"

#include <algorithm>
#include <functional>

#include "cmlkg/error.hpp"

namespace cmlkg {

void Labeling::bind(std::string_view name, EntityId entity, LabelOrigin origin) {
  if (name.empty()) throw Error("empty constant name");
  auto [lo, hi] = bindings_.equal_range(name);
  for (auto it = lo; it != hi; ++it)
    if (it->second == entity) return;
  bindings_.emplace(std::string(name), entity);
  origins_.insert_or_assign(std::string(name), origin);
}

std::vector<EntityId> Labeling::lookup(std::string_view name) const {
  std::vector<EntityId> out;
  auto [lo, hi] = bindings_.equal_range(name);
  for (auto it = lo; it != hi; ++it) out.push_back(it->second);
  return out;
}

EntityId Labeling::resolve(std::string_view name) const {
  const auto found = lookup(name);
  if (found.empty())
    throw Error("constant @" + std::string(name) + " is not bound");
  if (found.size() > 1)
    throw Error("constant @" + std::string(name) + " is bound to " +
                std::to_string(found.size()) +
                " entities; constants must identify exactly one entity");
  return found.front();
}

bool Labeling::bound(std::string_view name) const {
  return bindings_.find(name) != bindings_.end();
}

std::optional<LabelOrigin> Labeling::origin(std::string_view name) const {
  if (auto it = origins_.find(name); it != origins_.end()) return it->second;
  return std::nullopt;
}

std::vector<EntityId> Labeling::entities_with_origin(LabelOrigin origin) const {
  std::vector<EntityId> out;
  for (const auto& [name, v] : bindings_)
    if (origins_.at(name) == origin) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<std::string> Labeling::names() const {
  std::set<std::string> out;
  for (const auto& [name, v] : bindings_) out.insert(name);
  return out;
}

Labeling Labeling::merged(const Labeling& other) const {
  Labeling out = *this;
  for (const auto& [name, v] : other.bindings_)
    out.bind(name, v, other.origins_.at(name));
  return out;
}

void Labeling::validate() const {
  std::size_t query_names = 0;
  std::set<EntityId> el_entities;
  for (const auto& [name, origin] : origins_) {
    const auto ents = lookup(name);
    if (origin == LabelOrigin::kQuery) ++query_names;
    if (origin == LabelOrigin::kEntity) {
      if (ents.size() != 1)
        throw Error("entity label @" + name + " must bind one entity");
      if (!el_entities.insert(ents.front()).second)
        throw Error("entity labels are not injective");
    }
  }
  if (query_names > 1) throw Error("more than one query constant");
}

Labeling query_label(EntityId h) {
  Labeling lab;
  lab.bind(kQueryConstant, h, LabelOrigin::kQuery);
  return lab;
}

std::vector<EntityId> high_out_degree_entities(const TripleStore& store,
                                               std::uint32_t degree) {
  std::vector<EntityId> out;
  for (EntityId v = 0; v < store.num_entities(); ++v)
    if (store.out_degree(v) > degree) out.push_back(v);
  return out;
}

Labeling el_label(const TripleStore& store, std::uint32_t degree, EntityId h) {
  store.entity_name(h);
  Labeling lab;
  for (EntityId v : high_out_degree_entities(store, degree))
    lab.bind(std::string(kEntityLabelPrefix) + std::to_string(v), v,
             LabelOrigin::kEntity);
  lab.bind(kQueryConstant, h, LabelOrigin::kQuery);
  return lab;
}

std::vector<Labeling> ground_constants(
    const std::set<std::string>& formula_constants, const Labeling& lab,
    const TripleStore& store,
    std::optional<std::span<const EntityId>> candidates) {
  std::vector<std::string> open;
  for (const auto& c : formula_constants)
    if (!lab.bound(c)) open.push_back(c);
  if (open.empty()) return {lab};

  std::vector<EntityId> pool = lab.entities_with_origin(LabelOrigin::kEntity);
  if (candidates) {
    std::vector<EntityId> allowed(candidates->begin(), candidates->end());
    std::sort(allowed.begin(), allowed.end());
    std::erase_if(pool, [&](EntityId v) {
      return !std::binary_search(allowed.begin(), allowed.end(), v);
    });
  }
  for (EntityId v : pool) store.entity_name(v);

  std::vector<Labeling> out;
  std::vector<EntityId> chosen;
  std::vector<char> used(pool.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == open.size()) {
      Labeling g = lab;
      for (std::size_t i = 0; i < open.size(); ++i)
        g.bind(open[i], chosen[i], LabelOrigin::kManual);
      out.push_back(std::move(g));
      return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      chosen.push_back(pool[i]);
      rec(depth + 1);
      chosen.pop_back();
      used[i] = 0;
    }
  };
  rec(0);
  return out;
}

Labeling parse_bindings(const TripleStore& store, std::string_view spec) {
  Labeling lab;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    const std::string_view item = spec.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) {
      if (comma == spec.size()) break;
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
      throw Error("malformed binding '" + std::string(item) +
                  "', expected name=entity");
    std::string_view name = item.substr(0, eq);
    if (name.front() == '@') name.remove_prefix(1);
    const EntityId v = store.entity_id(item.substr(eq + 1));
    lab.bind(name, v,
             name == kQueryConstant ? LabelOrigin::kQuery : LabelOrigin::kManual);
  }
  return lab;
}

}  // namespace cmlkg
