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

#include "cmlkg/kg/triple_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cmlkg/error.hpp"

namespace cmlkg {

namespace {

template <typename Id>
Id intern(std::string_view name, std::vector<std::string>& names,
          std::map<std::string, Id, std::less<>>& ids) {
  if (auto it = ids.find(name); it != ids.end()) return it->second;
  const Id id = static_cast<Id>(names.size());
  names.emplace_back(name);
  ids.emplace(std::string(name), id);
  return id;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Calls fn(line_number, line) for every non-blank line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) fn(line_no, line);
    pos = end + 1;
  }
}

}  // namespace

EntityId TripleStore::Builder::entity(std::string_view name) {
  return intern<EntityId>(name, entity_names_, entity_ids_);
}

RelationId TripleStore::Builder::relation(std::string_view name) {
  return intern<RelationId>(name, relation_names_, relation_ids_);
}

std::optional<EntityId> TripleStore::Builder::find_entity(
    std::string_view name) const {
  if (auto it = entity_ids_.find(name); it != entity_ids_.end())
    return it->second;
  return std::nullopt;
}

void TripleStore::Builder::add_triple(EntityId head, RelationId relation,
                                      EntityId tail) {
  if (head >= entity_names_.size() || tail >= entity_names_.size() ||
      relation >= relation_names_.size()) {
    throw Error("add_triple: id out of range");
  }
  triples_.push_back({head, relation, tail});
}

void TripleStore::Builder::add_triple(std::string_view head,
                                      std::string_view relation,
                                      std::string_view tail) {
  const EntityId h = entity(head);
  const RelationId r = this->relation(relation);
  const EntityId t = entity(tail);
  add_triple(h, r, t);
}

void TripleStore::Builder::add_fact(std::string_view predicate,
                                    EntityId entity) {
  if (entity >= entity_names_.size())
    throw Error("add_fact: entity id out of range");
  auto it = preds_.find(predicate);
  if (it == preds_.end())
    it = preds_.emplace(std::string(predicate), std::vector<EntityId>{}).first;
  it->second.push_back(entity);
}

void TripleStore::Builder::set_out_degrees(std::vector<std::uint32_t> degrees) {
  out_degrees_ = std::move(degrees);
}

TripleStore TripleStore::Builder::build() && {
  TripleStore s;
  s.entity_names_ = std::move(entity_names_);
  s.entity_ids_ = std::move(entity_ids_);
  s.relation_names_ = std::move(relation_names_);
  s.relation_ids_ = std::move(relation_ids_);
  s.triples_ = std::move(triples_);
  s.preds_ = std::move(preds_);

  std::sort(s.triples_.begin(), s.triples_.end());
  s.triples_.erase(std::unique(s.triples_.begin(), s.triples_.end()),
                   s.triples_.end());
  for (auto& [name, ext] : s.preds_) {
    std::sort(ext.begin(), ext.end());
    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
  }

  const std::size_t n = s.entity_names_.size();
  if (out_degrees_) {
    if (out_degrees_->size() != n)
      throw Error("out-degree vector does not match the entity count");
    s.out_degree_ = std::move(*out_degrees_);
  } else {
    s.out_degree_.assign(n, 0);
    for (const auto& t : s.triples_) ++s.out_degree_[t.head];
  }

  const std::size_t nr = s.relation_names_.size();
  s.in_offsets_.assign(nr, std::vector<std::uint32_t>(n + 1, 0));
  s.in_heads_.assign(nr, {});
  for (const auto& t : s.triples_) ++s.in_offsets_[t.relation][t.tail + 1];
  for (std::size_t r = 0; r < nr; ++r) {
    auto& off = s.in_offsets_[r];
    for (std::size_t v = 0; v < n; ++v) off[v + 1] += off[v];
    s.in_heads_[r].resize(off[n]);
  }
  std::vector<std::vector<std::uint32_t>> cursor = s.in_offsets_;
  // Triples are sorted by head, so every bucket fills in ascending head order.
  for (const auto& t : s.triples_)
    s.in_heads_[t.relation][cursor[t.relation][t.tail]++] = t.head;
  return s;
}

void TripleStore::check_entity(EntityId v) const {
  if (v >= entity_names_.size())
    throw Error("invalid entity id " + std::to_string(v));
}

void TripleStore::check_relation(RelationId r) const {
  if (r >= relation_names_.size())
    throw Error("invalid relation id " + std::to_string(r));
}

const std::string& TripleStore::entity_name(EntityId v) const {
  check_entity(v);
  return entity_names_[v];
}

const std::string& TripleStore::relation_name(RelationId r) const {
  check_relation(r);
  return relation_names_[r];
}

std::optional<EntityId> TripleStore::find_entity(std::string_view name) const {
  if (auto it = entity_ids_.find(name); it != entity_ids_.end())
    return it->second;
  return std::nullopt;
}

std::optional<RelationId> TripleStore::find_relation(
    std::string_view name) const {
  if (auto it = relation_ids_.find(name); it != relation_ids_.end())
    return it->second;
  return std::nullopt;
}

EntityId TripleStore::entity_id(std::string_view name) const {
  if (auto id = find_entity(name)) return *id;
  throw Error("unknown entity '" + std::string(name) + "'");
}

RelationId TripleStore::relation_id(std::string_view name) const {
  if (auto id = find_relation(name)) return *id;
  throw Error("unknown relation '" + std::string(name) + "'");
}

bool TripleStore::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

std::span<const EntityId> TripleStore::neighbors(EntityId v,
                                                 RelationId r) const {
  check_entity(v);
  check_relation(r);
  const auto& off = in_offsets_[r];
  return std::span<const EntityId>(in_heads_[r]).subspan(off[v],
                                                          off[v + 1] - off[v]);
}

TripleStore::Csr TripleStore::incoming(RelationId r) const {
  check_relation(r);
  return {in_offsets_[r], in_heads_[r]};
}

std::uint32_t TripleStore::out_degree(EntityId v) const {
  check_entity(v);
  return out_degree_[v];
}

std::span<const EntityId> TripleStore::predicate_extension(
    std::string_view name) const {
  if (auto it = preds_.find(name); it != preds_.end()) return it->second;
  return {};
}

TripleStore TripleStore::augment_inverses() const {
  for (const auto& name : relation_names_) {
    if (name.ends_with(kInverseSuffix))
      throw Error("relation '" + name +
                  "' already carries the inverse suffix; refusing to augment");
  }
  Builder b;
  for (const auto& name : entity_names_) b.entity(name);
  for (const auto& name : relation_names_) b.relation(name);
  std::vector<RelationId> inverse(relation_names_.size());
  for (RelationId r = 0; r < relation_names_.size(); ++r) {
    const std::string inv = relation_names_[r] + std::string(kInverseSuffix);
    if (relation_ids_.contains(inv))
      throw Error("inverse relation name '" + inv + "' collides");
    inverse[r] = b.relation(inv);
  }
  for (const auto& t : triples_) {
    b.add_triple(t.head, t.relation, t.tail);
    b.add_triple(t.tail, inverse[t.relation], t.head);
  }
  for (const auto& [pred, ext] : preds_)
    for (EntityId v : ext) b.add_fact(pred, v);
  b.set_out_degrees(out_degree_);
  return std::move(b).build();
}

std::string TripleStore::serialize_triples() const {
  std::string out;
  for (const auto& t : triples_) {
    out += entity_names_[t.head];
    out += '\t';
    out += relation_names_[t.relation];
    out += '\t';
    out += entity_names_[t.tail];
    out += '\n';
  }
  return out;
}

std::string TripleStore::serialize_predicates() const {
  std::string out;
  for (const auto& [pred, ext] : preds_) {
    for (EntityId v : ext) {
      out += pred;
      out += '\t';
      out += entity_names_[v];
      out += '\n';
    }
  }
  return out;
}

TripleStore load_store(std::string_view triples_text,
                       std::optional<std::string_view> preds_text) {
  TripleStore::Builder b;
  for_each_line(triples_text, [&](std::size_t line_no, std::string_view line) {
    const auto f = split_tabs(line);
    if (f.size() != 3)
      throw ParseError("triples: expected 3 tab-separated fields, found " +
                           std::to_string(f.size()),
                       line_no);
    if (f[0].empty() || f[1].empty() || f[2].empty())
      throw ParseError("triples: empty field", line_no);
    b.add_triple(f[0], f[1], f[2]);
  });
  if (preds_text) {
    for_each_line(*preds_text, [&](std::size_t line_no, std::string_view line) {
      const auto f = split_tabs(line);
      if (f.size() != 2)
        throw ParseError("predicates: expected 2 tab-separated fields, found " +
                             std::to_string(f.size()),
                         line_no);
      if (f[0].empty())
        throw ParseError("predicates: empty predicate name", line_no);
      const auto v = b.find_entity(f[1]);
      if (!v)
        throw ParseError("predicate '" + std::string(f[0]) +
                             "' references unknown entity '" +
                             std::string(f[1]) + "'",
                         line_no);
      b.add_fact(f[0], *v);
    });
  }
  return std::move(b).build();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "': file not found");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TripleStore load_store_files(const std::string& triples_path,
                             const std::optional<std::string>& preds_path) {
  const std::string triples = read_text_file(triples_path);
  if (!preds_path) return load_store(triples);
  const std::string preds = read_text_file(*preds_path);
  return load_store(triples, preds);
}

}  // namespace cmlkg
