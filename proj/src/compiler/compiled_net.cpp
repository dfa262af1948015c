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

#include "cmlkg/compiler/compiled_net.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>
#include <unordered_map>

#include "cmlkg/error.hpp"

namespace cmlkg::compiler {

using cml::FormulaId;
using cml::NodeKind;

namespace {

void sort_entries(std::vector<Entry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
}

const char* case_label(ColumnCase c) {
  switch (c) {
    case ColumnCase::kAtom:
      return "Case 0";
    case ColumnCase::kAnd:
      return "Case 1";
    case ColumnCase::kNot:
      return "Case 2";
    case ColumnCase::kDiamond:
      return "Case 3";
  }
  return "?";
}

const char* case_key(ColumnCase c) {
  switch (c) {
    case ColumnCase::kAtom:
      return "atom";
    case ColumnCase::kAnd:
      return "and";
    case ColumnCase::kNot:
      return "not";
    case ColumnCase::kDiamond:
      return "diamond";
  }
  return "?";
}

const char* atom_key(AtomKind k) {
  switch (k) {
    case AtomKind::kTop:
      return "top";
    case AtomKind::kPred:
      return "pred";
    case AtomKind::kConst:
      return "const";
  }
  return "?";
}

}  // namespace

CompiledNet compile(const cml::FormulaArena& arena, FormulaId root) {
  const auto order = cml::enumerate_subformulas(arena, root);
  std::unordered_map<FormulaId, std::uint32_t> column;
  for (std::uint32_t l = 0; l < order.size(); ++l) column.emplace(order[l], l);

  CompiledNet net;
  net.dim = static_cast<std::uint32_t>(order.size());
  net.bias.assign(net.dim, 0);
  net.layers = net.dim;
  net.out_index = net.dim - 1;
  net.formula = cml::print(arena, root);

  for (std::uint32_t l = 0; l < net.dim; ++l) {
    const cml::FormulaNode& node = arena.node(order[l]);
    net.column_formulas.push_back(cml::print(arena, order[l]));
    switch (node.kind) {
      case NodeKind::kTop:
      case NodeKind::kPred:
      case NodeKind::kConst: {
        net.comb.push_back({l, l, 1});
        const AtomKind kind = node.kind == NodeKind::kTop    ? AtomKind::kTop
                              : node.kind == NodeKind::kPred ? AtomKind::kPred
                                                             : AtomKind::kConst;
        net.atoms.push_back({l, kind, node.name});
        net.cases.push_back(ColumnCase::kAtom);
        break;
      }
      case NodeKind::kAnd: {
        const std::uint32_t j = column.at(node.left);
        const std::uint32_t k = column.at(node.right);
        // (phi & phi) shares one column: both entries land on the same cell,
        // so it reduces to a copy of column j.
        if (j == k) {
          net.comb.push_back({j, l, 1});
        } else {
          net.comb.push_back({j, l, 1});
          net.comb.push_back({k, l, 1});
          net.bias[l] = -1;
        }
        net.cases.push_back(ColumnCase::kAnd);
        break;
      }
      case NodeKind::kNot:
        net.comb.push_back({column.at(node.left), l, -1});
        net.bias[l] = 1;
        net.cases.push_back(ColumnCase::kNot);
        break;
      case NodeKind::kDiamond:
        net.agg[node.name].push_back({column.at(node.left), l, 1});
        net.bias[l] = 1 - static_cast<std::int32_t>(node.count);
        net.cases.push_back(ColumnCase::kDiamond);
        break;
    }
  }
  sort_entries(net.comb);
  for (auto& [rel, entries] : net.agg) sort_entries(entries);
  return net;
}

std::string explain(const CompiledNet& net) {
  std::ostringstream out;
  for (std::uint32_t l = 0; l < net.dim; ++l) {
    out << "column " << l << ": " << net.column_formulas.at(l) << "  ["
        << case_label(net.cases.at(l)) << "]";
    for (const Entry& e : net.comb)
      if (e.col == l) out << " comb[" << e.row << "][" << l << "]=" << e.value;
    for (const auto& [rel, entries] : net.agg)
      for (const Entry& e : entries)
        if (e.col == l)
          out << " agg[" << rel << "][" << e.row << "][" << l << "]=" << e.value;
    out << " bias=" << net.bias.at(l);
    for (const Atom& a : net.atoms)
      if (a.col == l) {
        out << " init=" << atom_key(a.kind);
        if (!a.name.empty()) out << ":" << a.name;
      }
    if (l == net.out_index) out << " (output)";
    out << '\n';
  }
  return out.str();
}

std::string serialize(const CompiledNet& net) {
  using json = nlohmann::ordered_json;
  json j;
  j["format"] = "cmlkg-net/1";
  j["formula"] = net.formula;
  j["L"] = net.dim;
  j["layers"] = net.layers;
  j["out_index"] = net.out_index;
  json atoms = json::array();
  for (const Atom& a : net.atoms)
    atoms.push_back({{"col", a.col}, {"kind", atom_key(a.kind)}, {"name", a.name}});
  j["atoms"] = atoms;
  json columns = json::array();
  for (std::uint32_t l = 0; l < net.dim; ++l)
    columns.push_back({{"col", l},
                       {"case", case_key(net.cases[l])},
                       {"formula", net.column_formulas[l]}});
  j["columns"] = columns;
  json comb = json::array();
  for (const Entry& e : net.comb) comb.push_back({e.row, e.col, e.value});
  j["comb"] = comb;
  json agg = json::object();
  for (const auto& [rel, entries] : net.agg) {
    json list = json::array();
    for (const Entry& e : entries) list.push_back({e.row, e.col, e.value});
    agg[rel] = list;
  }
  j["agg"] = agg;
  j["bias"] = net.bias;
  return j.dump(2) + "\n";
}

CompiledNet deserialize(const std::string& text) {
  using json = nlohmann::json;
  CompiledNet net;
  try {
    const json j = json::parse(text);
    if (j.at("format") != "cmlkg-net/1") throw Error("unsupported net format");
    net.formula = j.at("formula").get<std::string>();
    net.dim = j.at("L").get<std::uint32_t>();
    net.layers = j.at("layers").get<std::uint32_t>();
    net.out_index = j.at("out_index").get<std::uint32_t>();
    for (const auto& a : j.at("atoms")) {
      const std::string kind = a.at("kind");
      const AtomKind k = kind == "top"    ? AtomKind::kTop
                         : kind == "pred" ? AtomKind::kPred
                         : kind == "const"
                             ? AtomKind::kConst
                             : throw Error("unknown atom kind '" + kind + "'");
      net.atoms.push_back({a.at("col").get<std::uint32_t>(), k,
                           a.at("name").get<std::string>()});
    }
    for (const auto& c : j.at("columns")) {
      const std::string k = c.at("case");
      const ColumnCase cc = k == "atom"   ? ColumnCase::kAtom
                            : k == "and"  ? ColumnCase::kAnd
                            : k == "not"  ? ColumnCase::kNot
                            : k == "diamond"
                                ? ColumnCase::kDiamond
                                : throw Error("unknown column case '" + k + "'");
      net.cases.push_back(cc);
      net.column_formulas.push_back(c.at("formula").get<std::string>());
    }
    auto entry = [](const json& e) {
      return Entry{e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>(),
                   e.at(2).get<std::int32_t>()};
    };
    for (const auto& e : j.at("comb")) net.comb.push_back(entry(e));
    for (const auto& [rel, list] : j.at("agg").items())
      for (const auto& e : list) net.agg[rel].push_back(entry(e));
    net.bias = j.at("bias").get<std::vector<std::int32_t>>();
  } catch (const json::exception& e) {
    throw Error(std::string("malformed compiled net: ") + e.what());
  }
  const auto in_range = [&](const Entry& e) {
    return e.row < net.dim && e.col < net.dim;
  };
  bool ok = net.bias.size() == net.dim && net.cases.size() == net.dim &&
            net.out_index < net.dim &&
            std::all_of(net.comb.begin(), net.comb.end(), in_range);
  for (const auto& [rel, entries] : net.agg)
    ok = ok && std::all_of(entries.begin(), entries.end(), in_range);
  for (const Atom& a : net.atoms) ok = ok && a.col < net.dim;
  if (!ok) throw Error("malformed compiled net: dimension mismatch");
  return net;
}

}  // namespace cmlkg::compiler
