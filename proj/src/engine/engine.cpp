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

#include "cmlkg/engine/engine.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cmlkg/simd/kernels.hpp"

namespace cmlkg::engine {

using compiler::AtomKind;
using compiler::CompiledNet;
using compiler::Entry;

bool EngineOptions::debug_from_environment() {
  const char* env = std::getenv("CML_KG_DEBUG");
  return env != nullptr && std::strcmp(env, "1") == 0;
}

FeatureMatrix init_features(const TripleStore& store, const CompiledNet& net,
                            const Labeling& binding) {
  FeatureMatrix x(store.num_entities(), net.dim);
  for (const auto& atom : net.atoms) {
    if (atom.col >= net.dim) throw Error("atom column out of range");
    auto col = x.column(atom.col);
    switch (atom.kind) {
      case AtomKind::kTop:
        std::fill(col.begin(), col.end(), 1);
        break;
      case AtomKind::kPred:
        for (EntityId v : store.predicate_extension(atom.name)) col[v] = 1;
        break;
      case AtomKind::kConst:
        col[binding.resolve(atom.name)] = 1;
        break;
    }
  }
  return x;
}

namespace {

// A column's incoming weights, with relation names resolved to CSR views.
struct ColumnPlan {
  std::vector<Entry> comb;
  std::vector<std::pair<TripleStore::Csr, Entry>> agg;
};

std::vector<ColumnPlan> plan(const TripleStore& store, const CompiledNet& net) {
  std::vector<ColumnPlan> cols(net.dim);
  for (const Entry& e : net.comb) cols.at(e.col).comb.push_back(e);
  for (const auto& [rel, entries] : net.agg) {
    const auto r = store.find_relation(rel);
    if (!r) throw Error("compiled net uses unknown relation '" + rel + "'");
    const auto csr = store.incoming(*r);
    for (const Entry& e : entries) cols.at(e.col).agg.emplace_back(csr, e);
  }
  return cols;
}

}  // namespace

FeatureMatrix forward(const TripleStore& store, const CompiledNet& net,
                      const FeatureMatrix& x0, const EngineOptions& options,
                      ForwardStats* stats) {
  if (x0.dim() != net.dim || x0.entities() != store.num_entities())
    throw Error("feature matrix is " + std::to_string(x0.entities()) + "x" +
                std::to_string(x0.dim()) + ", expected " +
                std::to_string(store.num_entities()) + "x" +
                std::to_string(net.dim));
  if (net.bias.size() != net.dim) throw Error("bias length mismatch");

  const auto& k = simd::active_kernels();
  const auto cols = plan(store, net);
  const std::size_t n = store.num_entities();
  ForwardStats local;

  if (options.check_closure) {
    const auto values = x0.values();
    local.closure_checks += values.size();
    local.closure_violations += k.count_nonbinary(values.data(), values.size());
  }
  FeatureMatrix cur = x0;
  FeatureMatrix next(n, net.dim);
  for (std::uint32_t round = 1; round <= net.layers; ++round) {
    for (std::uint32_t l = 0; l < net.dim; ++l) {
      std::int32_t* out = next.column(l).data();
      k.fill(out, net.bias[l], n);
      for (const Entry& e : cols[l].comb)
        k.axpy(out, e.value, cur.column(e.row).data(), n);
      for (const auto& [csr, e] : cols[l].agg)
        k.gather_add(out, e.value, csr.offsets.data(), csr.heads.data(),
                     cur.column(e.row).data(), n);
      k.clamp01(out, n);
    }
    next.set_round(round);
    std::swap(cur, next);
    ++local.rounds;
    if (options.check_closure) {
      const auto values = cur.values();
      local.closure_checks += values.size();
      local.closure_violations += k.count_nonbinary(values.data(), values.size());
    }
  }
  if (stats) {
    stats->rounds += local.rounds;
    stats->closure_checks += local.closure_checks;
    stats->closure_violations += local.closure_violations;
  }
  if (local.closure_violations > 0)
    throw ClosureViolation(std::to_string(local.closure_violations) +
                           " state entries left {0, 1}");
  return cur;
}

std::vector<std::uint8_t> readout(const FeatureMatrix& x,
                                  const CompiledNet& net) {
  if (net.out_index >= x.dim()) throw Error("output index out of range");
  const auto col = x.column(net.out_index);
  return std::vector<std::uint8_t>(col.begin(), col.end());
}

std::vector<std::uint8_t> evaluate(const TripleStore& store,
                                   const CompiledNet& net,
                                   const Labeling& binding,
                                   const EngineOptions& options,
                                   ForwardStats* stats) {
  return readout(forward(store, net, init_features(store, net, binding), options,
                         stats),
                 net);
}

}  // namespace cmlkg::engine
