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
#include <span>
#include <vector>

#include "cmlkg/compiler/compiled_net.hpp"
#include "cmlkg/error.hpp"
#include "cmlkg/kg/triple_store.hpp"
#include "cmlkg/labeling/labeling.hpp"

namespace cmlkg::engine {

// |V| x L integer state, stored column-major so that each column is one
// contiguous vector over entities.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t entities, std::size_t dim)
      : entities_(entities), dim_(dim), values_(entities * dim, 0) {}

  std::size_t entities() const { return entities_; }
  std::size_t dim() const { return dim_; }
  std::uint32_t round() const { return round_; }
  void set_round(std::uint32_t r) { round_ = r; }

  std::int32_t at(EntityId v, std::size_t col) const {
    return values_[col * entities_ + v];
  }
  std::int32_t& at(EntityId v, std::size_t col) {
    return values_[col * entities_ + v];
  }
  std::span<std::int32_t> column(std::size_t col) {
    return std::span(values_).subspan(col * entities_, entities_);
  }
  std::span<const std::int32_t> column(std::size_t col) const {
    return std::span(values_).subspan(col * entities_, entities_);
  }
  std::span<const std::int32_t> values() const { return values_; }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::size_t entities_ = 0;
  std::size_t dim_ = 0;
  std::uint32_t round_ = 0;
  std::vector<std::int32_t> values_;
};

class ClosureViolation : public Error {
 public:
  using Error::Error;
};

struct EngineOptions {
  // Verify that the initial state and the state after every round hold only
  // 0 and 1; throw ClosureViolation otherwise. On when CML_KG_DEBUG=1.
  bool check_closure = debug_from_environment();

  static bool debug_from_environment();
};

struct ForwardStats {
  std::uint32_t rounds = 0;
  std::uint64_t closure_checks = 0;      // entries inspected
  std::uint64_t closure_violations = 0;  // entries outside {0, 1}
};

// Initial state: 1 where a column's predicate holds, at the entity bound to a
// column's constant, and everywhere for top. Throws if a constant is unbound
// or bound to more than one entity.
FeatureMatrix init_features(const TripleStore& store,
                            const compiler::CompiledNet& net,
                            const Labeling& binding);

// Runs net.layers synchronous rounds.
FeatureMatrix forward(const TripleStore& store, const compiler::CompiledNet& net,
                      const FeatureMatrix& x0, const EngineOptions& options = {},
                      ForwardStats* stats = nullptr);

// Output column as one bit per entity.
std::vector<std::uint8_t> readout(const FeatureMatrix& x,
                                  const compiler::CompiledNet& net);

// init_features + forward + readout.
std::vector<std::uint8_t> evaluate(const TripleStore& store,
                                   const compiler::CompiledNet& net,
                                   const Labeling& binding,
                                   const EngineOptions& options = {},
                                   ForwardStats* stats = nullptr);

}  // namespace cmlkg::engine
