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

// Integer kernels for the message-passing engine.
//
// Every kernel has a scalar reference in kernels_scalar.cpp. Vector variants
// (kernels_avx2.cpp, built with -mavx2) must produce bit-identical results and
// are picked at runtime from the CPU's capabilities. CMLKG_ISA=scalar|avx2 in
// the environment overrides the choice.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace cmlkg::simd {

enum class Isa : std::uint8_t { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // dst[i] = value
  void (*fill)(std::int32_t* dst, std::int32_t value, std::size_t n);
  // dst[i] += w * src[i]
  void (*axpy)(std::int32_t* dst, std::int32_t w, const std::int32_t* src,
               std::size_t n);
  // dst[v] += w * sum(src[indices[p]] for p in [offsets[v], offsets[v + 1]))
  void (*gather_add)(std::int32_t* dst, std::int32_t w,
                     const std::uint32_t* offsets, const std::uint32_t* indices,
                     const std::int32_t* src, std::size_t rows);
  // dst[i] = min(max(0, dst[i]), 1)
  void (*clamp01)(std::int32_t* dst, std::size_t n);
  // number of i with src[i] not in {0, 1}
  std::size_t (*count_nonbinary)(const std::int32_t* src, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the variant was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports(Isa isa);
// The table used by the engine.
const KernelTable& active_kernels();
// Test hook: pins the active table (nullopt restores automatic selection).
// Throws if the ISA is unavailable.
void force_isa(std::optional<Isa> isa);

std::string_view isa_name(Isa isa);

}  // namespace cmlkg::simd
