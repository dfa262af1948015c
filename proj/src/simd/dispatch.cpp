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

#include <atomic>
#include <cstdlib>
#include <string>

#include "cmlkg/error.hpp"
#include "cmlkg/simd/kernels.hpp"

namespace cmlkg::simd {

#if !defined(CMLKG_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif

namespace {

std::atomic<const KernelTable*> g_forced{nullptr};

const KernelTable& table_for(Isa isa) {
  if (isa == Isa::kScalar) return scalar_kernels();
  if (!cpu_supports(isa))
    throw Error("kernel ISA '" + std::string(isa_name(isa)) +
                "' is not available on this machine");
  return *avx2_kernels();
}

const KernelTable& detect() {
  if (const char* env = std::getenv("CMLKG_ISA")) {
    const std::string want(env);
    if (want == "scalar") return scalar_kernels();
    if (want == "avx2") return table_for(Isa::kAvx2);
  }
  if (cpu_supports(Isa::kAvx2)) return *avx2_kernels();
  return scalar_kernels();
}

}  // namespace

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(CMLKG_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return avx2_kernels() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& active_kernels() {
  if (const KernelTable* forced = g_forced.load()) return *forced;
  static const KernelTable& detected = detect();
  return detected;
}

void force_isa(std::optional<Isa> isa) {
  g_forced.store(isa ? &table_for(*isa) : nullptr);
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

}  // namespace cmlkg::simd
