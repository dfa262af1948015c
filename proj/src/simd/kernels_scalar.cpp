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

#include "cmlkg/simd/kernels.hpp"

namespace cmlkg::simd {

namespace {

void fill_scalar(std::int32_t* dst, std::int32_t value, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = value;
}

void axpy_scalar(std::int32_t* dst, std::int32_t w, const std::int32_t* src,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += w * src[i];
}

void gather_add_scalar(std::int32_t* dst, std::int32_t w,
                       const std::uint32_t* offsets,
                       const std::uint32_t* indices, const std::int32_t* src,
                       std::size_t rows) {
  for (std::size_t v = 0; v < rows; ++v) {
    std::int32_t sum = 0;
    for (std::uint32_t p = offsets[v]; p < offsets[v + 1]; ++p)
      sum += src[indices[p]];
    dst[v] += w * sum;
  }
}

void clamp01_scalar(std::int32_t* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = dst[i] < 0 ? 0 : (dst[i] > 1 ? 1 : dst[i]);
}

std::size_t count_nonbinary_scalar(const std::int32_t* src, std::size_t n) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n; ++i) bad += (src[i] != 0 && src[i] != 1);
  return bad;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar,       "scalar",
                                 fill_scalar,        axpy_scalar,
                                 gather_add_scalar,  clamp01_scalar,
                                 count_nonbinary_scalar};
  return table;
}

}  // namespace cmlkg::simd
