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

// AVX2 variants. This translation unit is compiled with -mavx2 and must only
// be entered after cpu_supports(Isa::kAvx2) returned true.

#include <immintrin.h>

#include "cmlkg/simd/kernels.hpp"

namespace cmlkg::simd {

namespace {

constexpr std::size_t kLanes = 8;

void fill_avx2(std::int32_t* dst, std::int32_t value, std::size_t n) {
  const __m256i v = _mm256_set1_epi32(value);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), v);
  for (; i < n; ++i) dst[i] = value;
}

void axpy_avx2(std::int32_t* dst, std::int32_t w, const std::int32_t* src,
               std::size_t n) {
  const __m256i wv = _mm256_set1_epi32(w);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_add_epi32(d, _mm256_mullo_epi32(wv, s)));
  }
  for (; i < n; ++i) dst[i] += w * src[i];
}

inline std::int32_t hsum(__m256i v) {
  __m128i s = _mm_add_epi32(_mm256_castsi256_si128(v),
                            _mm256_extracti128_si256(v, 1));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, 0x4e));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, 0xb1));
  return _mm_cvtsi128_si32(s);
}

// Rows with at least eight incoming edges use 8-wide gathers; the short
// rows that dominate sparse graphs stay scalar.
void gather_add_avx2(std::int32_t* dst, std::int32_t w,
                     const std::uint32_t* offsets, const std::uint32_t* indices,
                     const std::int32_t* src, std::size_t rows) {
  for (std::size_t v = 0; v < rows; ++v) {
    std::uint32_t p = offsets[v];
    const std::uint32_t end = offsets[v + 1];
    std::int32_t sum = 0;
    if (end - p >= kLanes) {
      __m256i acc = _mm256_setzero_si256();
      for (; p + kLanes <= end; p += kLanes) {
        const __m256i idx =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(indices + p));
        acc = _mm256_add_epi32(acc, _mm256_i32gather_epi32(src, idx, 4));
      }
      sum = hsum(acc);
    }
    for (; p < end; ++p) sum += src[indices[p]];
    dst[v] += w * sum;
  }
}

void clamp01_avx2(std::int32_t* dst, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    d = _mm256_min_epi32(_mm256_max_epi32(d, zero), one);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
  }
  for (; i < n; ++i) dst[i] = dst[i] < 0 ? 0 : (dst[i] > 1 ? 1 : dst[i]);
}

std::size_t count_nonbinary_avx2(const std::int32_t* src, std::size_t n) {
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t bad = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    // s is binary iff (s & ~1) == 0
    const __m256i high = _mm256_andnot_si256(one, s);
    const __m256i is_zero = _mm256_cmpeq_epi32(high, _mm256_setzero_si256());
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(is_zero));
    bad += kLanes - static_cast<std::size_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) bad += (src[i] != 0 && src[i] != 1);
  return bad;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{Isa::kAvx2,       "avx2",
                                 fill_avx2,        axpy_avx2,
                                 gather_add_avx2,  clamp01_avx2,
                                 count_nonbinary_avx2};
  return &table;
}

}  // namespace cmlkg::simd
