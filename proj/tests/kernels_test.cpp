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

#include <gtest/gtest.h>

#include <cstdlib>
#include <vector>

#include "cmlkg/simd/kernels.hpp"
#include "support/random_instances.hpp"

namespace cmlkg::simd {
namespace {

std::vector<std::int32_t> random_values(testing::Rng& rng, std::size_t n, int lo, int hi) {
  std::vector<std::int32_t> v(n);
  for (auto& x : v) x = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
  return v;
}

const KernelTable* vector_table() {
  if (!cpu_supports(Isa::kAvx2)) return nullptr;
  return avx2_kernels();
}

TEST(Kernels, ScalarReference) {
  const auto& k = scalar_kernels();
  std::vector<std::int32_t> d(5);
  k.fill(d.data(), -3, d.size());
  EXPECT_EQ(d, std::vector<std::int32_t>(5, -3));
  const std::vector<std::int32_t> src = {1, 0, 1, 1, 0};
  k.axpy(d.data(), 2, src.data(), d.size());
  EXPECT_EQ(d, (std::vector<std::int32_t>{-1, -3, -1, -1, -3}));
  const std::vector<std::uint32_t> off = {0, 2, 2, 3, 3, 5};
  const std::vector<std::uint32_t> idx = {0, 2, 4, 2, 3};
  k.gather_add(d.data(), 1, off.data(), idx.data(), src.data(), 5);
  EXPECT_EQ(d, (std::vector<std::int32_t>{1, -3, -1, -1, -1}));
  k.clamp01(d.data(), d.size());
  EXPECT_EQ(d, (std::vector<std::int32_t>{1, 0, 0, 0, 0}));
  const std::vector<std::int32_t> mixed = {0, 1, 2, -1, 1, 0, 7};
  EXPECT_EQ(k.count_nonbinary(mixed.data(), mixed.size()), 3u);
}

TEST(Kernels, Dispatch) {
  EXPECT_TRUE(cpu_supports(Isa::kScalar));
  force_isa(Isa::kScalar);
  EXPECT_EQ(active_kernels().isa, Isa::kScalar);
  force_isa(std::nullopt);
  if (vector_table()) {
    EXPECT_EQ(active_kernels().isa, Isa::kAvx2);
  } else {
    EXPECT_THROW(force_isa(Isa::kAvx2), std::exception);
  }
  EXPECT_EQ(isa_name(Isa::kScalar), "scalar");
  EXPECT_EQ(isa_name(Isa::kAvx2), "avx2");
}

class KernelEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(KernelEquivalence, Avx2MatchesScalar) {
  const KernelTable* v = vector_table();
  if (!v) GTEST_SKIP() << "AVX2 variant unavailable";
  const KernelTable& s = scalar_kernels();
  testing::Rng rng(11 + GetParam());
  // Lengths straddle the 8-lane boundary and the scalar tails.
  const std::size_t n = rng.between(0, 3) == 0 ? rng.between(0, 17) : rng.between(0, 300);

  auto a = random_values(rng, n, -5, 5);
  auto b = a;
  const std::int32_t fillv = static_cast<std::int32_t>(rng.between(0, 6)) - 3;
  s.fill(a.data(), fillv, n);
  v->fill(b.data(), fillv, n);
  ASSERT_EQ(a, b);

  const auto src = random_values(rng, n, -2, 3);
  const std::int32_t w = static_cast<std::int32_t>(rng.between(0, 4)) - 2;
  s.axpy(a.data(), w, src.data(), n);
  v->axpy(b.data(), w, src.data(), n);
  ASSERT_EQ(a, b);

  std::vector<std::uint32_t> off(n + 1, 0);
  std::vector<std::uint32_t> idx;
  for (std::size_t r = 0; r < n; ++r) {
    // Mix short rows with rows long enough for the gather path.
    const std::size_t deg = rng.coin(0.2) ? rng.between(8, 40) : rng.between(0, 7);
    for (std::size_t j = 0; j < deg; ++j) idx.push_back(static_cast<std::uint32_t>(rng.below(n)));
    off[r + 1] = static_cast<std::uint32_t>(idx.size());
  }
  s.gather_add(a.data(), w, off.data(), idx.data(), src.data(), n);
  v->gather_add(b.data(), w, off.data(), idx.data(), src.data(), n);
  ASSERT_EQ(a, b);

  EXPECT_EQ(s.count_nonbinary(a.data(), n), v->count_nonbinary(b.data(), n));
  s.clamp01(a.data(), n);
  v->clamp01(b.data(), n);
  ASSERT_EQ(a, b);
  EXPECT_EQ(v->count_nonbinary(b.data(), n), 0u);
}

INSTANTIATE_TEST_SUITE_P(Random, KernelEquivalence, ::testing::Range(0, 60));

}  // namespace
}  // namespace cmlkg::simd
