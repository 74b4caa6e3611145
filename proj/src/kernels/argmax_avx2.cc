// Copyright 2026 The srlkit Authors.
//
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

#include "srl/kernels/argmax.h"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace srl::kernels {

#if defined(__x86_64__) || defined(__i386__)

namespace {

constexpr std::size_t kLanes = 8;

__attribute__((target("avx2"))) inline float HorizontalMax(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  __m128 m = _mm_max_ps(lo, hi);
  m = _mm_max_ps(m, _mm_movehl_ps(m, m));
  m = _mm_max_ss(m, _mm_shuffle_ps(m, m, 0x55));
  return _mm_cvtss_f32(m);
}

// Finite values satisfy x - x == 0; NaN and +-inf give NaN.
__attribute__((target("avx2"))) inline __m256 NonFiniteMask(__m256 v) {
  return _mm256_cmp_ps(_mm256_sub_ps(v, v), _mm256_setzero_ps(),
                       _CMP_NEQ_UQ);
}

__attribute__((target("avx2"))) bool ArgmaxRow(const float *row,
                                               std::size_t cols,
                                               std::int32_t *out) {
  if (cols == 0) {
    *out = 0;
    return true;
  }
  const std::size_t body = cols - cols % kLanes;
  __m256 best = _mm256_set1_ps(row[0]);
  __m256 bad = NonFiniteMask(best);
  for (std::size_t c = 0; c < body; c += kLanes) {
    const __m256 v = _mm256_loadu_ps(row + c);
    bad = _mm256_or_ps(bad, NonFiniteMask(v));
    best = _mm256_max_ps(best, v);
  }
  if (_mm256_movemask_ps(bad) != 0) return false;

  float max_value = HorizontalMax(best);
  for (std::size_t c = body; c < cols; ++c) {
    const float x = row[c];
    if (!(x - x == 0.0f)) return false;
    if (x > max_value) max_value = x;
  }

  // First column holding the maximum.
  const __m256 target = _mm256_set1_ps(max_value);
  for (std::size_t c = 0; c < body; c += kLanes) {
    const int hits = _mm256_movemask_ps(
        _mm256_cmp_ps(_mm256_loadu_ps(row + c), target, _CMP_EQ_OQ));
    if (hits != 0) {
      *out = static_cast<std::int32_t>(c + __builtin_ctz(hits));
      return true;
    }
  }
  for (std::size_t c = body; c < cols; ++c) {
    if (row[c] == max_value) {
      *out = static_cast<std::int32_t>(c);
      return true;
    }
  }
  return false;  // unreachable for finite input
}

}  // namespace

bool ArgmaxRowsAvx2(std::span<const float> values, std::size_t cols,
                    std::span<std::int32_t> out) {
  for (std::size_t r = 0; r < out.size(); ++r) {
    if (!ArgmaxRow(values.data() + r * cols, cols, &out[r])) return false;
  }
  return true;
}

#else

bool ArgmaxRowsAvx2(std::span<const float> values, std::size_t cols,
                    std::span<std::int32_t> out) {
  return ArgmaxRowsScalar(values, cols, out);
}

#endif

}  // namespace srl::kernels
