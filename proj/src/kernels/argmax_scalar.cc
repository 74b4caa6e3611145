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

#include <cmath>
#include <cstdlib>
#include <string_view>

#include "srl/kernels/argmax.h"

namespace srl::kernels {

namespace {

std::optional<Isa> g_forced;

bool CpuHasAvx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

const char *IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa DetectIsa() { return CpuHasAvx2() ? Isa::kAvx2 : Isa::kScalar; }

Isa ActiveIsa() {
  Isa wanted = DetectIsa();
  if (g_forced) {
    wanted = *g_forced;
  } else if (const char *env = std::getenv("SRL_SIMD")) {
    if (std::string_view(env) == "scalar") wanted = Isa::kScalar;
  }
  if (wanted == Isa::kAvx2 && !CpuHasAvx2()) return Isa::kScalar;
  return wanted;
}

void ForceIsa(std::optional<Isa> isa) { g_forced = isa; }

bool ArgmaxRowsScalar(std::span<const float> values, std::size_t cols,
                      std::span<std::int32_t> out) {
  for (std::size_t r = 0; r < out.size(); ++r) {
    const float *row = values.data() + r * cols;
    std::size_t best = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (!std::isfinite(row[c])) return false;
      if (row[c] > row[best]) best = c;
    }
    out[r] = static_cast<std::int32_t>(best);
  }
  return true;
}

bool ArgmaxRows(std::span<const float> values, std::size_t cols,
                std::span<std::int32_t> out) {
  if (ActiveIsa() == Isa::kAvx2) return ArgmaxRowsAvx2(values, cols, out);
  return ArgmaxRowsScalar(values, cols, out);
}

}  // namespace srl::kernels
