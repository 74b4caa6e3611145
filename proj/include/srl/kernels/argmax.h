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

// Row-wise argmax over label score matrices.
//
// The scalar kernel is the reference. The AVX2 kernel is selected at run
// time when the CPU supports it and must agree with the reference bit for
// bit: ties resolve to the lowest column and any non-finite value makes the
// whole call fail. SRL_SIMD=scalar in the environment pins the reference.

#ifndef SRL_KERNELS_ARGMAX_H_
#define SRL_KERNELS_ARGMAX_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace srl::kernels {

enum class Isa { kScalar, kAvx2 };

const char *IsaName(Isa isa);

// Best kernel the running CPU supports.
Isa DetectIsa();

// Kernel used by ArgmaxRows: the override if set, else SRL_SIMD, else
// DetectIsa(). Forcing an unsupported ISA falls back to scalar.
Isa ActiveIsa();
void ForceIsa(std::optional<Isa> isa);

// `values` holds out.size() rows of `cols` floats. Writes each row's argmax
// to `out`. Returns false if any value is NaN or infinite (out is then
// unspecified). Requires cols > 0 and values.size() == out.size() * cols.
bool ArgmaxRowsScalar(std::span<const float> values, std::size_t cols,
                      std::span<std::int32_t> out);
bool ArgmaxRowsAvx2(std::span<const float> values, std::size_t cols,
                    std::span<std::int32_t> out);

bool ArgmaxRows(std::span<const float> values, std::size_t cols,
                std::span<std::int32_t> out);

}  // namespace srl::kernels

#endif  // SRL_KERNELS_ARGMAX_H_
