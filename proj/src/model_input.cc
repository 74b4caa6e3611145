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

#include "srl/model_input.h"

#include <algorithm>
#include <string>

#include "srl/error.h"

namespace srl {

std::size_t Batch::row_length(std::size_t r) const {
  const auto mask = row_mask(r);
  return static_cast<std::size_t>(
      std::find(mask.begin(), mask.end(), 0) - mask.begin());
}

Batch PadAndStack(std::span<const ModelInput> inputs, SubwordId pad_id) {
  if (inputs.empty()) throw StructuralError("cannot stack an empty batch");
  Batch batch;
  batch.rows = inputs.size();
  for (const auto &input : inputs) {
    if (input.segment_ids.size() != input.ids.size() ||
        input.attention_mask.size() != input.ids.size()) {
      throw StructuralError("model input fields differ in length");
    }
    batch.width = std::max(batch.width, input.ids.size());
  }
  batch.ids.assign(batch.rows * batch.width, pad_id);
  batch.segment_ids.assign(batch.rows * batch.width, 0);
  batch.attention_mask.assign(batch.rows * batch.width, 0);
  for (std::size_t r = 0; r < batch.rows; ++r) {
    const ModelInput &input = inputs[r];
    const std::size_t offset = r * batch.width;
    std::copy(input.ids.begin(), input.ids.end(), batch.ids.begin() + offset);
    std::copy(input.segment_ids.begin(), input.segment_ids.end(),
              batch.segment_ids.begin() + offset);
    std::copy(input.attention_mask.begin(), input.attention_mask.end(),
              batch.attention_mask.begin() + offset);
    batch.predicate_word_index.push_back(input.predicate_word_index);
    batch.first_subword_indices.push_back(input.first_subword_indices);
  }
  return batch;
}

std::vector<ModelInput> UnstackBatch(const Batch &batch) {
  std::vector<ModelInput> inputs;
  inputs.reserve(batch.rows);
  for (std::size_t r = 0; r < batch.rows; ++r) {
    const std::size_t n = batch.row_length(r);
    ModelInput input;
    const auto ids = batch.row_ids(r).first(n);
    const auto segments = batch.row_segments(r).first(n);
    const auto mask = batch.row_mask(r).first(n);
    input.ids.assign(ids.begin(), ids.end());
    input.segment_ids.assign(segments.begin(), segments.end());
    input.attention_mask.assign(mask.begin(), mask.end());
    input.predicate_word_index = batch.predicate_word_index[r];
    input.first_subword_indices = batch.first_subword_indices[r];
    inputs.push_back(std::move(input));
  }
  return inputs;
}

}  // namespace srl
