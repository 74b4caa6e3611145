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

// Predicate-conditioned model inputs and the padded batch handed to a
// backend's forward pass.

#ifndef SRL_MODEL_INPUT_H_
#define SRL_MODEL_INPUT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace srl {

using SubwordId = std::int32_t;

// [CLS] sentence [SEP] predicate [SEP]
//
// segment_ids are 0 over CLS, the sentence and the first SEP, and 1 over
// the predicate pieces and the final SEP. first_subword_indices point into
// `ids` (the leading CLS is already accounted for).
struct ModelInput {
  std::vector<SubwordId> ids;
  std::vector<std::int32_t> segment_ids;
  std::vector<std::int32_t> attention_mask;
  std::size_t predicate_word_index = 0;
  std::vector<std::int32_t> first_subword_indices;

  std::size_t size() const { return ids.size(); }

  friend bool operator==(const ModelInput &, const ModelInput &) = default;
};

// Row-major padded batch. Padding uses the PAD id, segment 0 and mask 0.
struct Batch {
  std::size_t rows = 0;
  std::size_t width = 0;
  std::vector<SubwordId> ids;
  std::vector<std::int32_t> segment_ids;
  std::vector<std::int32_t> attention_mask;
  std::vector<std::size_t> predicate_word_index;
  std::vector<std::vector<std::int32_t>> first_subword_indices;

  std::span<const SubwordId> row_ids(std::size_t r) const {
    return {ids.data() + r * width, width};
  }
  std::span<const std::int32_t> row_segments(std::size_t r) const {
    return {segment_ids.data() + r * width, width};
  }
  std::span<const std::int32_t> row_mask(std::size_t r) const {
    return {attention_mask.data() + r * width, width};
  }
  // Number of leading mask-1 positions of row r.
  std::size_t row_length(std::size_t r) const;

  friend bool operator==(const Batch &, const Batch &) = default;
};

// Pads every input to the longest one. Throws StructuralError on an empty
// list or on inputs whose three parallel vectors disagree in length.
Batch PadAndStack(std::span<const ModelInput> inputs, SubwordId pad_id);

// Inverse of PadAndStack: recovers the unpadded rows from the masks.
std::vector<ModelInput> UnstackBatch(const Batch &batch);

// Per-word label scores for one batch row, [word][label] row-major.
struct RowScores {
  std::size_t words = 0;
  std::size_t labels = 0;
  std::vector<float> values;

  std::span<const float> word(std::size_t w) const {
    return {values.data() + w * labels, labels};
  }

  friend bool operator==(const RowScores &, const RowScores &) = default;
};

using ScoreTensor = std::vector<RowScores>;

}  // namespace srl

#endif  // SRL_MODEL_INPUT_H_
