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

// Predicate-conditioned tagging.
//
// Two assembly paths build the same model inputs:
//
//  * baseline: every predicate gets its own instance, so the sentence is
//    re-tokenized once per predicate;
//  * cached: the sentence is tokenized once and its subword ids are reused
//    verbatim for every predicate; only the predicate word is tokenized per
//    instance.
//
// Both stack all predicates of a sentence into one batch and read per-word
// scores at each word's first subword.

#ifndef SRL_INFERENCE_H_
#define SRL_INFERENCE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "srl/bio.h"
#include "srl/encoding.h"
#include "srl/instance.h"
#include "srl/model_input.h"

namespace srl {

enum class InferenceMode { kCached, kBaseline };

const char *InferenceModeName(InferenceMode mode);

// Call accounting, split by purpose.
struct InferenceStats {
  std::size_t sentences = 0;
  std::size_t predicates = 0;
  std::size_t sentence_tokenize_calls = 0;
  std::size_t predicate_tokenize_calls = 0;
  std::size_t forward_calls = 0;
  std::size_t forward_rows = 0;

  std::size_t tokenize_calls() const {
    return sentence_tokenize_calls + predicate_tokenize_calls;
  }
  void Merge(const InferenceStats &other);
  nlohmann::ordered_json ToJson() const;

  friend bool operator==(const InferenceStats &,
                         const InferenceStats &) = default;
};

// Throws BoundsError naming an out-of-range index and StructuralError on a
// repeated index.
void CheckPredicateIndices(std::span<const std::size_t> predicates,
                           std::size_t word_count);

std::vector<ModelInput> BuildInputsCached(
    const EncodedSentence &encoded, std::span<const Token> words,
    std::span<const std::size_t> predicates, TaggerBackend &backend,
    InferenceStats *stats = nullptr);

std::vector<ModelInput> BuildInputsBaseline(
    std::span<const Token> words, std::span<const std::size_t> predicates,
    TaggerBackend &backend, InferenceStats *stats = nullptr);

struct PredicateTags {
  std::size_t predicate_word_index = 0;
  BioSequence tags;

  friend bool operator==(const PredicateTags &,
                         const PredicateTags &) = default;
};

struct TaggedSentence {
  std::vector<Token> words;
  std::vector<PredicateTags> frames;  // in requested predicate order

  friend bool operator==(const TaggedSentence &,
                         const TaggedSentence &) = default;
};

struct PredictOptions {
  InferenceMode mode = InferenceMode::kCached;
  // Upper bound on rows per forward call; 0 keeps one batch per sentence.
  std::size_t max_batch = 0;
  // Prefixed to errors raised by the backend.
  std::string batch_id;
};

// Tags every requested predicate. Per-word argmax over the backend scores,
// then span-initial I-X tags are promoted to B-X. Backend errors are
// rethrown with the batch id prepended; malformed score tensors raise
// ProtocolError.
TaggedSentence PredictSrl(std::span<const Token> words,
                          std::span<const std::size_t> predicates,
                          TaggerBackend &backend,
                          const PredictOptions &options = {},
                          InferenceStats *stats = nullptr);

}  // namespace srl

#endif  // SRL_INFERENCE_H_
