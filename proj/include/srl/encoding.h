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

// Sentence-level subword encoding and the tagger backend abstraction.

#ifndef SRL_ENCODING_H_
#define SRL_ENCODING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srl/instance.h"
#include "srl/model_input.h"

namespace srl {

struct SubwordVocab {
  SubwordId cls = 101;
  SubwordId sep = 102;
  SubwordId pad = 0;
  std::size_t size = 30522;

  bool IsSpecial(SubwordId id) const {
    return id == cls || id == sep || id == pad;
  }
};

// Subword ids of a sentence without special tokens, plus the position of
// every word's first piece inside "[CLS] sentence ...": entry k equals
// 1 + (number of pieces of words 0..k-1).
struct EncodedSentence {
  std::vector<SubwordId> subword_ids;
  std::vector<std::int32_t> first_subword_index_per_word;

  friend bool operator==(const EncodedSentence &,
                         const EncodedSentence &) = default;
};

// A subword tokenizer plus a predicate-conditioned tagger.
//
// Implementations must be deterministic and Tokenize must not depend on
// context. Callers never issue concurrent calls on one instance.
class TaggerBackend {
 public:
  virtual ~TaggerBackend() = default;

  virtual std::vector<SubwordId> Tokenize(std::string_view word) = 0;

  // One RowScores per batch row, holding one score vector per entry of
  // that row's first_subword_indices.
  virtual ScoreTensor Forward(const Batch &batch) = 0;

  virtual const SubwordVocab &vocab() const = 0;

  // Label vocabulary; score vectors are indexed in this order.
  virtual const std::vector<std::string> &labels() const = 0;
};

// Tokenizes every word exactly once. Throws StructuralError on an empty
// sentence and EncodingError when a word yields no pieces.
EncodedSentence EncodeSentenceOnce(std::span<const Token> words,
                                   TaggerBackend &backend);

// Deterministic stand-in for a transformer tagger.
//
// Tokenize splits a word into consecutive 4-character pieces (UTF-8 code
// points) and maps each piece to a seeded hash modulo the vocabulary size,
// skipping the special ids. Forward scores every (row, word, label) with a
// seeded hash of the row's unpadded ids and segment ids, its predicate
// position and the word position, plus a fixed bias toward "O" and toward
// "B-V" on the predicate word.
class MockBackend : public TaggerBackend {
 public:
  static constexpr std::size_t kPieceLength = 4;

  explicit MockBackend(std::uint64_t seed = 0);

  std::vector<SubwordId> Tokenize(std::string_view word) override;
  ScoreTensor Forward(const Batch &batch) override;
  const SubwordVocab &vocab() const override { return vocab_; }
  const std::vector<std::string> &labels() const override { return labels_; }

  // The textual pieces Tokenize hashes; exposed for tests.
  static std::vector<std::string> SplitPieces(std::string_view word);

  static const std::vector<std::string> &DefaultLabels();

 private:
  std::uint64_t seed_;
  SubwordVocab vocab_;
  std::vector<std::string> labels_;
  std::size_t outside_label_ = 0;
  std::size_t predicate_label_ = 0;
};

// Forwards to another backend and counts calls.
class InstrumentedBackend : public TaggerBackend {
 public:
  explicit InstrumentedBackend(TaggerBackend &inner) : inner_(inner) {}

  std::vector<SubwordId> Tokenize(std::string_view word) override {
    ++tokenize_calls_;
    return inner_.Tokenize(word);
  }
  ScoreTensor Forward(const Batch &batch) override {
    ++forward_calls_;
    forward_rows_ += batch.rows;
    return inner_.Forward(batch);
  }
  const SubwordVocab &vocab() const override { return inner_.vocab(); }
  const std::vector<std::string> &labels() const override {
    return inner_.labels();
  }

  std::size_t tokenize_calls() const { return tokenize_calls_; }
  std::size_t forward_calls() const { return forward_calls_; }
  std::size_t forward_rows() const { return forward_rows_; }
  void Reset() { tokenize_calls_ = forward_calls_ = forward_rows_ = 0; }

 private:
  TaggerBackend &inner_;
  std::size_t tokenize_calls_ = 0;
  std::size_t forward_calls_ = 0;
  std::size_t forward_rows_ = 0;
};

// 64-bit mixing used by the mock backend; exposed so tests can rebuild
// expected ids by hand.
std::uint64_t MixHash(std::uint64_t state, std::uint64_t value);
std::uint64_t HashBytes(std::uint64_t seed, std::string_view bytes);

}  // namespace srl

#endif  // SRL_ENCODING_H_
