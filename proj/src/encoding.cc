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

#include "srl/encoding.h"

#include <algorithm>

#include "srl/error.h"

namespace srl {

namespace {

constexpr float kOutsideBias = 0.35f;
constexpr float kPredicateBias = 1.0f;

std::size_t Utf8Length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;  // stray continuation byte; treat as one unit
}

// Top 24 bits as a float in [0, 1).
float UnitFloat(std::uint64_t h) {
  return static_cast<float>(h >> 40) * (1.0f / 16777216.0f);
}

}  // namespace

std::uint64_t MixHash(std::uint64_t state, std::uint64_t value) {
  // splitmix64 finalizer over the combined word.
  std::uint64_t z = state ^ (value + 0x9e3779b97f4a7c15ULL + (state << 6) +
                             (state >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t HashBytes(std::uint64_t seed, std::string_view bytes) {
  // FNV-1a, then mixed with the seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return MixHash(seed, h);
}

EncodedSentence EncodeSentenceOnce(std::span<const Token> words,
                                   TaggerBackend &backend) {
  if (words.empty()) throw StructuralError("cannot encode an empty sentence");
  EncodedSentence encoded;
  encoded.first_subword_index_per_word.reserve(words.size());
  for (const Token &word : words) {
    std::vector<SubwordId> pieces = backend.Tokenize(word.text);
    if (pieces.empty()) {
      throw EncodingError("word '" + word.text + "' at position " +
                          std::to_string(word.index) +
                          " tokenized to zero subwords");
    }
    encoded.first_subword_index_per_word.push_back(
        static_cast<std::int32_t>(encoded.subword_ids.size() + 1));
    encoded.subword_ids.insert(encoded.subword_ids.end(), pieces.begin(),
                               pieces.end());
  }
  return encoded;
}

const std::vector<std::string> &MockBackend::DefaultLabels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> out = {"O"};
    const std::vector<std::string> roles = {
        "V",        "ARG0",     "ARG1",     "ARG2",     "ARG3",
        "ARG4",     "ARG5",     "ARGM-ADV", "ARGM-DIR", "ARGM-DIS",
        "ARGM-EXT", "ARGM-LOC", "ARGM-MNR", "ARGM-MOD", "ARGM-NEG",
        "ARGM-PRD", "ARGM-PRP", "ARGM-TMP", "R-ARG0",   "R-ARG1",
        "C-ARG1"};
    for (const auto &role : roles) {
      out.push_back("B-" + role);
      out.push_back("I-" + role);
    }
    return out;
  }();
  return labels;
}

MockBackend::MockBackend(std::uint64_t seed)
    : seed_(seed), labels_(DefaultLabels()) {
  outside_label_ = static_cast<std::size_t>(
      std::find(labels_.begin(), labels_.end(), "O") - labels_.begin());
  predicate_label_ = static_cast<std::size_t>(
      std::find(labels_.begin(), labels_.end(), "B-V") - labels_.begin());
}

std::vector<std::string> MockBackend::SplitPieces(std::string_view word) {
  std::vector<std::string> pieces;
  std::string current;
  std::size_t chars = 0;
  for (std::size_t i = 0; i < word.size();) {
    const std::size_t n =
        std::min(Utf8Length(static_cast<unsigned char>(word[i])),
                 word.size() - i);
    current.append(word.substr(i, n));
    i += n;
    if (++chars == kPieceLength) {
      pieces.push_back(std::move(current));
      current.clear();
      chars = 0;
    }
  }
  if (!current.empty()) pieces.push_back(std::move(current));
  return pieces;
}

std::vector<SubwordId> MockBackend::Tokenize(std::string_view word) {
  std::vector<SubwordId> ids;
  for (const auto &piece : SplitPieces(word)) {
    auto id = static_cast<SubwordId>(HashBytes(seed_, piece) % vocab_.size);
    while (vocab_.IsSpecial(id)) {
      id = static_cast<SubwordId>((id + 1) % vocab_.size);
    }
    ids.push_back(id);
  }
  return ids;
}

ScoreTensor MockBackend::Forward(const Batch &batch) {
  ScoreTensor out;
  out.reserve(batch.rows);
  for (std::size_t r = 0; r < batch.rows; ++r) {
    const std::size_t length = batch.row_length(r);
    const auto ids = batch.row_ids(r);
    const auto segments = batch.row_segments(r);
    std::uint64_t h = MixHash(seed_, 0x5eed);
    for (std::size_t p = 0; p < length; ++p) {
      h = MixHash(h, static_cast<std::uint64_t>(ids[p]));
      h = MixHash(h, static_cast<std::uint64_t>(segments[p]));
    }
    const std::size_t predicate = batch.predicate_word_index[r];
    h = MixHash(h, predicate);

    const auto &firsts = batch.first_subword_indices[r];
    RowScores scores;
    scores.words = firsts.size();
    scores.labels = labels_.size();
    scores.values.resize(scores.words * scores.labels);
    for (std::size_t w = 0; w < firsts.size(); ++w) {
      if (firsts[w] < 0 || static_cast<std::size_t>(firsts[w]) >= length) {
        throw BoundsError("first subword index " + std::to_string(firsts[w]) +
                          " outside row " + std::to_string(r) +
                          " of length " + std::to_string(length));
      }
      const std::uint64_t hw =
          MixHash(MixHash(h, w), static_cast<std::uint64_t>(firsts[w]));
      float *row = scores.values.data() + w * scores.labels;
      for (std::size_t l = 0; l < scores.labels; ++l) {
        row[l] = UnitFloat(MixHash(hw, l));
      }
      row[outside_label_] += kOutsideBias;
      if (w == predicate) row[predicate_label_] += kPredicateBias;
    }
    out.push_back(std::move(scores));
  }
  return out;
}

}  // namespace srl
