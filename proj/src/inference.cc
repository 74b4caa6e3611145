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

#include "srl/inference.h"

#include <algorithm>
#include <set>

#include "srl/error.h"
#include "srl/kernels/argmax.h"

namespace srl {

namespace {

ModelInput AssembleInput(const EncodedSentence &sentence,
                         std::span<const SubwordId> predicate_pieces,
                         std::size_t predicate, const SubwordVocab &vocab) {
  ModelInput input;
  const std::size_t sent = sentence.subword_ids.size();
  const std::size_t pred = predicate_pieces.size();
  input.ids.reserve(sent + pred + 3);
  input.ids.push_back(vocab.cls);
  input.ids.insert(input.ids.end(), sentence.subword_ids.begin(),
                   sentence.subword_ids.end());
  input.ids.push_back(vocab.sep);
  input.ids.insert(input.ids.end(), predicate_pieces.begin(),
                   predicate_pieces.end());
  input.ids.push_back(vocab.sep);

  input.segment_ids.assign(1 + sent + 1, 0);
  input.segment_ids.resize(input.ids.size(), 1);
  input.attention_mask.assign(input.ids.size(), 1);
  input.predicate_word_index = predicate;
  input.first_subword_indices = sentence.first_subword_index_per_word;
  return input;
}

std::vector<SubwordId> TokenizePredicate(std::span<const Token> words,
                                         std::size_t predicate,
                                         TaggerBackend &backend,
                                         InferenceStats *stats) {
  std::vector<SubwordId> pieces = backend.Tokenize(words[predicate].text);
  if (stats) ++stats->predicate_tokenize_calls;
  if (pieces.empty()) {
    throw EncodingError("predicate '" + words[predicate].text +
                        "' tokenized to zero subwords");
  }
  return pieces;
}

EncodedSentence EncodeCounted(std::span<const Token> words,
                              TaggerBackend &backend, InferenceStats *stats) {
  EncodedSentence encoded = EncodeSentenceOnce(words, backend);
  if (stats) stats->sentence_tokenize_calls += words.size();
  return encoded;
}

std::vector<BioTag> ParseLabelVocabulary(
    const std::vector<std::string> &labels) {
  std::vector<BioTag> tags;
  tags.reserve(labels.size());
  for (const auto &label : labels) {
    try {
      tags.push_back(BioTag::Parse(label));
    } catch (const FormatError &e) {
      throw ProtocolError(std::string("backend label vocabulary: ") +
                          e.what());
    }
  }
  return tags;
}

}  // namespace

const char *InferenceModeName(InferenceMode mode) {
  return mode == InferenceMode::kCached ? "cached" : "baseline";
}

void InferenceStats::Merge(const InferenceStats &other) {
  sentences += other.sentences;
  predicates += other.predicates;
  sentence_tokenize_calls += other.sentence_tokenize_calls;
  predicate_tokenize_calls += other.predicate_tokenize_calls;
  forward_calls += other.forward_calls;
  forward_rows += other.forward_rows;
}

nlohmann::ordered_json InferenceStats::ToJson() const {
  return {{"sentences", sentences},
          {"predicates", predicates},
          {"sentence_tokenize_calls", sentence_tokenize_calls},
          {"predicate_tokenize_calls", predicate_tokenize_calls},
          {"tokenize_calls", tokenize_calls()},
          {"forward_calls", forward_calls},
          {"forward_rows", forward_rows}};
}

void CheckPredicateIndices(std::span<const std::size_t> predicates,
                           std::size_t word_count) {
  std::set<std::size_t> seen;
  for (std::size_t p : predicates) {
    if (p >= word_count) {
      throw BoundsError("predicate index " + std::to_string(p) +
                        " outside sentence of length " +
                        std::to_string(word_count));
    }
    if (!seen.insert(p).second) {
      throw StructuralError("duplicate predicate index " + std::to_string(p));
    }
  }
}

std::vector<ModelInput> BuildInputsCached(
    const EncodedSentence &encoded, std::span<const Token> words,
    std::span<const std::size_t> predicates, TaggerBackend &backend,
    InferenceStats *stats) {
  CheckPredicateIndices(predicates, words.size());
  if (encoded.first_subword_index_per_word.size() != words.size()) {
    throw StructuralError("encoded sentence does not match word count");
  }
  std::vector<ModelInput> inputs;
  inputs.reserve(predicates.size());
  for (std::size_t p : predicates) {
    const auto pieces = TokenizePredicate(words, p, backend, stats);
    inputs.push_back(AssembleInput(encoded, pieces, p, backend.vocab()));
  }
  return inputs;
}

std::vector<ModelInput> BuildInputsBaseline(
    std::span<const Token> words, std::span<const std::size_t> predicates,
    TaggerBackend &backend, InferenceStats *stats) {
  CheckPredicateIndices(predicates, words.size());
  std::vector<ModelInput> inputs;
  inputs.reserve(predicates.size());
  for (std::size_t p : predicates) {
    const EncodedSentence sentence = EncodeCounted(words, backend, stats);
    const auto pieces = TokenizePredicate(words, p, backend, stats);
    inputs.push_back(AssembleInput(sentence, pieces, p, backend.vocab()));
  }
  return inputs;
}

TaggedSentence PredictSrl(std::span<const Token> words,
                          std::span<const std::size_t> predicates,
                          TaggerBackend &backend,
                          const PredictOptions &options,
                          InferenceStats *stats) {
  TaggedSentence tagged;
  tagged.words.assign(words.begin(), words.end());
  CheckPredicateIndices(predicates, words.size());
  if (stats) {
    ++stats->sentences;
    stats->predicates += predicates.size();
  }
  if (predicates.empty()) return tagged;

  std::vector<ModelInput> inputs;
  if (options.mode == InferenceMode::kCached) {
    const EncodedSentence encoded = EncodeCounted(words, backend, stats);
    inputs = BuildInputsCached(encoded, words, predicates, backend, stats);
  } else {
    inputs = BuildInputsBaseline(words, predicates, backend, stats);
  }

  const std::vector<BioTag> vocabulary =
      ParseLabelVocabulary(backend.labels());
  const std::size_t chunk =
      options.max_batch == 0 ? inputs.size() : options.max_batch;

  for (std::size_t begin = 0; begin < inputs.size(); begin += chunk) {
    const std::size_t end = std::min(inputs.size(), begin + chunk);
    const std::span<const ModelInput> rows(inputs.data() + begin,
                                           end - begin);
    const std::string batch_name =
        (options.batch_id.empty() ? std::string("batch") : options.batch_id) +
        "#" + std::to_string(begin / chunk);

    const Batch batch = PadAndStack(rows, backend.vocab().pad);
    ScoreTensor scores;
    try {
      scores = backend.Forward(batch);
    } catch (const Error &e) {
      throw Error(e.code(), batch_name + ": " + e.what());
    }
    if (stats) {
      ++stats->forward_calls;
      stats->forward_rows += batch.rows;
    }
    if (scores.size() != batch.rows) {
      throw ProtocolError(batch_name + ": backend returned " +
                          std::to_string(scores.size()) + " rows for " +
                          std::to_string(batch.rows));
    }

    for (std::size_t r = 0; r < batch.rows; ++r) {
      const RowScores &row = scores[r];
      if (row.words != words.size() || row.labels != vocabulary.size() ||
          row.values.size() != row.words * row.labels) {
        throw ProtocolError(batch_name + ": score row " + std::to_string(r) +
                            " has shape " + std::to_string(row.words) + "x" +
                            std::to_string(row.labels) + ", expected " +
                            std::to_string(words.size()) + "x" +
                            std::to_string(vocabulary.size()));
      }
      std::vector<std::int32_t> best(row.words);
      if (!kernels::ArgmaxRows(row.values, row.labels, best)) {
        throw ProtocolError(batch_name + ": non-finite score in row " +
                            std::to_string(r));
      }
      BioSequence tags;
      tags.reserve(best.size());
      for (std::int32_t label : best) tags.push_back(vocabulary[label]);
      tagged.frames.push_back(
          PredicateTags{rows[r].predicate_word_index, RepairOrphans(tags)});
    }
  }
  return tagged;
}

}  // namespace srl
