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

#ifndef SRL_INSTANCE_H_
#define SRL_INSTANCE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "srl/bio.h"

namespace srl {

using Json = nlohmann::ordered_json;

struct Token {
  std::string text;
  std::size_t index = 0;

  friend bool operator==(const Token &, const Token &) = default;
};

// Builds densely indexed tokens. Throws FormatError on empty text or
// embedded whitespace.
std::vector<Token> MakeTokens(std::span<const std::string> texts);
std::vector<std::string> TokenTexts(std::span<const Token> tokens);

// One predicate's view of a sentence: the JSON-lines record
//   {"words": [...], "predicate_word_idx": 1, "labels": [...]}
struct SrlInstance {
  std::vector<Token> words;
  std::size_t predicate_word_idx = 0;
  BioSequence labels;

  friend bool operator==(const SrlInstance &, const SrlInstance &) = default;
};

// Checks |labels| == |words| and the predicate index range.
void CheckInstance(const SrlInstance &instance);

// Field names as they appear on the wire.
inline constexpr std::string_view kWordsField = "words";
inline constexpr std::string_view kPredicateField = "predicate_word_idx";
inline constexpr std::string_view kLabelsField = "labels";
inline constexpr std::string_view kPredictedField = "predicted_labels";

// Reads an instance, taking tags from `label_field`. Extra fields are
// ignored. Throws FormatError on missing or ill-typed fields.
SrlInstance InstanceFromJson(const Json &object,
                             std::string_view label_field = kLabelsField);

// "predicted_labels" when present, else "labels".
std::string_view PreferredLabelField(const Json &object);

Json InstanceToJson(const SrlInstance &instance);

// JSON Lines helpers. Blank lines are skipped. Throws IoError when the
// file cannot be opened and FormatError (with line number) on bad JSON.
std::vector<Json> ReadJsonLines(const std::filesystem::path &path);
std::vector<Json> ReadJsonLines(std::istream &in, std::string_view name);
void WriteJsonLines(const std::filesystem::path &path,
                    std::span<const Json> lines);

// Consecutive instances that share a sentence. A new group starts when the
// words change or a predicate index repeats.
struct SentenceGroup {
  std::vector<Token> words;
  std::vector<std::size_t> members;  // indices into the instance list
};

std::vector<SentenceGroup> GroupSentences(
    std::span<const SrlInstance> instances);

}  // namespace srl

#endif  // SRL_INSTANCE_H_
