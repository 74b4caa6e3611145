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

#include "srl/instance.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "srl/error.h"

namespace srl {

std::vector<Token> MakeTokens(std::span<const std::string> texts) {
  std::vector<Token> tokens;
  tokens.reserve(texts.size());
  for (const auto &text : texts) {
    if (text.empty()) {
      throw FormatError("empty token at position " +
                        std::to_string(tokens.size()));
    }
    if (std::any_of(text.begin(), text.end(), [](char c) {
          return std::isspace(static_cast<unsigned char>(c));
        })) {
      throw FormatError("token '" + text + "' contains whitespace");
    }
    tokens.push_back(Token{text, tokens.size()});
  }
  return tokens;
}

std::vector<std::string> TokenTexts(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto &token : tokens) out.push_back(token.text);
  return out;
}

void CheckInstance(const SrlInstance &instance) {
  if (instance.labels.size() != instance.words.size()) {
    throw StructuralError("instance has " +
                          std::to_string(instance.words.size()) +
                          " words but " +
                          std::to_string(instance.labels.size()) + " labels");
  }
  if (instance.predicate_word_idx >= instance.words.size()) {
    throw BoundsError("predicate_word_idx " +
                      std::to_string(instance.predicate_word_idx) +
                      " outside sentence of length " +
                      std::to_string(instance.words.size()));
  }
}

std::string_view PreferredLabelField(const Json &object) {
  return object.contains(kPredictedField) ? kPredictedField : kLabelsField;
}

SrlInstance InstanceFromJson(const Json &object,
                             std::string_view label_field) {
  const std::string words_key(kWordsField);
  const std::string pred_key(kPredicateField);
  const std::string label_key(label_field);
  if (!object.is_object() || !object.contains(words_key) ||
      !object.contains(pred_key) || !object.contains(label_key)) {
    throw FormatError("instance must carry '" + words_key + "', '" +
                      pred_key + "' and '" + label_key + "'");
  }
  try {
    SrlInstance instance;
    instance.words =
        MakeTokens(object.at(words_key).get<std::vector<std::string>>());
    const auto &pred = object.at(pred_key);
    if (!pred.is_number_integer() || pred.get<long long>() < 0) {
      throw FormatError("'" + pred_key + "' must be a non-negative integer");
    }
    instance.predicate_word_idx = pred.get<std::size_t>();
    instance.labels = ParseBioSequence(
        object.at(label_key).get<std::vector<std::string>>());
    CheckInstance(instance);
    return instance;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("bad instance field: ") + e.what());
  }
}

Json InstanceToJson(const SrlInstance &instance) {
  Json object;
  object[std::string(kWordsField)] = TokenTexts(instance.words);
  object[std::string(kPredicateField)] = instance.predicate_word_idx;
  object[std::string(kLabelsField)] = BioStrings(instance.labels);
  return object;
}

std::vector<Json> ReadJsonLines(std::istream &in, std::string_view name) {
  std::vector<Json> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (std::all_of(line.begin(), line.end(), [](char c) {
          return std::isspace(static_cast<unsigned char>(c));
        })) {
      continue;
    }
    try {
      lines.push_back(Json::parse(line));
    } catch (const nlohmann::json::parse_error &e) {
      throw FormatError(std::string(name) + ":" + std::to_string(number) +
                        ": " + e.what());
    }
  }
  return lines;
}

std::vector<Json> ReadJsonLines(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return ReadJsonLines(in, path.string());
}

void WriteJsonLines(const std::filesystem::path &path,
                    std::span<const Json> lines) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const auto &line : lines) out << line.dump() << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<SentenceGroup> GroupSentences(
    std::span<const SrlInstance> instances) {
  std::vector<SentenceGroup> groups;
  std::set<std::size_t> predicates;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const SrlInstance &instance = instances[i];
    bool same = !groups.empty() && groups.back().words == instance.words &&
                !predicates.contains(instance.predicate_word_idx);
    if (!same) {
      groups.push_back(SentenceGroup{instance.words, {}});
      predicates.clear();
    }
    groups.back().members.push_back(i);
    predicates.insert(instance.predicate_word_idx);
  }
  return groups;
}

}  // namespace srl
