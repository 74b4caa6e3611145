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

#include "srl/ingest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "srl/error.h"

namespace srl {

namespace {

std::string Trim(const std::string &s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string ColumnContext(std::size_t column, std::size_t row) {
  return "column " + std::to_string(column + 1) + ", row " +
         std::to_string(row + 1);
}

}  // namespace

std::vector<ColumnSentence> ReadColumnSentences(std::istream &in) {
  std::vector<ColumnSentence> sentences;
  ColumnSentence current;
  auto flush = [&] {
    if (current.rows.empty()) return;
    current.id = sentences.size() + 1;
    sentences.push_back(std::move(current));
    current = ColumnSentence{};
  };

  std::string line;
  while (std::getline(in, line)) {
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) {
      flush();
      continue;
    }
    if (trimmed.front() == '#') continue;
    std::istringstream fields(trimmed);
    ColumnRow row;
    fields >> row.token;
    for (std::string cell; fields >> cell;) row.columns.push_back(cell);
    current.rows.push_back(std::move(row));
  }
  flush();
  return sentences;
}

std::vector<ColumnSentence> ReadColumnSentences(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return ReadColumnSentences(in);
}

ArtifactPatterns::ArtifactPatterns(std::vector<std::string> expressions)
    : expressions_(std::move(expressions)) {
  compiled_.reserve(expressions_.size());
  for (const auto &expr : expressions_) {
    try {
      compiled_.emplace_back(expr, std::regex::ECMAScript);
    } catch (const std::regex_error &e) {
      throw FormatError("invalid artifact pattern '" + expr +
                        "': " + e.what());
    }
  }
}

ArtifactPatterns ArtifactPatterns::Default() {
  return ArtifactPatterns({R"(\*.*\*(-[0-9]+)?)", R"(\*(-[0-9]+)?)",
                           R"(%[A-Za-z]+)"});
}

ArtifactPatterns ArtifactPatterns::FromFile(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::string> expressions;
  std::string line;
  while (std::getline(in, line)) {
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    expressions.push_back(trimmed);
  }
  return ArtifactPatterns(std::move(expressions));
}

bool ArtifactPatterns::IsArtifact(const std::string &token) const {
  for (const auto &re : compiled_) {
    if (std::regex_match(token, re)) return true;
  }
  return false;
}

std::vector<Token> CleanTokens(std::span<const std::string> raw,
                               const ArtifactPatterns &patterns) {
  std::vector<Token> tokens;
  for (const auto &text : raw) {
    if (patterns.IsArtifact(text)) continue;
    tokens.push_back(Token{text, tokens.size()});
  }
  return tokens;
}

std::vector<LabeledSpan> ParseBracketColumn(
    std::span<const std::string> cells) {
  std::vector<LabeledSpan> spans;
  std::vector<std::pair<RoleLabel, std::size_t>> open;
  for (std::size_t row = 0; row < cells.size(); ++row) {
    std::string_view cell = cells[row];
    // opens* '*' closes*
    while (!cell.empty() && cell.front() == '(') {
      const auto star = cell.find('*');
      const auto next_paren = cell.find('(', 1);
      const auto stop = std::min(star, next_paren);
      if (stop == std::string_view::npos) {
        throw FormatError("malformed cell '" + std::string(cells[row]) +
                          "' at row " + std::to_string(row + 1));
      }
      open.emplace_back(RoleLabel::Parse(cell.substr(1, stop - 1)), row);
      cell.remove_prefix(stop);
    }
    if (cell.empty() || cell.front() != '*') {
      throw FormatError("malformed cell '" + std::string(cells[row]) +
                        "' at row " + std::to_string(row + 1));
    }
    cell.remove_prefix(1);
    for (char c : cell) {
      if (c != ')') {
        throw FormatError("malformed cell '" + std::string(cells[row]) +
                          "' at row " + std::to_string(row + 1));
      }
      if (open.empty()) {
        throw FormatError("unbalanced ')' at row " + std::to_string(row + 1));
      }
      auto [role, start] = std::move(open.back());
      open.pop_back();
      if (open.empty()) spans.push_back(LabeledSpan{role, start, row});
    }
  }
  if (!open.empty()) {
    throw FormatError("unclosed '(" + open.back().first.str() +
                      "' opened at row " +
                      std::to_string(open.back().second + 1));
  }
  return spans;
}

std::vector<std::string> RenderBracketColumn(
    std::span<const LabeledSpan> spans, std::size_t length) {
  std::vector<std::string> cells(length, "*");
  for (const auto &span : spans) {
    if (span.end >= length) {
      throw BoundsError("span end " + std::to_string(span.end) +
                        " outside column of length " + std::to_string(length));
    }
    cells[span.start] = "(" + span.role.str() + cells[span.start];
    cells[span.end] += ")";
  }
  return cells;
}

std::vector<SrlInstance> ParseColumnAnnotations(
    const ColumnSentence &sentence, const ArtifactPatterns &patterns) {
  const std::size_t width = sentence.predicate_count();
  std::vector<std::string> raw_tokens;
  for (std::size_t row = 0; row < sentence.rows.size(); ++row) {
    if (sentence.rows[row].columns.size() != width) {
      throw FormatError("row " + std::to_string(row + 1) + " has " +
                        std::to_string(sentence.rows[row].columns.size()) +
                        " annotation columns, expected " +
                        std::to_string(width));
    }
    raw_tokens.push_back(sentence.rows[row].token);
  }

  // Map raw rows onto surviving token positions.
  constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> remap(raw_tokens.size(), kDropped);
  std::vector<std::string> kept;
  for (std::size_t row = 0; row < raw_tokens.size(); ++row) {
    if (patterns.IsArtifact(raw_tokens[row])) continue;
    remap[row] = kept.size();
    kept.push_back(raw_tokens[row]);
  }
  if (kept.empty()) throw FormatError("sentence has no surface tokens");
  const std::vector<Token> words = MakeTokens(kept);

  std::vector<SrlInstance> instances;
  for (std::size_t column = 0; column < width; ++column) {
    std::vector<std::string> cells;
    cells.reserve(sentence.rows.size());
    for (const auto &row : sentence.rows) cells.push_back(row.columns[column]);

    std::vector<LabeledSpan> spans;
    try {
      spans = ParseBracketColumn(cells);
    } catch (const FormatError &e) {
      throw FormatError("column " + std::to_string(column + 1) + ": " +
                        e.what());
    }

    std::vector<LabeledSpan> packed;
    std::optional<std::size_t> predicate;
    for (const auto &span : spans) {
      std::size_t first = kDropped, last = kDropped;
      for (std::size_t row = span.start; row <= span.end; ++row) {
        if (remap[row] == kDropped) continue;
        if (first == kDropped) first = remap[row];
        last = remap[row];
      }
      if (span.role.is_predicate()) {
        if (predicate) {
          throw FormatError(ColumnContext(column, span.start) +
                            ": second V span");
        }
        if (first == kDropped) {
          throw FormatError(ColumnContext(column, span.start) +
                            ": V span covers only artifact tokens");
        }
        predicate = first;
      }
      if (first != kDropped) packed.push_back(LabeledSpan{span.role, first, last});
    }
    if (!predicate) {
      throw FormatError("column " + std::to_string(column + 1) +
                        " has no V span");
    }
    instances.push_back(
        SrlInstance{words, *predicate, EncodeSpans(packed, words.size())});
  }
  return instances;
}

ParsedSentence ParseSentence(const ColumnSentence &sentence,
                             const ArtifactPatterns &patterns) {
  ParsedSentence parsed;
  parsed.sentence_id = sentence.id;
  try {
    parsed.instances = ParseColumnAnnotations(sentence, patterns);
  } catch (const Error &e) {
    parsed.instances.clear();
    parsed.skip_reason = e.what();
  }
  return parsed;
}

void IngestReport::Merge(const IngestReport &other) {
  sentences_read += other.sentences_read;
  instances_emitted += other.instances_emitted;
  sentences_skipped += other.sentences_skipped;
  skip_reasons.insert(skip_reasons.end(), other.skip_reasons.begin(),
                      other.skip_reasons.end());
}

Json IngestReport::ToJson() const {
  Json skips = Json::array();
  for (const auto &[id, reason] : skip_reasons) {
    skips.push_back({{"sentence_id", id}, {"reason", reason}});
  }
  return Json{{"sentences_read", sentences_read},
              {"instances_emitted", instances_emitted},
              {"sentences_skipped", sentences_skipped},
              {"skip_reasons", skips}};
}

IngestReport EmitInstances(std::span<const ParsedSentence> parsed,
                           std::ostream &sink) {
  IngestReport report;
  for (const auto &sentence : parsed) {
    ++report.sentences_read;
    if (sentence.skip_reason) {
      ++report.sentences_skipped;
      report.skip_reasons.emplace_back(sentence.sentence_id,
                                       *sentence.skip_reason);
      continue;
    }
    for (const auto &instance : sentence.instances) {
      sink << InstanceToJson(instance).dump() << '\n';
      if (!sink) {
        throw IoError("write failed after " +
                      std::to_string(report.instances_emitted) +
                      " instances");
      }
      ++report.instances_emitted;
    }
  }
  sink.flush();
  if (!sink) {
    throw IoError("flush failed after " +
                  std::to_string(report.instances_emitted) + " instances");
  }
  return report;
}

}  // namespace srl
