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

// Conversion of bracketed column annotations into per-predicate instances.
//
// Input is blank-line separated sentences, one row per token:
//
//   Mary     (ARG0*)
//   gave     (V*)
//   me       (ARG2*)
//   a        (ARG1*
//   present  *)
//   .        *
//
// The first column is the surface token; each further column annotates one
// predicate. "(ROLE*" opens a span, "*)" closes it and "(ROLE*)" covers a
// single token. Nested brackets are flattened to the outermost span. Lines
// starting with '#' are comments.

#ifndef SRL_INGEST_H_
#define SRL_INGEST_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srl/instance.h"

namespace srl {

struct ColumnRow {
  std::string token;
  std::vector<std::string> columns;
};

struct ColumnSentence {
  std::size_t id = 0;  // 1-based ordinal within the input
  std::vector<ColumnRow> rows;

  // Column count of the first row; ParseColumnAnnotations rejects
  // sentences whose rows disagree.
  std::size_t predicate_count() const {
    return rows.empty() ? 0 : rows.front().columns.size();
  }
};

std::vector<ColumnSentence> ReadColumnSentences(std::istream &in);
std::vector<ColumnSentence> ReadColumnSentences(
    const std::filesystem::path &path);

// Regular expressions (ECMAScript, full match) identifying trace and null
// element tokens that are dropped from the surface sentence.
class ArtifactPatterns {
 public:
  // The documented default set:
  //   \*.*\*(-[0-9]+)?   bracketed traces: *T*-1, *PRO*, *U*, *?*, *EXP*-2
  //   \*(-[0-9]+)?       bare null elements: *, *-1
  //   %[A-Za-z]+         annotation markers such as %pw
  // A bare "%" is a real percent sign and is kept.
  static ArtifactPatterns Default();

  // One pattern per line; blank lines and '#' comments ignored. Throws
  // IoError when unreadable and FormatError on an invalid expression.
  static ArtifactPatterns FromFile(const std::filesystem::path &path);

  explicit ArtifactPatterns(std::vector<std::string> expressions);

  bool IsArtifact(const std::string &token) const;
  const std::vector<std::string> &expressions() const { return expressions_; }

 private:
  std::vector<std::string> expressions_;
  std::vector<std::regex> compiled_;
};

// Drops artifact tokens and re-packs indices densely.
std::vector<Token> CleanTokens(std::span<const std::string> raw,
                               const ArtifactPatterns &patterns);

// One instance per predicate column, in column order. Spans that touch
// artifact rows shrink onto the surviving tokens. Throws FormatError on
// ragged rows, unbalanced brackets, bad role labels, or a column without
// exactly one V span.
std::vector<SrlInstance> ParseColumnAnnotations(
    const ColumnSentence &sentence, const ArtifactPatterns &patterns);

// Outermost spans of one bracket column over `length` rows.
std::vector<LabeledSpan> ParseBracketColumn(
    std::span<const std::string> cells);

// Renders spans back into bracket cells.
std::vector<std::string> RenderBracketColumn(
    std::span<const LabeledSpan> spans, std::size_t length);

// Parse outcome for one sentence; `skip_reason` is set instead of throwing.
struct ParsedSentence {
  std::size_t sentence_id = 0;
  std::vector<SrlInstance> instances;
  std::optional<std::string> skip_reason;
};

ParsedSentence ParseSentence(const ColumnSentence &sentence,
                             const ArtifactPatterns &patterns);

struct IngestReport {
  std::size_t sentences_read = 0;
  std::size_t instances_emitted = 0;
  std::size_t sentences_skipped = 0;
  std::vector<std::pair<std::size_t, std::string>> skip_reasons;

  void Merge(const IngestReport &other);
  Json ToJson() const;
};

// Writes one JSON line per instance of every non-skipped sentence. Throws
// IoError when the sink fails; the message carries the number of
// instances already written.
IngestReport EmitInstances(std::span<const ParsedSentence> parsed,
                           std::ostream &sink);

}  // namespace srl

#endif  // SRL_INGEST_H_
