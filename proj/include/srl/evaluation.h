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

// Span scoring, two-system agreement breakdown and missing-role counts.

#ifndef SRL_EVALUATION_H_
#define SRL_EVALUATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "srl/bio.h"

namespace srl {

struct ScoreOptions {
  bool include_v = false;  // score V spans as well
  bool fold_cr = false;    // score C-X and R-X as X
};

// Micro-averaged exact-match span scores. Percentages are exact ratios;
// the *_hundredths fields hold the two-decimal round-half-up values used in
// reports.
struct ScoreReport {
  std::size_t true_positives = 0;
  std::size_t predicted_spans = 0;
  std::size_t gold_spans = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  std::int64_t precision_hundredths() const;
  std::int64_t recall_hundredths() const;
  std::int64_t f1_hundredths() const;

  nlohmann::ordered_json ToJson() const;
  std::string ToTable() const;
};

// A predicted span is a true positive iff the gold frame at the same
// position holds a span with identical role, start and end. Throws
// AlignmentError (listing the offending ids) when the lists differ in
// length or predicate. `ids` names the entries in errors and defaults to
// their 1-based position.
ScoreReport ScoreSpans(std::span<const Frame> predicted,
                       std::span<const Frame> gold,
                       const ScoreOptions &options = {},
                       std::span<const std::string> ids = {});

enum class AgreementCell {
  kBothCorrect,
  kBothWrong,
  kFirstCorrect,   // systems disagree, system A matches gold
  kSecondCorrect,  // systems disagree, system B matches gold
  kNeitherCorrect,
};

inline constexpr std::size_t kAgreementCells = 5;

struct AgreementReport {
  std::array<std::size_t, kAgreementCells> counts{};
  std::string first_name = "A";
  std::string second_name = "B";

  std::size_t count(AgreementCell cell) const {
    return counts[static_cast<std::size_t>(cell)];
  }
  std::size_t agreement() const;
  std::size_t disagreement() const;
  std::size_t total() const { return agreement() + disagreement(); }

  // Share of the cell within its partition, hundredths of a percent.
  std::int64_t WithinHundredths(AgreementCell cell) const;
  // Share of the cell among all tokens, hundredths of a percent.
  std::int64_t TotalHundredths(AgreementCell cell) const;

  nlohmann::ordered_json ToJson() const;
  std::string ToTable() const;
};

// Token-level comparison of two systems against gold. Throws
// AlignmentError on length mismatch.
AgreementReport AgreementPartition(std::span<const std::string> first,
                                   std::span<const std::string> second,
                                   std::span<const std::string> gold);

struct RoleShare {
  std::string role;
  std::size_t count = 0;
  std::int64_t percent_hundredths = 0;
};

// Gold spans with no same-role predicted span overlapping them. `roles`
// groups every modifier under "ARGM"; `modifiers` breaks ARGM misses down
// by full modifier role. Both are sorted by count, then name.
struct MissingRoleReport {
  std::size_t missing_total = 0;
  std::size_t gold_total = 0;
  std::vector<RoleShare> roles;
  std::vector<RoleShare> modifiers;

  nlohmann::ordered_json ToJson() const;
};

// Throws AlignmentError when the lists differ in length.
MissingRoleReport MissingRoles(std::span<const Frame> predicted,
                               std::span<const Frame> gold);

}  // namespace srl

#endif  // SRL_EVALUATION_H_
