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

#include "srl/evaluation.h"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "srl/error.h"
#include "srl/percent.h"

namespace srl {

namespace {

using SpanKey = std::tuple<std::string, std::size_t, std::size_t>;

std::set<SpanKey> ScoredSpans(const Frame &frame,
                              const ScoreOptions &options) {
  std::set<SpanKey> keys;
  for (const auto &span : frame.spans) {
    if (span.role.is_predicate() && !options.include_v) continue;
    const RoleLabel role = options.fold_cr ? span.role.Base() : span.role;
    if (role.is_predicate() && !options.include_v) continue;
    keys.emplace(role.str(), span.start, span.end);
  }
  return keys;
}

std::string EntryName(std::span<const std::string> ids, std::size_t i) {
  return i < ids.size() ? ids[i] : std::to_string(i + 1);
}

std::vector<RoleShare> RankShares(const std::map<std::string, std::size_t> &counts) {
  std::size_t total = 0;
  for (const auto &[role, n] : counts) total += n;
  std::vector<RoleShare> shares;
  for (const auto &[role, n] : counts) {
    shares.push_back(RoleShare{role, n, PercentHundredths(n, total)});
  }
  std::stable_sort(shares.begin(), shares.end(),
                   [](const RoleShare &a, const RoleShare &b) {
                     return a.count > b.count;
                   });
  return shares;
}

nlohmann::ordered_json SharesJson(const std::vector<RoleShare> &shares) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto &share : shares) {
    out.push_back({{"role", share.role},
                   {"count", share.count},
                   {"percent", HundredthsValue(share.percent_hundredths)}});
  }
  return out;
}

constexpr std::array<const char *, kAgreementCells> kCellKeys = {
    "both_correct", "both_wrong", "first_correct", "second_correct",
    "neither_correct"};

}  // namespace

std::int64_t ScoreReport::precision_hundredths() const {
  return PercentHundredths(true_positives, predicted_spans);
}

std::int64_t ScoreReport::recall_hundredths() const {
  return PercentHundredths(true_positives, gold_spans);
}

std::int64_t ScoreReport::f1_hundredths() const {
  // 2PR / (P + R) reduces to 2 tp / (predicted + gold).
  return PercentHundredths(2 * true_positives, predicted_spans + gold_spans);
}

nlohmann::ordered_json ScoreReport::ToJson() const {
  return {{"precision", HundredthsValue(precision_hundredths())},
          {"recall", HundredthsValue(recall_hundredths())},
          {"f1", HundredthsValue(f1_hundredths())},
          {"true_positives", true_positives},
          {"predicted_spans", predicted_spans},
          {"gold_spans", gold_spans}};
}

std::string ScoreReport::ToTable() const {
  std::ostringstream out;
  out << std::left << std::setw(12) << "Metric" << std::right
      << std::setw(10) << "Value" << '\n';
  out << std::left << std::setw(12) << "P (%)" << std::right << std::setw(10)
      << FormatHundredths(precision_hundredths()) << '\n';
  out << std::left << std::setw(12) << "R (%)" << std::right << std::setw(10)
      << FormatHundredths(recall_hundredths()) << '\n';
  out << std::left << std::setw(12) << "F1 (%)" << std::right << std::setw(10)
      << FormatHundredths(f1_hundredths()) << '\n';
  out << std::left << std::setw(12) << "TP" << std::right << std::setw(10)
      << true_positives << '\n';
  out << std::left << std::setw(12) << "Predicted" << std::right
      << std::setw(10) << predicted_spans << '\n';
  out << std::left << std::setw(12) << "Gold" << std::right << std::setw(10)
      << gold_spans << '\n';
  return out.str();
}

ScoreReport ScoreSpans(std::span<const Frame> predicted,
                       std::span<const Frame> gold,
                       const ScoreOptions &options,
                       std::span<const std::string> ids) {
  if (predicted.size() != gold.size()) {
    throw AlignmentError("predicted has " + std::to_string(predicted.size()) +
                         " frames, gold has " + std::to_string(gold.size()));
  }
  std::vector<std::string> offending;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i].predicate_index != gold[i].predicate_index) {
      offending.push_back(EntryName(ids, i));
    }
  }
  if (!offending.empty()) {
    std::string list;
    for (const auto &id : offending) list += (list.empty() ? "" : ", ") + id;
    throw AlignmentError("predicate mismatch in: " + list);
  }

  ScoreReport report;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto pred_keys = ScoredSpans(predicted[i], options);
    const auto gold_keys = ScoredSpans(gold[i], options);
    report.predicted_spans += pred_keys.size();
    report.gold_spans += gold_keys.size();
    for (const auto &key : pred_keys) {
      if (gold_keys.contains(key)) ++report.true_positives;
    }
  }
  if (report.predicted_spans > 0) {
    report.precision = 100.0 * static_cast<double>(report.true_positives) /
                       static_cast<double>(report.predicted_spans);
  }
  if (report.gold_spans > 0) {
    report.recall = 100.0 * static_cast<double>(report.true_positives) /
                    static_cast<double>(report.gold_spans);
  }
  if (report.precision + report.recall > 0.0) {
    report.f1 = 2.0 * report.precision * report.recall /
                (report.precision + report.recall);
  }
  return report;
}

std::size_t AgreementReport::agreement() const {
  return count(AgreementCell::kBothCorrect) +
         count(AgreementCell::kBothWrong);
}

std::size_t AgreementReport::disagreement() const {
  return count(AgreementCell::kFirstCorrect) +
         count(AgreementCell::kSecondCorrect) +
         count(AgreementCell::kNeitherCorrect);
}

std::int64_t AgreementReport::WithinHundredths(AgreementCell cell) const {
  const bool agreeing = cell == AgreementCell::kBothCorrect ||
                        cell == AgreementCell::kBothWrong;
  return PercentHundredths(count(cell),
                           agreeing ? agreement() : disagreement());
}

std::int64_t AgreementReport::TotalHundredths(AgreementCell cell) const {
  return PercentHundredths(count(cell), total());
}

nlohmann::ordered_json AgreementReport::ToJson() const {
  auto cell_json = [&](AgreementCell cell) {
    return nlohmann::ordered_json{
        {"tokens", count(cell)},
        {"percent_within", HundredthsValue(WithinHundredths(cell))},
        {"percent_of_total", HundredthsValue(TotalHundredths(cell))}};
  };
  nlohmann::ordered_json agreement_cells, disagreement_cells;
  for (std::size_t i = 0; i < kAgreementCells; ++i) {
    const auto cell = static_cast<AgreementCell>(i);
    (i < 2 ? agreement_cells : disagreement_cells)[kCellKeys[i]] =
        cell_json(cell);
  }
  return {{"systems", {first_name, second_name}},
          {"total_tokens", total()},
          {"agreement",
           {{"tokens", agreement()},
            {"percent_of_total",
             RoundedPercent(agreement(), total())},
            {"cells", agreement_cells}}},
          {"disagreement",
           {{"tokens", disagreement()},
            {"percent_of_total",
             RoundedPercent(disagreement(), total())},
            {"cells", disagreement_cells}}}};
}

std::string AgreementReport::ToTable() const {
  const std::array<std::string, kAgreementCells> names = {
      "Both correct", "Both wrong", first_name + " correct",
      second_name + " correct", "Neither correct"};
  std::ostringstream out;
  out << std::left << std::setw(28) << "Partition" << std::setw(20)
      << "Subcase" << std::right << std::setw(10) << "Tokens"
      << std::setw(10) << "% within" << std::setw(12) << "% of total"
      << '\n';
  for (std::size_t i = 0; i < kAgreementCells; ++i) {
    std::string partition;
    if (i == 0) {
      partition = "Agreement (" +
                  FormatHundredths(PercentHundredths(agreement(), total())) +
                  "%)";
    } else if (i == 2) {
      partition = "Disagreement (" +
                  FormatHundredths(PercentHundredths(disagreement(), total())) +
                  "%)";
    }
    const auto cell = static_cast<AgreementCell>(i);
    out << std::left << std::setw(28) << partition << std::setw(20)
        << names[i] << std::right << std::setw(10) << count(cell)
        << std::setw(10) << FormatHundredths(WithinHundredths(cell))
        << std::setw(12) << FormatHundredths(TotalHundredths(cell)) << '\n';
  }
  return out.str();
}

AgreementReport AgreementPartition(std::span<const std::string> first,
                                   std::span<const std::string> second,
                                   std::span<const std::string> gold) {
  if (first.size() != gold.size() || second.size() != gold.size()) {
    throw AlignmentError("label streams differ in length: " +
                         std::to_string(first.size()) + ", " +
                         std::to_string(second.size()) + ", gold " +
                         std::to_string(gold.size()));
  }
  AgreementReport report;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    AgreementCell cell;
    if (first[i] == second[i]) {
      cell = first[i] == gold[i] ? AgreementCell::kBothCorrect
                                 : AgreementCell::kBothWrong;
    } else if (first[i] == gold[i]) {
      cell = AgreementCell::kFirstCorrect;
    } else if (second[i] == gold[i]) {
      cell = AgreementCell::kSecondCorrect;
    } else {
      cell = AgreementCell::kNeitherCorrect;
    }
    ++report.counts[static_cast<std::size_t>(cell)];
  }
  return report;
}

nlohmann::ordered_json MissingRoleReport::ToJson() const {
  return {{"gold_spans", gold_total},
          {"missing_spans", missing_total},
          {"roles", SharesJson(roles)},
          {"modifiers", SharesJson(modifiers)}};
}

MissingRoleReport MissingRoles(std::span<const Frame> predicted,
                               std::span<const Frame> gold) {
  if (predicted.size() != gold.size()) {
    throw AlignmentError("predicted has " + std::to_string(predicted.size()) +
                         " frames, gold has " + std::to_string(gold.size()));
  }
  MissingRoleReport report;
  std::map<std::string, std::size_t> roles, modifiers;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (const auto &span : gold[i].spans) {
      ++report.gold_total;
      const bool found = std::any_of(
          predicted[i].spans.begin(), predicted[i].spans.end(),
          [&](const LabeledSpan &p) {
            return p.role == span.role && p.Overlaps(span);
          });
      if (found) continue;
      ++report.missing_total;
      if (span.role.kind() == RoleKind::kModifier) {
        ++roles["ARGM"];
        ++modifiers[span.role.str()];
      } else {
        ++roles[span.role.str()];
      }
    }
  }
  report.roles = RankShares(roles);
  report.modifiers = RankShares(modifiers);
  return report;
}

}  // namespace srl
