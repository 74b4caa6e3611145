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

#include "srl/diagnostics.h"

#include <iomanip>
#include <sstream>

#include "srl/error.h"
#include "srl/percent.h"

namespace srl {

namespace {

nlohmann::ordered_json SpanJson(const LabeledSpan &span) {
  return {{"role", span.role.str()}, {"start", span.start}, {"end", span.end}};
}

// True if `root` hangs off a token of `other` through a prepositional link.
bool AttachesAsPp(std::size_t root, const LabeledSpan &other,
                  const DepTree &tree, const ClassifierConfig &config) {
  const int head = tree.head[root];
  if (head == DepTree::kRoot || !other.Contains(static_cast<std::size_t>(head))) {
    return false;
  }
  return config.pp_relations.contains(tree.relation[root]) ||
         tree.HasChildWithRelation(root, config.case_relation);
}

}  // namespace

const char *BucketName(BucketKind kind) {
  switch (kind) {
    case BucketKind::kNoBucket: return "NO_BUCKET";
    case BucketKind::kOtherRepeat: return "OTHER_REPEAT";
    case BucketKind::kSameHead: return "same_head";
    case BucketKind::kSubtreeAttach: return "subtree_attach";
    case BucketKind::kPpAttach: return "pp_attach";
  }
  return "unknown";
}

std::optional<BucketKind> ParseBucketName(const std::string &name) {
  for (BucketKind kind : kBucketOrder) {
    if (name == BucketName(kind)) return kind;
  }
  return std::nullopt;
}

const char *RepairActionName(RepairAction action) {
  switch (action) {
    case RepairAction::kAutoMerged: return "auto_merged";
    case RepairAction::kReviewRequired: return "review_required";
    case RepairAction::kNone: return "none";
  }
  return "unknown";
}

std::vector<SpanPair> FindRepeatedSpans(const Frame &frame) {
  std::vector<SpanPair> pairs;
  for (std::size_t i = 1; i < frame.spans.size(); ++i) {
    const LabeledSpan &a = frame.spans[i - 1];
    const LabeledSpan &b = frame.spans[i];
    if (a.role == b.role && !a.role.is_predicate()) {
      pairs.push_back(SpanPair{a.role, a, b});
    }
  }
  return pairs;
}

std::size_t SpanRoot(const LabeledSpan &span, const DepTree &tree) {
  if (span.end >= tree.size()) {
    throw DiagnosticError("span [" + std::to_string(span.start) + ", " +
                          std::to_string(span.end) +
                          "] exceeds tree of size " +
                          std::to_string(tree.size()));
  }
  for (std::size_t t = span.start; t <= span.end; ++t) {
    const int head = tree.head[t];
    if (head == DepTree::kRoot || !span.Contains(static_cast<std::size_t>(head))) {
      return t;
    }
  }
  throw DiagnosticError("span [" + std::to_string(span.start) + ", " +
                        std::to_string(span.end) + "] has no external head");
}

BucketKind ClassifyPair(const SpanPair &pair, const DepTree &tree,
                        const ClassifierConfig &config) {
  if (auto problem = tree.Problem()) {
    throw DiagnosticError("malformed dependency tree: " + *problem);
  }
  const std::size_t a = SpanRoot(pair.earlier, tree);
  const std::size_t b = SpanRoot(pair.later, tree);

  if (AttachesAsPp(b, pair.earlier, tree, config) ||
      AttachesAsPp(a, pair.later, tree, config)) {
    return BucketKind::kPpAttach;
  }
  if (tree.head[a] == tree.head[b]) return BucketKind::kSameHead;
  if (tree.IsProperDescendant(a, b) || tree.IsProperDescendant(b, a)) {
    return BucketKind::kSubtreeAttach;
  }
  return BucketKind::kOtherRepeat;
}

BioSequence MergePair(std::span<const BioTag> seq, const SpanPair &pair) {
  const std::size_t start = pair.earlier.start;
  const std::size_t end = pair.later.end;
  if (start > end || end >= seq.size()) {
    throw StructuralError("merge range [" + std::to_string(start) + ", " +
                          std::to_string(end) + "] invalid for length " +
                          std::to_string(seq.size()));
  }
  for (std::size_t i = start; i <= end; ++i) {
    if (!seq[i].is_outside() && seq[i].role() != pair.role) {
      throw StructuralError("cannot merge " + pair.role.str() +
                            " across " + seq[i].str() + " at word " +
                            std::to_string(i));
    }
  }
  BioSequence out(seq.begin(), seq.end());
  out[start] = BioTag::Begin(pair.role);
  for (std::size_t i = start + 1; i <= end; ++i) {
    out[i] = BioTag::Inside(pair.role);
  }
  return out;
}

BioSequence RepairBoundary(std::span<const BioTag> seq) {
  return RepairOrphans(seq);
}

nlohmann::ordered_json DiagnosisRecord::ToJson() const {
  nlohmann::ordered_json out = {
      {"frame_index", frame_index},
      {"sentence_index", sentence_index},
      {"predicate_index", predicate_index},
      {"role", pair.role.str()},
      {"earlier", SpanJson(pair.earlier)},
      {"later", SpanJson(pair.later)},
      {"bucket", BucketName(bucket)},
      {"action", RepairActionName(action)}};
  if (!note.empty()) out["note"] = note;
  return out;
}

std::size_t BucketHistogram::fixable_tokens() const {
  return tokens_in(BucketKind::kSameHead) +
         tokens_in(BucketKind::kSubtreeAttach) +
         tokens_in(BucketKind::kPpAttach);
}

nlohmann::ordered_json BucketHistogram::ToJson() const {
  nlohmann::ordered_json buckets = nlohmann::ordered_json::array();
  for (BucketKind kind : kBucketOrder) {
    const std::size_t i = static_cast<std::size_t>(kind);
    buckets.push_back({{"bucket", BucketName(kind)},
                       {"tokens", tokens[i]},
                       {"percent", RoundedPercent(tokens[i], total_tokens)},
                       {"pairs", pairs[i]}});
  }
  const std::size_t review = tokens_in(BucketKind::kOtherRepeat);
  nlohmann::ordered_json violations = nlohmann::ordered_json::object();
  for (const auto &[role, count] : violations_by_role) violations[role] = count;
  return {{"total_tokens", total_tokens},
          {"buckets", buckets},
          {"fixable",
           {{"tokens", fixable_tokens()},
            {"percent", RoundedPercent(fixable_tokens(), total_tokens)}}},
          {"review_required",
           {{"tokens", review},
            {"percent", RoundedPercent(review, total_tokens)}}},
          {"frames", frames},
          {"unanalyzable_frames", unanalyzable_frames},
          {"unanalyzable_sentences", unanalyzable_sentences},
          {"malformed_tree_frames", malformed_tree_frames},
          {"boundary_repairs", boundary_repairs},
          {"violations_by_role", violations}};
}

std::string BucketHistogram::ToTable() const {
  std::ostringstream out;
  out << std::left << std::setw(16) << "Error bucket" << std::right
      << std::setw(10) << "Tokens" << std::setw(12)
      << ("% of " + std::to_string(total_tokens)) << '\n';
  for (BucketKind kind : kBucketOrder) {
    const std::size_t n = tokens_in(kind);
    out << std::left << std::setw(16) << BucketName(kind) << std::right
        << std::setw(10) << n << std::setw(12)
        << FormatHundredths(PercentHundredths(n, total_tokens)) << '\n';
  }
  return out.str();
}

AnalysisResult AnalyzeCorpus(std::span<const AnalysisFrame> frames,
                             const ClassifierConfig &config) {
  AnalysisResult result;
  BucketHistogram &hist = result.histogram;
  std::set<std::size_t> unanalyzable_sentences;
  result.repaired.reserve(frames.size());

  for (std::size_t f = 0; f < frames.size(); ++f) {
    const AnalysisFrame &frame = frames[f];
    const std::size_t n = frame.tags.size();
    ++hist.frames;
    hist.total_tokens += n;

    for (const auto &violation : ValidateBio(frame.tags)) {
      ++hist.violations_by_role[violation.role.str()];
    }
    BioSequence tags = RepairBoundary(frame.tags);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(tags[i] == frame.tags[i])) ++hist.boundary_repairs;
    }

    if (frame.tree == nullptr || frame.tree->size() != n) {
      ++hist.unanalyzable_frames;
      unanalyzable_sentences.insert(frame.sentence_index);
      hist.tokens_in(BucketKind::kNoBucket) += n;
      result.repaired.push_back(std::move(tags));
      continue;
    }

    const std::vector<SpanPair> pairs =
        FindRepeatedSpans(MakeFrame(frame.predicate_index, tags));
    const std::optional<std::string> problem = frame.tree->Problem();
    if (problem) ++hist.malformed_tree_frames;

    std::vector<BucketKind> token_bucket(n, BucketKind::kNoBucket);
    std::vector<BucketKind> buckets;
    buckets.reserve(pairs.size());
    for (const SpanPair &pair : pairs) {
      DiagnosisRecord record{f,
                             frame.sentence_index,
                             frame.predicate_index,
                             pair,
                             BucketKind::kNoBucket,
                             RepairAction::kNone,
                             {}};
      try {
        record.bucket = ClassifyPair(pair, *frame.tree, config);
      } catch (const DiagnosticError &e) {
        record.bucket = BucketKind::kOtherRepeat;
        record.note = e.what();
      }
      record.action = IsFixable(record.bucket) ? RepairAction::kAutoMerged
                                               : RepairAction::kReviewRequired;
      ++hist.pairs[static_cast<std::size_t>(record.bucket)];
      for (const LabeledSpan *span : {&pair.earlier, &pair.later}) {
        for (std::size_t t = span->start; t <= span->end; ++t) {
          if (token_bucket[t] == BucketKind::kNoBucket) {
            token_bucket[t] = record.bucket;
          }
        }
      }
      buckets.push_back(record.bucket);
      result.records.push_back(std::move(record));
    }
    for (BucketKind kind : token_bucket) ++hist.tokens_in(kind);

    // Merge runs of fixable pairs that share a span.
    std::optional<SpanPair> run;
    auto flush = [&] {
      if (run) tags = MergePair(tags, *run);
      run.reset();
    };
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (!IsFixable(buckets[p])) {
        flush();
        continue;
      }
      if (run && run->later == pairs[p].earlier) {
        run->later = pairs[p].later;
      } else {
        flush();
        run = pairs[p];
      }
    }
    flush();
    result.repaired.push_back(std::move(tags));
  }
  hist.unanalyzable_sentences = unanalyzable_sentences.size();
  return result;
}

}  // namespace srl
