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

// Dependency-aware analysis of repeated same-role spans.
//
// When a predicate carries two consecutive spans with the same role, the
// dependency tree decides whether they are fragments of one argument:
//
//   pp_attach       one span's root attaches into the other span through a
//                   prepositional relation (either direction)
//   same_head       both span roots share a head
//   subtree_attach  one span root dominates the other
//
// Tests run in that order and the first match wins. Fixable pairs are
// merged into one span; anything else is OTHER_REPEAT and goes to review.

#ifndef SRL_DIAGNOSTICS_H_
#define SRL_DIAGNOSTICS_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "srl/bio.h"
#include "srl/dependency.h"

namespace srl {

enum class BucketKind {
  kNoBucket,
  kOtherRepeat,
  kSameHead,
  kSubtreeAttach,
  kPpAttach,
};

inline constexpr std::size_t kBucketCount = 5;

// Report order: NO_BUCKET, OTHER_REPEAT, same_head, subtree_attach,
// pp_attach.
inline constexpr std::array<BucketKind, kBucketCount> kBucketOrder = {
    BucketKind::kNoBucket, BucketKind::kOtherRepeat, BucketKind::kSameHead,
    BucketKind::kSubtreeAttach, BucketKind::kPpAttach};

const char *BucketName(BucketKind kind);
std::optional<BucketKind> ParseBucketName(const std::string &name);

inline bool IsFixable(BucketKind kind) {
  return kind == BucketKind::kSameHead || kind == BucketKind::kPpAttach ||
         kind == BucketKind::kSubtreeAttach;
}

enum class RepairAction { kAutoMerged, kReviewRequired, kNone };

const char *RepairActionName(RepairAction action);

struct SpanPair {
  RoleLabel role;
  LabeledSpan earlier;
  LabeledSpan later;

  friend bool operator==(const SpanPair &, const SpanPair &) = default;
};

// Consecutive spans of one frame sharing a role (V excluded). Only O tokens
// may separate them.
std::vector<SpanPair> FindRepeatedSpans(const Frame &frame);

// The span token whose head lies outside the span; leftmost if several.
// Throws DiagnosticError if the span leaves the tree or has no such token.
std::size_t SpanRoot(const LabeledSpan &span, const DepTree &tree);

struct ClassifierConfig {
  // Relations marking a prepositional attachment of a span root.
  std::set<std::string> pp_relations = {"prep", "pobj", "nmod"};
  // A root with a dependent under this relation counts as a case-marked
  // nominal and also qualifies.
  std::string case_relation = "case";
};

// Throws DiagnosticError on a malformed tree.
BucketKind ClassifyPair(const SpanPair &pair, const DepTree &tree,
                        const ClassifierConfig &config = {});

// Relabels [earlier.start, later.end] as one span of the pair's role,
// absorbing O gap tokens. Throws StructuralError if a token in that range
// carries a different role or the range leaves the sequence.
BioSequence MergePair(std::span<const BioTag> seq, const SpanPair &pair);

// Promotes every span-initial I-X to B-X.
BioSequence RepairBoundary(std::span<const BioTag> seq);

// One predicate's predicted tags together with the sentence tree.
struct AnalysisFrame {
  std::size_t sentence_index = 0;
  std::size_t predicate_index = 0;
  BioSequence tags;
  const DepTree *tree = nullptr;  // null when no parse is available
};

struct DiagnosisRecord {
  std::size_t frame_index = 0;
  std::size_t sentence_index = 0;
  std::size_t predicate_index = 0;
  SpanPair pair;
  BucketKind bucket = BucketKind::kNoBucket;
  RepairAction action = RepairAction::kNone;
  std::string note;  // set when the tree could not be used

  nlohmann::ordered_json ToJson() const;
};

// Token distribution over buckets. Every token of every analyzed frame is
// counted once: tokens inside either span of a classified pair count toward
// that pair's bucket (the first pair wins for a shared span), all others
// toward NO_BUCKET. Frames without a usable tree count entirely as
// NO_BUCKET and are also tallied as unanalyzable.
struct BucketHistogram {
  std::array<std::size_t, kBucketCount> tokens{};
  std::array<std::size_t, kBucketCount> pairs{};
  std::size_t total_tokens = 0;
  std::size_t frames = 0;
  std::size_t unanalyzable_frames = 0;
  std::size_t unanalyzable_sentences = 0;
  std::size_t malformed_tree_frames = 0;
  std::size_t boundary_repairs = 0;
  std::map<std::string, std::size_t> violations_by_role;

  std::size_t &tokens_in(BucketKind kind) {
    return tokens[static_cast<std::size_t>(kind)];
  }
  std::size_t tokens_in(BucketKind kind) const {
    return tokens[static_cast<std::size_t>(kind)];
  }
  std::size_t fixable_tokens() const;

  nlohmann::ordered_json ToJson() const;
  // Aligned text table in report order.
  std::string ToTable() const;
};

struct AnalysisResult {
  std::vector<BioSequence> repaired;  // parallel to the input frames
  std::vector<DiagnosisRecord> records;
  BucketHistogram histogram;
};

// Classifies every repeated pair, merges the fixable ones (chains of
// fixable pairs merge into one span) and leaves review pairs untouched.
// Span-initial I tags are promoted before analysis.
AnalysisResult AnalyzeCorpus(std::span<const AnalysisFrame> frames,
                             const ClassifierConfig &config = {});

}  // namespace srl

#endif  // SRL_DIAGNOSTICS_H_
