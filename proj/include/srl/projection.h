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

// Transfer of BIO annotations to a translation through word alignments.

#ifndef SRL_PROJECTION_H_
#define SRL_PROJECTION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "srl/bio.h"
#include "srl/dependency.h"
#include "srl/diagnostics.h"
#include "srl/inference.h"
#include "srl/instance.h"

namespace srl {

using AlignedPair = std::pair<std::size_t, std::size_t>;  // (source, target)

// Sorted, duplicate-free set of source-target links.
class Alignment {
 public:
  Alignment() = default;
  explicit Alignment(std::vector<AlignedPair> pairs);

  // Pharaoh format: whitespace separated "i-j" pairs. Throws FormatError.
  static Alignment ParsePharaoh(std::string_view line);
  std::string ToPharaoh() const;

  const std::vector<AlignedPair> &pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  bool IsOneToOne() const;

  friend bool operator==(const Alignment &, const Alignment &) = default;

 private:
  std::vector<AlignedPair> pairs_;
};

struct OneToOneResult {
  Alignment kept;
  std::vector<AlignedPair> dropped;
};

// Replaceable conflict-resolution policy.
class AlignmentPolicy {
 public:
  virtual ~AlignmentPolicy() = default;
  virtual OneToOneResult Resolve(const Alignment &alignment) const = 0;
};

// Greedy matching by distance: links are visited in order of |i - j|, then
// source index, then target index, and kept while both endpoints are still
// free. For the links {7-5, 8-6, 9-7, 9-9, 10-10, 11-7} this keeps 9-9 and
// 11-7 and drops 9-7.
class NearestLinkPolicy : public AlignmentPolicy {
 public:
  OneToOneResult Resolve(const Alignment &alignment) const override;
};

OneToOneResult EnforceOneToOne(const Alignment &alignment);

// Copies each aligned source tag onto its target token, leaves unaligned
// target tokens O, then promotes span-initial I tags. Throws
// StructuralError when the alignment is not one-to-one and BoundsError on
// indices outside either sentence.
BioSequence ProjectTags(std::span<const BioTag> source,
                        const Alignment &alignment, std::size_t target_length);

struct ProjectedFrame {
  std::size_t source_predicate_index = 0;
  std::optional<std::size_t> predicate_index;  // aligned target token
  BioSequence tags;
};

struct ProjectedSentence {
  std::size_t sentence_index = 0;
  std::vector<Token> words;
  std::vector<ProjectedFrame> frames;
  // Source token each target token inherited from.
  std::vector<std::optional<std::size_t>> provenance;
  std::vector<AlignedPair> dropped_links;

  nlohmann::ordered_json ToJson() const;
};

struct SourceSentence {
  std::vector<Token> words;
  std::vector<PredicateTags> frames;
  const DepTree *tree = nullptr;
};

struct ProjectionResult {
  std::vector<ProjectedSentence> sentences;
  std::vector<std::pair<std::size_t, std::string>> skipped;
};

// Sentence-parallel projection. Source frames are first run through the
// dependency analyzer when a tree is present (boundary repair only
// otherwise). Sentences without a target or alignment, or whose alignment
// leaves either sentence, are reported in `skipped`.
ProjectionResult ProjectCorpus(std::span<const SourceSentence> sources,
                               std::span<const std::vector<Token>> targets,
                               std::span<const Alignment> alignments,
                               const AlignmentPolicy &policy = NearestLinkPolicy(),
                               const ClassifierConfig &config = {});

}  // namespace srl

#endif  // SRL_PROJECTION_H_
