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

// BIO span algebra: decoding tag sequences into labeled spans, encoding
// spans back into tags, and structural validation.

#ifndef SRL_BIO_H_
#define SRL_BIO_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "srl/role.h"

namespace srl {

using BioSequence = std::vector<BioTag>;

// A role over the inclusive word interval [start, end].
struct LabeledSpan {
  RoleLabel role;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  bool Contains(std::size_t index) const {
    return index >= start && index <= end;
  }
  bool Overlaps(const LabeledSpan &other) const {
    return start <= other.end && other.start <= end;
  }

  friend bool operator==(const LabeledSpan &, const LabeledSpan &) = default;
};

// All argument spans of one predicate.
struct Frame {
  std::size_t predicate_index = 0;
  std::vector<LabeledSpan> spans;

  friend bool operator==(const Frame &, const Frame &) = default;
};

BioSequence ParseBioSequence(std::span<const std::string> tags);
std::vector<std::string> BioStrings(std::span<const BioTag> seq);

// Converts tags to spans sorted by start. Total: an I-X that does not
// continue a B-X/I-X run opens a new span exactly as B-X would.
std::vector<LabeledSpan> DecodeSpans(std::span<const BioTag> seq);

// Inverse of DecodeSpans. Throws StructuralError on overlapping spans and
// BoundsError on spans outside [0, length).
BioSequence EncodeSpans(std::span<const LabeledSpan> spans,
                        std::size_t length);

enum class ViolationKind {
  kOrphanInside,    // I-X not preceded by B-X or I-X
  kDuplicateRole,   // a second span carrying an already-used role
};

struct BioViolation {
  std::size_t position = 0;
  ViolationKind kind = ViolationKind::kOrphanInside;
  RoleLabel role;

  friend bool operator==(const BioViolation &, const BioViolation &) = default;
};

const char *ViolationKindName(ViolationKind kind);

// Reports one record per orphan I position and one per repeated role
// (positioned at the start of every span after the first with that role).
// Roles compare by full text, so C-ARG0 never duplicates ARG0. Spans are
// those of DecodeSpans; results are sorted by position, orphans first.
std::vector<BioViolation> ValidateBio(std::span<const BioTag> seq);

// Rewrites every span-initial I-X as B-X; all other tags are kept.
BioSequence RepairOrphans(std::span<const BioTag> seq);

// Builds a frame from decoded spans. The predicate index is taken from
// the caller, not from the V span, since predictions may lack one.
Frame MakeFrame(std::size_t predicate_index, std::span<const BioTag> seq);

}  // namespace srl

#endif  // SRL_BIO_H_
