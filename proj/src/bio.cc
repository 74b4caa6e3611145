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

#include "srl/bio.h"

#include <algorithm>
#include <set>

#include "srl/error.h"

namespace srl {

namespace {

// True if tag at `i` continues the span running at `i - 1`.
bool Continues(std::span<const BioTag> seq, std::size_t i) {
  if (!seq[i].is_inside() || i == 0) return false;
  const BioTag &prev = seq[i - 1];
  return !prev.is_outside() && prev.role() == seq[i].role();
}

}  // namespace

BioSequence ParseBioSequence(std::span<const std::string> tags) {
  BioSequence seq;
  seq.reserve(tags.size());
  for (const auto &tag : tags) seq.push_back(BioTag::Parse(tag));
  return seq;
}

std::vector<std::string> BioStrings(std::span<const BioTag> seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (const auto &tag : seq) out.push_back(tag.str());
  return out;
}

std::vector<LabeledSpan> DecodeSpans(std::span<const BioTag> seq) {
  std::vector<LabeledSpan> spans;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].is_outside()) continue;
    if (Continues(seq, i)) {
      spans.back().end = i;
    } else {
      spans.push_back(LabeledSpan{seq[i].role(), i, i});
    }
  }
  return spans;
}

BioSequence EncodeSpans(std::span<const LabeledSpan> spans,
                        std::size_t length) {
  std::vector<const LabeledSpan *> order;
  order.reserve(spans.size());
  for (const auto &span : spans) {
    if (span.start > span.end || span.end >= length) {
      throw BoundsError("span " + span.role.str() + " [" +
                        std::to_string(span.start) + ", " +
                        std::to_string(span.end) +
                        "] outside sentence of length " +
                        std::to_string(length));
    }
    order.push_back(&span);
  }
  std::sort(order.begin(), order.end(),
            [](const LabeledSpan *a, const LabeledSpan *b) {
              return a->start < b->start;
            });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i - 1]->Overlaps(*order[i])) {
      throw StructuralError("overlapping spans " + order[i - 1]->role.str() +
                            " and " + order[i]->role.str() + " at word " +
                            std::to_string(order[i]->start));
    }
  }

  BioSequence seq(length);
  for (const LabeledSpan *span : order) {
    seq[span->start] = BioTag::Begin(span->role);
    for (std::size_t i = span->start + 1; i <= span->end; ++i) {
      seq[i] = BioTag::Inside(span->role);
    }
  }
  return seq;
}

const char *ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kOrphanInside:
      return "orphan_inside";
    case ViolationKind::kDuplicateRole:
      return "duplicate_role";
  }
  return "unknown";
}

std::vector<BioViolation> ValidateBio(std::span<const BioTag> seq) {
  std::vector<BioViolation> violations;
  std::set<RoleLabel> seen;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].is_outside() || Continues(seq, i)) continue;
    // `i` opens a span.
    const RoleLabel &role = seq[i].role();
    if (seq[i].is_inside()) {
      violations.push_back({i, ViolationKind::kOrphanInside, role});
    }
    if (!seen.insert(role).second) {
      violations.push_back({i, ViolationKind::kDuplicateRole, role});
    }
  }
  return violations;
}

BioSequence RepairOrphans(std::span<const BioTag> seq) {
  BioSequence out(seq.begin(), seq.end());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].is_inside() && !Continues(seq, i)) {
      out[i] = BioTag::Begin(seq[i].role());
    }
  }
  return out;
}

Frame MakeFrame(std::size_t predicate_index, std::span<const BioTag> seq) {
  return Frame{predicate_index, DecodeSpans(seq)};
}

}  // namespace srl
