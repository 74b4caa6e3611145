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

#include "srl/projection.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "srl/error.h"

namespace srl {

namespace {

std::size_t Distance(const AlignedPair &p) {
  return p.first > p.second ? p.first - p.second : p.second - p.first;
}

void CheckRange(const Alignment &alignment, std::size_t source_length,
                std::size_t target_length) {
  for (const auto &[s, t] : alignment.pairs()) {
    if (s >= source_length || t >= target_length) {
      throw BoundsError("alignment link " + std::to_string(s) + "-" +
                        std::to_string(t) + " outside sentences of length " +
                        std::to_string(source_length) + "/" +
                        std::to_string(target_length));
    }
  }
}

}  // namespace

Alignment::Alignment(std::vector<AlignedPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

Alignment Alignment::ParsePharaoh(std::string_view line) {
  std::vector<AlignedPair> pairs;
  std::istringstream in{std::string(line)};
  for (std::string item; in >> item;) {
    const auto dash = item.find('-');
    std::size_t s = 0, t = 0;
    bool ok = dash != std::string::npos;
    if (ok) {
      auto r1 = std::from_chars(item.data(), item.data() + dash, s);
      auto r2 = std::from_chars(item.data() + dash + 1,
                                item.data() + item.size(), t);
      ok = r1.ec == std::errc() && r1.ptr == item.data() + dash &&
           r2.ec == std::errc() && r2.ptr == item.data() + item.size() &&
           dash > 0 && dash + 1 < item.size();
    }
    if (!ok) throw FormatError("bad alignment link '" + item + "'");
    pairs.emplace_back(s, t);
  }
  return Alignment(std::move(pairs));
}

std::string Alignment::ToPharaoh() const {
  std::string out;
  for (const auto &[s, t] : pairs_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(s) + "-" + std::to_string(t);
  }
  return out;
}

bool Alignment::IsOneToOne() const {
  std::set<std::size_t> sources, targets;
  for (const auto &[s, t] : pairs_) {
    if (!sources.insert(s).second || !targets.insert(t).second) return false;
  }
  return true;
}

OneToOneResult NearestLinkPolicy::Resolve(const Alignment &alignment) const {
  std::vector<AlignedPair> order = alignment.pairs();
  std::stable_sort(order.begin(), order.end(),
                   [](const AlignedPair &a, const AlignedPair &b) {
                     return Distance(a) < Distance(b);
                   });
  std::set<std::size_t> sources, targets;
  std::vector<AlignedPair> kept;
  OneToOneResult result;
  for (const auto &link : order) {
    if (sources.contains(link.first) || targets.contains(link.second)) {
      result.dropped.push_back(link);
      continue;
    }
    sources.insert(link.first);
    targets.insert(link.second);
    kept.push_back(link);
  }
  result.kept = Alignment(std::move(kept));
  std::sort(result.dropped.begin(), result.dropped.end());
  return result;
}

OneToOneResult EnforceOneToOne(const Alignment &alignment) {
  return NearestLinkPolicy().Resolve(alignment);
}

BioSequence ProjectTags(std::span<const BioTag> source,
                        const Alignment &alignment,
                        std::size_t target_length) {
  if (!alignment.IsOneToOne()) {
    throw StructuralError("projection requires a one-to-one alignment");
  }
  CheckRange(alignment, source.size(), target_length);
  BioSequence target(target_length);
  for (const auto &[s, t] : alignment.pairs()) target[t] = source[s];
  return RepairBoundary(target);
}

nlohmann::ordered_json ProjectedSentence::ToJson() const {
  nlohmann::ordered_json frames_json = nlohmann::ordered_json::array();
  for (const auto &frame : frames) {
    nlohmann::ordered_json f;
    f["source_predicate_word_idx"] = frame.source_predicate_index;
    if (frame.predicate_index) {
      f["predicate_word_idx"] = *frame.predicate_index;
    } else {
      f["predicate_word_idx"] = nullptr;
    }
    f["labels"] = BioStrings(frame.tags);
    frames_json.push_back(std::move(f));
  }
  nlohmann::ordered_json prov = nlohmann::ordered_json::array();
  for (const auto &p : provenance) {
    if (p) {
      prov.push_back(*p);
    } else {
      prov.push_back(nullptr);
    }
  }
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  for (const auto &[s, t] : dropped_links) {
    dropped.push_back(std::to_string(s) + "-" + std::to_string(t));
  }
  return {{"sentence_index", sentence_index},
          {"words", TokenTexts(words)},
          {"frames", frames_json},
          {"provenance", prov},
          {"dropped_links", dropped}};
}

ProjectionResult ProjectCorpus(std::span<const SourceSentence> sources,
                               std::span<const std::vector<Token>> targets,
                               std::span<const Alignment> alignments,
                               const AlignmentPolicy &policy,
                               const ClassifierConfig &config) {
  ProjectionResult result;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const SourceSentence &source = sources[i];
    if (i >= targets.size() || i >= alignments.size()) {
      result.skipped.emplace_back(i, "no target sentence or alignment");
      continue;
    }
    const std::vector<Token> &target = targets[i];

    std::vector<BioSequence> repaired;
    if (source.tree != nullptr) {
      std::vector<AnalysisFrame> frames;
      for (const auto &frame : source.frames) {
        frames.push_back(
            AnalysisFrame{i, frame.predicate_word_index, frame.tags, source.tree});
      }
      repaired = AnalyzeCorpus(frames, config).repaired;
    } else {
      for (const auto &frame : source.frames) {
        repaired.push_back(RepairBoundary(frame.tags));
      }
    }

    OneToOneResult links = policy.Resolve(alignments[i]);
    try {
      CheckRange(links.kept, source.words.size(), target.size());
    } catch (const BoundsError &e) {
      result.skipped.emplace_back(i, e.what());
      continue;
    }

    ProjectedSentence projected;
    projected.sentence_index = i;
    projected.words = target;
    projected.provenance.assign(target.size(), std::nullopt);
    for (const auto &[s, t] : links.kept.pairs()) projected.provenance[t] = s;
    projected.dropped_links = links.dropped;

    for (std::size_t f = 0; f < source.frames.size(); ++f) {
      ProjectedFrame frame;
      frame.source_predicate_index = source.frames[f].predicate_word_index;
      for (const auto &[s, t] : links.kept.pairs()) {
        if (s == frame.source_predicate_index) frame.predicate_index = t;
      }
      frame.tags = ProjectTags(repaired[f], links.kept, target.size());
      projected.frames.push_back(std::move(frame));
    }
    result.sentences.push_back(std::move(projected));
  }
  return result;
}

}  // namespace srl
