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

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "srl/bio.h"
#include "srl/error.h"
#include "srl/projection.h"

namespace srl {
namespace {

using Strings = std::vector<std::string>;

const Strings kSource = {"Stock", "prices", "have",    "fallen",
                         "sharply", "in",   "years",   "after",
                         "the",   "october", "1987",   "crash"};
const Strings kSourceTags = {"B-ARG1",     "I-ARG1",     "O",
                             "B-V",        "B-ARGM-MNR", "O",
                             "O",          "I-ARGM-TMP", "I-ARGM-TMP",
                             "I-ARGM-TMP", "I-ARGM-TMP", "I-ARGM-TMP"};
// Target with the unaligned "de" removed.
const Strings kTarget = {"Les",   "cours",  "ont", "fortement", "chuté",
                         "après", "l'", "écrasement", "octobre", "1987"};

Alignment StockPriceLinks() {
  return Alignment::ParsePharaoh("1-1 3-4 4-3 7-5 8-6 9-7 9-8 10-9 11-7");
}

DepTree SourceTree(bool split_pp) {
  // 1-based heads per token.
  std::vector<int> heads = {2, 4, 4, 0, 4, 7, 4, 12, 12, 12, 12, 7};
  Strings rels = {"compound", "nsubj", "aux",  "root",     "advmod",   "case",
                  "obl",      "case",  "det",  "compound", "nummod",   "nmod"};
  if (split_pp) {
    heads = {2, 4, 4, 0, 4, 7, 4, 4, 12, 12, 12, 8};
    rels[7] = "prep";
    rels[11] = "pobj";
  }
  DepTree tree;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    tree.forms.push_back(kSource[i]);
    tree.head.push_back(heads[i] == 0 ? DepTree::kRoot : heads[i] - 1);
    tree.relation.push_back(rels[i]);
    tree.pos.push_back("X");
  }
  return tree;
}

TEST(AlignmentTest, ParseAndFormat) {
  const auto a = Alignment::ParsePharaoh("  3-1 0-0\t1-2 0-0 ");
  EXPECT_EQ(a.pairs(), (std::vector<AlignedPair>{{0, 0}, {1, 2}, {3, 1}}));
  EXPECT_EQ(a.ToPharaoh(), "0-0 1-2 3-1");
  EXPECT_EQ(Alignment::ParsePharaoh(a.ToPharaoh()), a);
  EXPECT_TRUE(Alignment::ParsePharaoh("").empty());
  for (const char *bad : {"1", "1-", "-2", "a-b", "1-2-3", "1_2", "-1-2"}) {
    EXPECT_THROW(Alignment::ParsePharaoh(bad), FormatError) << bad;
  }
  EXPECT_TRUE(a.IsOneToOne());
  EXPECT_FALSE(Alignment::ParsePharaoh("0-0 0-1").IsOneToOne());
  EXPECT_FALSE(Alignment::ParsePharaoh("0-1 2-1").IsOneToOne());
}

TEST(OneToOneTest, StockPriceLinksDropNineSeven) {
  const auto original =
      EnforceOneToOne(Alignment::ParsePharaoh("7-5 8-6 9-7 9-9 10-10 11-7"));
  EXPECT_EQ(original.kept.ToPharaoh(), "7-5 8-6 9-9 10-10 11-7");
  EXPECT_EQ(original.dropped, (std::vector<AlignedPair>{{9, 7}}));

  const auto trimmed = EnforceOneToOne(StockPriceLinks());
  EXPECT_EQ(trimmed.dropped, (std::vector<AlignedPair>{{9, 7}}));
  EXPECT_TRUE(trimmed.kept.IsOneToOne());
}

TEST(OneToOneTest, TieBreaksTowardSmallerSource) {
  // Sources 1 and 3 both sit at distance 1 from target 2.
  const auto r = EnforceOneToOne(Alignment::ParsePharaoh("1-2 3-2"));
  EXPECT_EQ(r.kept.ToPharaoh(), "1-2");
  EXPECT_EQ(r.dropped, (std::vector<AlignedPair>{{3, 2}}));
}

// Repeatedly takes the cheapest link whose endpoints are both unused.
Alignment ReferenceResolve(const Alignment &a) {
  std::vector<AlignedPair> left = a.pairs();
  std::vector<AlignedPair> kept;
  while (!left.empty()) {
    auto cost = [](const AlignedPair &p) {
      const long d = static_cast<long>(p.first) - static_cast<long>(p.second);
      return std::make_tuple(std::labs(d), p.first, p.second);
    };
    auto best = std::min_element(
        left.begin(), left.end(),
        [&](const auto &x, const auto &y) { return cost(x) < cost(y); });
    const AlignedPair pick = *best;
    kept.push_back(pick);
    std::erase_if(left, [&](const AlignedPair &p) {
      return p.first == pick.first || p.second == pick.second;
    });
  }
  return Alignment(kept);
}

TEST(OneToOneTest, RandomSetsAgainstReference) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<AlignedPair> pairs;
    const std::size_t n = rng() % 25;
    for (std::size_t k = 0; k < n; ++k) pairs.emplace_back(rng() % 9, rng() % 9);
    const Alignment input(pairs);
    const auto r = EnforceOneToOne(input);
    ASSERT_TRUE(r.kept.IsOneToOne());
    ASSERT_EQ(r.kept, ReferenceResolve(input));
    std::vector<AlignedPair> all = r.kept.pairs();
    all.insert(all.end(), r.dropped.begin(), r.dropped.end());
    ASSERT_EQ(Alignment(all), input);
    const auto again = EnforceOneToOne(r.kept);
    ASSERT_EQ(again.kept, r.kept);
    ASSERT_TRUE(again.dropped.empty());
  }
}

TEST(ProjectTagsTest, StockPriceSentence) {
  const auto links = EnforceOneToOne(StockPriceLinks()).kept;
  const auto target =
      ProjectTags(ParseBioSequence(kSourceTags), links, kTarget.size());
  EXPECT_EQ(BioStrings(target),
            (Strings{"O", "B-ARG1", "O", "B-ARGM-MNR", "B-V", "B-ARGM-TMP",
                     "I-ARGM-TMP", "I-ARGM-TMP", "I-ARGM-TMP", "I-ARGM-TMP"}));
}

TEST(ProjectTagsTest, UnalignedTokenLeavesGap) {
  const Strings with_de = {"Les",   "cours", "ont",        "fortement",
                           "chuté", "après", "l'",         "écrasement",
                           "de",    "octobre", "1987"};
  const auto links =
      EnforceOneToOne(Alignment::ParsePharaoh("7-5 8-6 9-7 9-9 10-10 11-7"))
          .kept;
  const auto target =
      ProjectTags(ParseBioSequence(kSourceTags), links, with_de.size());
  EXPECT_EQ(BioStrings(target),
            (Strings{"O", "O", "O", "O", "O", "B-ARGM-TMP", "I-ARGM-TMP",
                     "I-ARGM-TMP", "O", "B-ARGM-TMP", "I-ARGM-TMP"}));
}

TEST(ProjectTagsTest, TrivialCasesAndErrors) {
  const auto source = ParseBioSequence(kSourceTags);
  EXPECT_EQ(BioStrings(ProjectTags(source, Alignment(), 4)),
            Strings(4, "O"));
  std::vector<AlignedPair> identity;
  for (std::size_t i = 0; i < source.size(); ++i) identity.emplace_back(i, i);
  EXPECT_EQ(ProjectTags(source, Alignment(identity), source.size()),
            RepairBoundary(source));
  EXPECT_THROW(ProjectTags(source, Alignment::ParsePharaoh("0-0 1-0"), 3),
               StructuralError);
  EXPECT_THROW(ProjectTags(source, Alignment::ParsePharaoh("0-5"), 3),
               BoundsError);
  EXPECT_THROW(ProjectTags(source, Alignment::ParsePharaoh("40-0"), 3),
               BoundsError);
}

TEST(ProjectTagsTest, FuzzedAlignmentsStayValidAndInventNothing) {
  std::mt19937 rng(15);
  const Strings alphabet = {"O", "B-ARG0", "I-ARG0", "B-ARG1", "I-ARG1",
                            "B-V", "I-ARGM-TMP"};
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = 1 + rng() % 14, m = 1 + rng() % 14;
    Strings tags(n);
    for (auto &t : tags) t = alphabet[rng() % alphabet.size()];
    std::vector<AlignedPair> pairs;
    for (std::size_t k = rng() % (2 * n); k > 0; --k) {
      pairs.emplace_back(rng() % n, rng() % m);
    }
    const auto source = ParseBioSequence(tags);
    const auto links = EnforceOneToOne(Alignment(pairs)).kept;
    const auto target = ProjectTags(source, links, m);
    for (const auto &v : ValidateBio(target)) {
      ASSERT_NE(v.kind, ViolationKind::kOrphanInside);
    }
    std::multiset<std::string> source_roles, target_roles;
    for (const auto &t : source) {
      if (!t.is_outside()) source_roles.insert(t.role().str());
    }
    for (const auto &t : target) {
      if (!t.is_outside()) target_roles.insert(t.role().str());
    }
    ASSERT_TRUE(std::includes(source_roles.begin(), source_roles.end(),
                              target_roles.begin(), target_roles.end()));
  }
}

std::vector<Token> Toks(const Strings &s) { return MakeTokens(s); }

TEST(ProjectCorpusTest, StockPriceSentenceWithProvenance) {
  const DepTree tree = SourceTree(false);
  const std::vector<SourceSentence> sources = {
      {Toks(kSource), {{3, ParseBioSequence(kSourceTags)}}, &tree}};
  const std::vector<std::vector<Token>> targets = {Toks(kTarget)};
  const std::vector<Alignment> alignments = {StockPriceLinks()};
  const auto result = ProjectCorpus(sources, targets, alignments);
  ASSERT_EQ(result.sentences.size(), 1u);
  EXPECT_TRUE(result.skipped.empty());
  const auto &s = result.sentences[0];
  ASSERT_EQ(s.frames.size(), 1u);
  EXPECT_EQ(s.frames[0].predicate_index, 4u);
  EXPECT_EQ(s.frames[0].tags[5].str(), "B-ARGM-TMP");
  for (std::size_t t : {6u, 7u, 8u, 9u}) {
    EXPECT_EQ(s.frames[0].tags[t].str(), "I-ARGM-TMP") << kTarget[t];
  }
  EXPECT_EQ(s.provenance[5], 7u);
  EXPECT_EQ(s.provenance[7], 11u);
  EXPECT_EQ(s.provenance[8], 9u);
  EXPECT_FALSE(s.provenance[0].has_value());
  // Every non-O tag has a source token.
  for (std::size_t t = 0; t < kTarget.size(); ++t) {
    if (!s.frames[0].tags[t].is_outside()) {
      EXPECT_TRUE(s.provenance[t].has_value());
    }
  }
  const auto json = s.ToJson();
  EXPECT_EQ(json["dropped_links"], nlohmann::ordered_json::array({"9-7"}));
  EXPECT_EQ(json["frames"][0]["predicate_word_idx"], 4);
  EXPECT_EQ(json["frames"][0]["labels"][5], "B-ARGM-TMP");
  EXPECT_EQ(json["provenance"][0], nullptr);
  EXPECT_EQ(json["words"][7], "écrasement");
}

TEST(ProjectCorpusTest, SourceRepeatsMergedBeforeTransfer) {
  const DepTree tree = SourceTree(true);
  Strings split = kSourceTags;
  split[7] = "B-ARGM-TMP";
  split[8] = "B-ARGM-TMP";
  const std::vector<std::vector<Token>> targets = {Toks(kTarget)};
  const std::vector<Alignment> alignments = {StockPriceLinks()};

  const std::vector<SourceSentence> with_tree = {
      {Toks(kSource), {{3, ParseBioSequence(split)}}, &tree}};
  const auto merged = ProjectCorpus(with_tree, targets, alignments);
  const auto &tags = merged.sentences[0].frames[0].tags;
  EXPECT_EQ(tags[5].str(), "B-ARGM-TMP");
  EXPECT_EQ(tags[6].str(), "I-ARGM-TMP");
  EXPECT_EQ(tags[7].str(), "I-ARGM-TMP");

  const std::vector<SourceSentence> without_tree = {
      {Toks(kSource), {{3, ParseBioSequence(split)}}, nullptr}};
  const auto raw = ProjectCorpus(without_tree, targets, alignments);
  EXPECT_EQ(raw.sentences[0].frames[0].tags[6].str(), "B-ARGM-TMP");
}

TEST(ProjectCorpusTest, IdentityCopyAndSkips) {
  const Strings words = {"Mary", "gave", "me", "a", "present", "."};
  const Strings tags = {"B-ARG0", "B-V", "B-ARG2", "B-ARG1", "I-ARG1", "O"};
  const std::vector<SourceSentence> sources = {
      {Toks(words), {{1, ParseBioSequence(tags)}}, nullptr},
      {Toks(words), {{1, ParseBioSequence(tags)}}, nullptr},
      {Toks(words), {{1, ParseBioSequence(tags)}}, nullptr}};
  const std::vector<std::vector<Token>> targets = {Toks(words), Toks(words)};
  const std::vector<Alignment> alignments = {
      Alignment::ParsePharaoh("0-0 1-1 2-2 3-3 4-4 5-5"),
      Alignment::ParsePharaoh("0-0 9-9")};
  const auto result = ProjectCorpus(sources, targets, alignments);
  ASSERT_EQ(result.sentences.size(), 1u);
  EXPECT_EQ(BioStrings(result.sentences[0].frames[0].tags), tags);
  ASSERT_EQ(result.skipped.size(), 2u);
  EXPECT_EQ(result.skipped[0].first, 1u);
  EXPECT_NE(result.skipped[0].second.find("outside"), std::string::npos);
  EXPECT_EQ(result.skipped[1].first, 2u);
}

}  // namespace
}  // namespace srl
