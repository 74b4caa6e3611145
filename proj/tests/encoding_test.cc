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
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "srl/encoding.h"
#include "srl/error.h"
#include "srl/instance.h"
#include "srl/model_input.h"

namespace srl {
namespace {

std::vector<Token> Words(const std::vector<std::string> &texts) {
  return MakeTokens(texts);
}

// Splits any word into one piece per character and records every call.
class CharBackend : public TaggerBackend {
 public:
  std::vector<SubwordId> Tokenize(std::string_view word) override {
    calls.emplace_back(word);
    if (word == "<empty>") return {};
    std::vector<SubwordId> ids;
    for (char c : word) ids.push_back(1000 + static_cast<unsigned char>(c));
    return ids;
  }
  ScoreTensor Forward(const Batch &) override { return {}; }
  const SubwordVocab &vocab() const override { return vocab_; }
  const std::vector<std::string> &labels() const override { return labels_; }

  std::vector<std::string> calls;

 private:
  SubwordVocab vocab_;
  std::vector<std::string> labels_ = {"O"};
};

TEST(MockSplitTest, FourCharacterPieces) {
  EXPECT_EQ(MockBackend::SplitPieces("temperament"),
            (std::vector<std::string>{"temp", "eram", "ent"}));
  EXPECT_EQ(MockBackend::SplitPieces("go"), (std::vector<std::string>{"go"}));
  EXPECT_EQ(MockBackend::SplitPieces("home"),
            (std::vector<std::string>{"home"}));
  EXPECT_EQ(MockBackend::SplitPieces("present"),
            (std::vector<std::string>{"pres", "ent"}));
}

TEST(MockSplitTest, CountsCodePoints) {
  // 10 code points, 11 bytes.
  EXPECT_EQ(MockBackend::SplitPieces("\xc3\xa9" "crasement"),
            (std::vector<std::string>{"\xc3\xa9" "cra", "seme", "nt"}));
  EXPECT_EQ(MockBackend::SplitPieces("l'"), (std::vector<std::string>{"l'"}));
}

TEST(MockTokenizeTest, DeterministicAndContextFree) {
  MockBackend a(5), b(5), other(6);
  const auto go = a.Tokenize("go");
  ASSERT_EQ(go.size(), 1u);
  EXPECT_EQ(a.Tokenize("go"), go);
  EXPECT_EQ(b.Tokenize("go"), go);
  EXPECT_EQ(a.Tokenize("temperament").size(), 3u);
  // Same piece, same id, regardless of the word it came from.
  EXPECT_EQ(a.Tokenize("temperament")[0], a.Tokenize("temp")[0]);
  int differing = 0;
  for (const char *w : {"go", "home", "present", "alpha", "beta", "x"}) {
    if (a.Tokenize(w) != other.Tokenize(w)) ++differing;
  }
  EXPECT_GE(differing, 5);
}

TEST(MockTokenizeTest, AvoidsSpecialIds) {
  MockBackend backend(1);
  const SubwordVocab &vocab = backend.vocab();
  std::set<SubwordId> seen;
  std::set<std::string> words;
  std::mt19937 rng(3);
  for (int i = 0; i < 20000; ++i) {
    std::string word;
    const int n = 1 + rng() % 4;
    for (int k = 0; k < n; ++k) word += static_cast<char>('a' + rng() % 26);
    words.insert(word);
    for (SubwordId id : backend.Tokenize(word)) {
      ASSERT_FALSE(vocab.IsSpecial(id));
      ASSERT_GE(id, 0);
      ASSERT_LT(static_cast<std::size_t>(id), vocab.size);
      seen.insert(id);
    }
  }
  // Uniform hashing of m keys into N buckets fills N(1 - e^(-m/N)).
  const double m = static_cast<double>(words.size());
  const double n = static_cast<double>(vocab.size - 3);
  EXPECT_GT(static_cast<double>(seen.size()), 0.97 * n * (1 - std::exp(-m / n)));
}

TEST(EncodeSentenceOnceTest, ShortWordsMapOneToOne) {
  MockBackend backend;
  const auto encoded =
      EncodeSentenceOnce(Words({"I", "want", "to", "go", "home"}), backend);
  EXPECT_EQ(encoded.subword_ids.size(), 5u);
  EXPECT_EQ(encoded.first_subword_index_per_word,
            (std::vector<std::int32_t>{1, 2, 3, 4, 5}));
}

TEST(EncodeSentenceOnceTest, MaryGaveSentence) {
  MockBackend backend;
  const auto encoded = EncodeSentenceOnce(
      Words({"Mary", "gave", "me", "a", "present", "."}), backend);
  EXPECT_EQ(encoded.first_subword_index_per_word,
            (std::vector<std::int32_t>{1, 2, 3, 4, 5, 7}));
  EXPECT_EQ(encoded.subword_ids.size(), 7u);
}

TEST(EncodeSentenceOnceTest, OneCallPerWordInOrder) {
  CharBackend backend;
  const auto words = Words({"ab", "c", "ab"});
  const auto encoded = EncodeSentenceOnce(words, backend);
  EXPECT_EQ(backend.calls, (std::vector<std::string>{"ab", "c", "ab"}));
  EXPECT_EQ(encoded.subword_ids,
            (std::vector<SubwordId>{1097, 1098, 1099, 1097, 1098}));
  EXPECT_EQ(encoded.first_subword_index_per_word,
            (std::vector<std::int32_t>{1, 3, 4}));
}

TEST(EncodeSentenceOnceTest, ArithmeticInvariant) {
  MockBackend backend(9);
  std::mt19937 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> texts;
    std::vector<std::size_t> pieces;
    const int n = 1 + rng() % 30;
    for (int i = 0; i < n; ++i) {
      std::string w;
      const int len = 1 + rng() % 14;
      for (int k = 0; k < len; ++k) w += static_cast<char>('a' + rng() % 26);
      texts.push_back(w);
      pieces.push_back((w.size() + 3) / 4);
    }
    const auto encoded = EncodeSentenceOnce(Words(texts), backend);
    const auto &firsts = encoded.first_subword_index_per_word;
    ASSERT_EQ(firsts.size(), texts.size());
    std::int32_t expected = 1;
    for (std::size_t i = 0; i < firsts.size(); ++i) {
      ASSERT_EQ(firsts[i], expected);
      expected += static_cast<std::int32_t>(pieces[i]);
    }
    ASSERT_EQ(static_cast<std::size_t>(firsts.back()) + pieces.back() - 1,
              encoded.subword_ids.size());
  }
}

TEST(EncodeSentenceOnceTest, Errors) {
  CharBackend backend;
  EXPECT_THROW(EncodeSentenceOnce({}, backend), StructuralError);
  try {
    EncodeSentenceOnce(Words({"fine", "<empty>"}), backend);
    FAIL() << "expected EncodingError";
  } catch (const EncodingError &e) {
    EXPECT_NE(std::string(e.what()).find("<empty>"), std::string::npos);
  }
}

TEST(MockForwardTest, DeterministicAndPaddingInvariant) {
  MockBackend backend(4);
  ModelInput shorter{{101, 7, 8, 102, 8, 102},
                     {0, 0, 0, 0, 1, 1},
                     {1, 1, 1, 1, 1, 1},
                     1,
                     {1, 2}};
  ModelInput longer{{101, 7, 8, 9, 9, 102, 9, 102},
                    {0, 0, 0, 0, 0, 0, 1, 1},
                    {1, 1, 1, 1, 1, 1, 1, 1},
                    2,
                    {1, 2, 3}};
  const std::vector<ModelInput> alone = {shorter};
  const std::vector<ModelInput> pair = {shorter, longer};
  const auto a = backend.Forward(PadAndStack(alone, 0));
  const auto b = backend.Forward(PadAndStack(pair, 0));
  const auto c = backend.Forward(PadAndStack(pair, 0));
  ASSERT_EQ(a.size(), 1u);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(a[0], b[0]);
  EXPECT_EQ(b, c);
  EXPECT_EQ(b[1].words, 3u);
  EXPECT_EQ(b[1].labels, MockBackend::DefaultLabels().size());
}

TEST(MockForwardTest, DependsOnPredicateAndSegments) {
  MockBackend backend;
  ModelInput base{{101, 7, 8, 102, 8, 102},
                  {0, 0, 0, 0, 1, 1},
                  {1, 1, 1, 1, 1, 1},
                  1,
                  {1, 2}};
  ModelInput moved = base;
  moved.predicate_word_index = 0;
  ModelInput resegmented = base;
  resegmented.segment_ids = {0, 0, 0, 1, 1, 1};
  const std::vector<ModelInput> rows = {base, moved, resegmented};
  const auto scores = backend.Forward(PadAndStack(rows, 0));
  EXPECT_NE(scores[0].values, scores[1].values);
  EXPECT_NE(scores[0].values, scores[2].values);
}

TEST(MockForwardTest, RejectsFirstIndexPastRow) {
  MockBackend backend;
  ModelInput bad{{101, 7, 102, 7, 102}, {0, 0, 0, 1, 1}, {1, 1, 1, 1, 1}, 0,
                 {1, 5}};
  const std::vector<ModelInput> rows = {bad};
  EXPECT_THROW(backend.Forward(PadAndStack(rows, 0)), BoundsError);
}

TEST(MockBackendTest, LabelVocabulary) {
  const auto &labels = MockBackend::DefaultLabels();
  EXPECT_EQ(labels.size(), 43u);
  EXPECT_EQ(labels.front(), "O");
  EXPECT_NE(std::find(labels.begin(), labels.end(), "B-ARG0"), labels.end());
  EXPECT_NE(std::find(labels.begin(), labels.end(), "I-ARGM-TMP"),
            labels.end());
}

TEST(InstrumentedBackendTest, CountsAndResets) {
  MockBackend mock;
  InstrumentedBackend counted(mock);
  counted.Tokenize("a");
  counted.Tokenize("b");
  const std::vector<ModelInput> rows = {
      {{101, 7, 102, 7, 102}, {0, 0, 0, 1, 1}, {1, 1, 1, 1, 1}, 0, {1}},
      {{101, 7, 102, 7, 102}, {0, 0, 0, 1, 1}, {1, 1, 1, 1, 1}, 0, {1}}};
  counted.Forward(PadAndStack(rows, 0));
  EXPECT_EQ(counted.tokenize_calls(), 2u);
  EXPECT_EQ(counted.forward_calls(), 1u);
  EXPECT_EQ(counted.forward_rows(), 2u);
  counted.Reset();
  EXPECT_EQ(counted.tokenize_calls(), 0u);
}

}  // namespace
}  // namespace srl
