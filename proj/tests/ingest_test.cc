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

#include <random>
#include <sstream>
#include <streambuf>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "srl/bio.h"
#include "srl/error.h"
#include "srl/ingest.h"
#include "srl/instance.h"

namespace srl {
namespace {

const std::string kFixture = std::string(SRL_TEST_DATA_DIR) + "/fixture.columns";

std::vector<std::string> Texts(const std::vector<Token> &tokens) {
  return TokenTexts(tokens);
}

std::vector<std::string> Labels(const SrlInstance &instance) {
  return BioStrings(instance.labels);
}

std::vector<ParsedSentence> ParseFixture() {
  std::vector<ParsedSentence> parsed;
  for (const auto &sentence : ReadColumnSentences(kFixture)) {
    parsed.push_back(ParseSentence(sentence, ArtifactPatterns::Default()));
  }
  return parsed;
}

TEST(CleanTokensTest, DropsTraces) {
  const auto patterns = ArtifactPatterns::Default();
  const std::vector<std::string> raw = {"Mary", "*T*-1", "gave"};
  const auto tokens = CleanTokens(raw, patterns);
  EXPECT_EQ(Texts(tokens), (std::vector<std::string>{"Mary", "gave"}));
  EXPECT_EQ(tokens[1].index, 1u);
}

TEST(CleanTokensTest, KeepsPlainTokensAndEmpty) {
  const auto patterns = ArtifactPatterns::Default();
  const std::vector<std::string> raw = {"Mary", "gave"};
  EXPECT_EQ(Texts(CleanTokens(raw, patterns)), raw);
  EXPECT_TRUE(CleanTokens({}, patterns).empty());
}

TEST(CleanTokensTest, DefaultPatternSet) {
  const auto patterns = ArtifactPatterns::Default();
  for (const char *artifact :
       {"*", "*-2", "*T*-1", "*PRO*", "*U*", "*?*", "*EXP*-2", "*0*", "%pw"}) {
    EXPECT_TRUE(patterns.IsArtifact(artifact)) << artifact;
  }
  for (const char *word : {"%", "5", "a*b", "rock'n'roll", "*star", "100%"}) {
    EXPECT_FALSE(patterns.IsArtifact(word)) << word;
  }
}

TEST(CleanTokensTest, CustomPatterns) {
  const ArtifactPatterns patterns({"<[a-z]+>"});
  const std::vector<std::string> raw = {"<unk>", "*T*-1", "go"};
  EXPECT_EQ(Texts(CleanTokens(raw, patterns)),
            (std::vector<std::string>{"*T*-1", "go"}));
  EXPECT_THROW(ArtifactPatterns({"("}), FormatError);
}

TEST(ParseColumnTest, MaryGaveInstance) {
  std::istringstream in(
      "Mary (ARG0*)\ngave (V*)\nme (ARG2*)\na (ARG1*\npresent *)\n. *\n");
  const auto sentences = ReadColumnSentences(in);
  ASSERT_EQ(sentences.size(), 1u);
  EXPECT_EQ(sentences[0].predicate_count(), 1u);
  const auto instances =
      ParseColumnAnnotations(sentences[0], ArtifactPatterns::Default());
  ASSERT_EQ(instances.size(), 1u);
  EXPECT_EQ(instances[0].predicate_word_idx, 1u);
  EXPECT_EQ(Labels(instances[0]),
            (std::vector<std::string>{"B-ARG0", "B-V", "B-ARG2", "B-ARG1",
                                      "I-ARG1", "O"}));
}

TEST(ParseColumnTest, ArgumentFreePredicate) {
  std::istringstream in("It *\nrained (V*)\n. *\n");
  const auto instances = ParseColumnAnnotations(ReadColumnSentences(in)[0],
                                                ArtifactPatterns::Default());
  EXPECT_EQ(Labels(instances[0]),
            (std::vector<std::string>{"O", "B-V", "O"}));
}

TEST(ParseColumnTest, ErrorsAreSkips) {
  const auto patterns = ArtifactPatterns::Default();
  const std::vector<std::string> broken = {
      "a (ARG0*\nb (V*)\n",        // unclosed
      "a (ARG0*))\nb (V*)\n",      // extra close
      "a (ARG0*)\nb *\n",          // no predicate
      "a (V*)\nb (V*)\n",          // two predicates
      "a (ARG0*) *\nb (V*)\n",     // ragged rows
      "a (ARGX*)\nb (V*)\n",       // bad role
      "a x\nb (V*)\n",             // bad cell
      "*T*-1 (V*)\nb *\n",         // predicate on an artifact
  };
  for (const auto &text : broken) {
    std::istringstream in(text);
    const auto sentences = ReadColumnSentences(in);
    ASSERT_EQ(sentences.size(), 1u) << text;
    const ParsedSentence parsed = ParseSentence(sentences[0], patterns);
    EXPECT_TRUE(parsed.skip_reason.has_value()) << text;
    EXPECT_TRUE(parsed.instances.empty()) << text;
  }
}

TEST(ParseColumnTest, UnbalancedSentenceIsSkippedAndReported) {
  std::istringstream in(
      "a (ARG0*\nb (V*)\n\nc (ARG0*)\nd (V*)\n");
  std::vector<ParsedSentence> parsed;
  for (const auto &s : ReadColumnSentences(in)) {
    parsed.push_back(ParseSentence(s, ArtifactPatterns::Default()));
  }
  std::ostringstream sink;
  const IngestReport report = EmitInstances(parsed, sink);
  EXPECT_EQ(report.sentences_read, 2u);
  EXPECT_EQ(report.sentences_skipped, 1u);
  EXPECT_EQ(report.instances_emitted, 1u);
  ASSERT_EQ(report.skip_reasons.size(), 1u);
  EXPECT_EQ(report.skip_reasons[0].first, 1u);
  EXPECT_NE(report.skip_reasons[0].second.find("ARG0"), std::string::npos);
}

TEST(FixtureTest, TenSentencesTwentyThreeInstances) {
  const auto parsed = ParseFixture();
  ASSERT_EQ(parsed.size(), 10u);
  std::ostringstream sink;
  const IngestReport report = EmitInstances(parsed, sink);
  EXPECT_EQ(report.sentences_read, 10u);
  EXPECT_EQ(report.sentences_skipped, 0u);
  EXPECT_EQ(report.instances_emitted, 23u);

  std::istringstream lines(sink.str());
  const auto objects = ReadJsonLines(lines, "emitted");
  ASSERT_EQ(objects.size(), 23u);
  for (const auto &object : objects) {
    // Field order follows the instance shape.
    auto it = object.begin();
    EXPECT_EQ(it.key(), "words");
    EXPECT_EQ((++it).key(), "predicate_word_idx");
    EXPECT_EQ((++it).key(), "labels");
    const SrlInstance instance = InstanceFromJson(object);
    EXPECT_TRUE(ValidateBio(instance.labels).empty());
    EXPECT_EQ(instance.labels[instance.predicate_word_idx].str(), "B-V");
  }
}

TEST(FixtureTest, HandCheckedInstances) {
  const auto parsed = ParseFixture();

  // Null element *0* removed, ARG1 shrinks onto the surviving tokens.
  const auto &said = parsed[1].instances[0];
  EXPECT_EQ(Texts(said.words),
            (std::vector<std::string>{"The", "company", "said", "it",
                                      "expects", "sales", "to", "rise", "."}));
  EXPECT_EQ(said.predicate_word_idx, 2u);
  EXPECT_EQ(Labels(said),
            (std::vector<std::string>{"B-ARG0", "I-ARG0", "B-V", "B-ARG1",
                                      "I-ARG1", "I-ARG1", "I-ARG1", "I-ARG1",
                                      "O"}));

  // A bare percent sign is a word.
  const auto &rose = parsed[3].instances[0];
  EXPECT_EQ(Labels(rose),
            (std::vector<std::string>{"B-ARG1", "B-V", "B-ARG2", "I-ARG2",
                                      "B-ARGM-TMP", "O", "O", "O", "O"}));

  // %pw marker removed.
  const auto &rained = parsed[5].instances[0];
  EXPECT_EQ(Texts(rained.words),
            (std::vector<std::string>{"Uh", "it", "rained", "."}));
  EXPECT_EQ(rained.predicate_word_idx, 2u);
  EXPECT_EQ(Labels(rained),
            (std::vector<std::string>{"B-ARGM-DIS", "O", "B-V", "O"}));

  // Nested R-ARG0 inside ARG0 flattens to the outer span.
  const auto &sold = parsed[6].instances[1];
  EXPECT_EQ(sold.predicate_word_idx, 5u);
  EXPECT_EQ(Labels(sold),
            (std::vector<std::string>{"B-ARG0", "I-ARG0", "I-ARG0", "I-ARG0",
                                      "I-ARG0", "B-V", "B-ARG1", "I-ARG1", "O",
                                      "O", "O"}));
  // The un-nested R-ARG0 of "lives" passes through.
  EXPECT_EQ(Labels(parsed[6].instances[0])[2], "B-R-ARG0");

  // Trace at the end of a span.
  const auto &surprised = parsed[7].instances[1];
  EXPECT_EQ(Texts(surprised.words),
            (std::vector<std::string>{"What", "she", "bought", "surprised",
                                      "us", "."}));
  EXPECT_EQ(Labels(surprised),
            (std::vector<std::string>{"B-ARG0", "I-ARG0", "I-ARG0", "B-V",
                                      "B-ARG1", "O"}));
}

TEST(FixtureTest, SentenceIdsAreOrdinals) {
  const auto sentences = ReadColumnSentences(kFixture);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    EXPECT_EQ(sentences[i].id, i + 1);
  }
  EXPECT_EQ(sentences[4].predicate_count(), 4u);
}

// Test-side bracket writer: outer spans plus optional nested inner spans.
std::vector<std::string> WriteBrackets(
    std::size_t n, const std::vector<std::tuple<std::string, std::size_t,
                                                std::size_t>> &spans) {
  std::vector<std::string> opens(n), closes(n);
  for (const auto &[role, start, end] : spans) {
    opens[start] += "(" + role;
    closes[end] += ")";
  }
  std::vector<std::string> cells(n);
  for (std::size_t i = 0; i < n; ++i) cells[i] = opens[i] + "*" + closes[i];
  return cells;
}

TEST(BracketTest, ParseInvertsGenerator) {
  std::mt19937 rng(11);
  const std::vector<std::string> roles = {"ARG0", "ARG1", "ARGM-TMP", "V",
                                          "C-ARG1", "R-ARG0"};
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::tuple<std::string, std::size_t, std::size_t>> outer, all;
    std::size_t i = 0;
    while (i < n) {
      if (rng() % 3 == 0) {
        ++i;
        continue;
      }
      const std::size_t len = 1 + rng() % (n - i);
      const std::string role = roles[rng() % roles.size()];
      outer.emplace_back(role, i, i + len - 1);
      all.emplace_back(role, i, i + len - 1);
      if (len >= 2 && rng() % 2 == 0) {
        // Nest one inner span strictly after the outer start.
        const std::size_t s = i + 1 + rng() % (len - 1);
        const std::size_t e = s + rng() % (i + len - s);
        all.emplace_back(roles[rng() % roles.size()], s, e);
      }
      i += len;
    }
    const auto cells = WriteBrackets(n, all);
    const auto spans = ParseBracketColumn(cells);
    ASSERT_EQ(spans.size(), outer.size());
    for (std::size_t k = 0; k < spans.size(); ++k) {
      ASSERT_EQ(spans[k].role.str(), std::get<0>(outer[k]));
      ASSERT_EQ(spans[k].start, std::get<1>(outer[k]));
      ASSERT_EQ(spans[k].end, std::get<2>(outer[k]));
    }
    // render then parse is the identity on flat columns.
    const auto flat = WriteBrackets(n, outer);
    ASSERT_EQ(RenderBracketColumn(spans, n), flat);
  }
}

// Stream buffer that refuses writes after `limit` bytes.
class FailingBuffer : public std::streambuf {
 public:
  explicit FailingBuffer(std::size_t limit) : limit_(limit) {}

 protected:
  int_type overflow(int_type c) override {
    if (written_ >= limit_) return traits_type::eof();
    ++written_;
    return c;
  }

 private:
  std::size_t limit_;
  std::size_t written_ = 0;
};

TEST(EmitInstancesTest, WriteFailureIsIoError) {
  const auto parsed = ParseFixture();
  std::ostringstream ok;
  EmitInstances(std::span(parsed).first(1), ok);
  const std::size_t first_line = ok.str().size();

  FailingBuffer buffer(first_line + 10);
  std::ostream sink(&buffer);
  try {
    EmitInstances(parsed, sink);
    FAIL() << "expected IoError";
  } catch (const IoError &e) {
    EXPECT_NE(std::string(e.what()).find("after 1 instances"),
              std::string::npos)
        << e.what();
  }
}

TEST(IngestReportTest, MergeAndJson) {
  IngestReport a, b;
  a.sentences_read = 2;
  a.instances_emitted = 3;
  b.sentences_read = 1;
  b.sentences_skipped = 1;
  b.skip_reasons.emplace_back(3, "bad");
  a.Merge(b);
  EXPECT_EQ(a.sentences_read, 3u);
  EXPECT_EQ(a.instances_emitted, 3u);
  const Json json = a.ToJson();
  EXPECT_EQ(json["sentences_skipped"], 1);
  EXPECT_EQ(json["skip_reasons"][0]["sentence_id"], 3);
}

}  // namespace
}  // namespace srl
