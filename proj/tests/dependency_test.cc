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

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "srl/dependency.h"
#include "srl/error.h"

namespace srl {
namespace {

constexpr const char *kTwoSentences =
    "# sent_id = 1\n"
    "# text = Mary gave me a present.\n"
    "1\tMary\tMary\tPROPN\tNNP\t_\t2\tnsubj\t_\t_\n"
    "2\tgave\tgive\tVERB\tVBD\t_\t0\troot\t_\t_\n"
    "3\tme\tI\tPRON\tPRP\t_\t2\tiobj\t_\t_\n"
    "4\ta\ta\tDET\tDT\t_\t5\tdet\t_\t_\n"
    "5\tpresent\tpresent\tNOUN\tNN\t_\t2\tobj\t_\tSpaceAfter=No\n"
    "6\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_\n"
    "\n"
    "1-2\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "1\tde\tde\tADP\t_\t_\t2\tcase\t_\t_\n"
    "2\tle\tle\tDET\t_\t_\t0\troot\t_\t_\n"
    "2.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "\n\n";

TEST(ReadConlluTest, ParsesSentencesAndSkipsSpecialNodes) {
  std::istringstream in(kTwoSentences);
  const auto trees = ReadConllu(in);
  ASSERT_EQ(trees.size(), 2u);
  const DepTree &t = trees[0];
  EXPECT_EQ(t.size(), 6u);
  EXPECT_EQ(t.forms[4], "present");
  EXPECT_EQ(t.head[0], 1);
  EXPECT_EQ(t.head[1], DepTree::kRoot);
  EXPECT_EQ(t.head[4], 1);
  EXPECT_EQ(t.relation[3], "det");
  EXPECT_EQ(t.pos[1], "VERB");
  EXPECT_FALSE(t.Problem());
  EXPECT_EQ(trees[1].forms, (std::vector<std::string>{"de", "le"}));
  EXPECT_FALSE(trees[1].Problem());
}

TEST(ReadConlluTest, FormsWithSpacesAndCrlf) {
  std::istringstream in(
      "1\tNew York\tNew York\tPROPN\t_\t_\t0\troot\t_\t_\r\n"
      "2\tcity\tcity\tNOUN\t_\t_\t1\tflat\t_\t_\r\n");
  const auto trees = ReadConllu(in);
  ASSERT_EQ(trees.size(), 1u);
  EXPECT_EQ(trees[0].forms[0], "New York");
  EXPECT_EQ(trees[0].relation[1], "flat");
}

TEST(ReadConlluTest, Errors) {
  std::istringstream short_line("1\tx\tx\tX\n");
  EXPECT_THROW(ReadConllu(short_line), FormatError);
  std::istringstream bad_head("1\tx\tx\tX\t_\t_\tzero\troot\t_\t_\n");
  EXPECT_THROW(ReadConllu(bad_head), FormatError);
  std::istringstream gap(
      "1\tx\tx\tX\t_\t_\t0\troot\t_\t_\n3\ty\ty\tX\t_\t_\t1\tdep\t_\t_\n");
  EXPECT_THROW(ReadConllu(gap), FormatError);
  EXPECT_THROW(ReadConllu(std::filesystem::path("/nonexistent/x.conllu")),
               IoError);
}

DepTree Make(std::vector<int> heads) {
  DepTree t;
  t.head = std::move(heads);
  t.relation.assign(t.head.size(), "dep");
  t.pos.assign(t.head.size(), "X");
  t.forms.assign(t.head.size(), "w");
  return t;
}

TEST(DepTreeTest, Problems) {
  EXPECT_FALSE(Make({-1, 0, 1, 1}).Problem());
  EXPECT_NE(Make({}).Problem()->find("empty"), std::string::npos);
  EXPECT_NE(Make({-1, 5}).Problem()->find("out of range"), std::string::npos);
  EXPECT_NE(Make({-1, -1}).Problem()->find("2 roots"), std::string::npos);
  EXPECT_NE(Make({1, 0}).Problem()->find("0 roots"), std::string::npos);
  EXPECT_NE(Make({-1, 2, 1}).Problem()->find("cycle"), std::string::npos);
  DepTree ragged = Make({-1, 0});
  ragged.relation.pop_back();
  EXPECT_TRUE(ragged.Problem());
}

TEST(DepTreeTest, DescendantsAndChildren) {
  DepTree t = Make({-1, 0, 1, 1, 3});
  t.relation[2] = "case";
  EXPECT_TRUE(t.IsProperDescendant(4, 0));
  EXPECT_TRUE(t.IsProperDescendant(4, 3));
  EXPECT_FALSE(t.IsProperDescendant(4, 2));
  EXPECT_FALSE(t.IsProperDescendant(3, 3));
  EXPECT_FALSE(t.IsProperDescendant(0, 4));
  EXPECT_TRUE(t.HasChildWithRelation(1, "case"));
  EXPECT_FALSE(t.HasChildWithRelation(3, "case"));
}

}  // namespace
}  // namespace srl
