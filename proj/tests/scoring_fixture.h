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

// Random gold frames and label corruptions for scorer checks.

#ifndef SRL_TESTS_SCORING_FIXTURE_H_
#define SRL_TESTS_SCORING_FIXTURE_H_

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace scoring {

using Strings = std::vector<std::string>;

inline const Strings kRoles = {"ARG0",     "ARG1",     "ARG2",     "ARGM-TMP",
                        "ARGM-ADV", "ARGM-LOC", "C-ARG1",   "R-ARG0",
                        "R-ARG1",   "ARGM-MNR", "ARGM-NEG", "ARG3"};

// Gold rows: each has one B-V and a few non-overlapping argument spans.
inline std::vector<Strings> GoldFixture(std::mt19937 &rng, std::size_t sentences) {
  std::vector<Strings> rows;
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t n = 5 + rng() % 21;
    const std::size_t k = 1 + rng() % 3;
    for (std::size_t f = 0; f < k; ++f) {
      Strings row(n, "O");
      const std::size_t v = rng() % n;
      row[v] = "B-V";
      std::size_t i = 0;
      while (i < n) {
        if (rng() % 3 != 0 || row[i] != "O") {
          ++i;
          continue;
        }
        const std::string role = kRoles[rng() % kRoles.size()];
        std::size_t len = 1 + rng() % 5;
        row[i] = "B-" + role;
        std::size_t j = i + 1;
        for (; j < n && j < i + len && row[j] == "O"; ++j) row[j] = "I-" + role;
        i = j + 1;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

inline void Corrupt(std::vector<Strings> &rows, std::mt19937 &rng) {
  Strings &row = rows[rng() % rows.size()];
  const std::size_t n = row.size();
  const std::size_t i = rng() % n;
  const std::string role = kRoles[rng() % kRoles.size()];
  if (row[i] == "B-V") return;
  switch (rng() % 6) {
    case 0:  // relabel a token
      row[i] = (rng() % 2 ? "B-" : "I-") + role;
      break;
    case 1:  // erase
      row[i] = "O";
      break;
    case 2:  // extend the previous span
      if (i > 0 && row[i - 1] != "O" && row[i - 1] != "B-V") {
        row[i] = "I-" + row[i - 1].substr(2);
      }
      break;
    case 3:  // split a span
      if (row[i][0] == 'I') row[i] = "B-" + row[i].substr(2);
      break;
    case 4:  // relabel a whole span
      if (row[i][0] == 'B' && row[i] != "B-V") {
        row[i] = "B-" + role;
        for (std::size_t j = i + 1; j < n && row[j][0] == 'I'; ++j) {
          row[j] = "I-" + role;
        }
      }
      break;
    default:  // new single-token span
      row[i] = "B-" + role;
      break;
  }
}

}  // namespace scoring

#endif  // SRL_TESTS_SCORING_FIXTURE_H_
