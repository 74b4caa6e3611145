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

#include "srl/dependency.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "srl/error.h"

namespace srl {

std::optional<std::string> DepTree::Problem() const {
  const std::size_t n = head.size();
  if (relation.size() != n || pos.size() != n) {
    return "tree columns differ in length";
  }
  if (n == 0) return "empty tree";
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (head[i] == kRoot) {
      ++roots;
    } else if (head[i] < 0 || static_cast<std::size_t>(head[i]) >= n) {
      return "head of token " + std::to_string(i) + " out of range";
    }
  }
  if (roots != 1) return std::to_string(roots) + " roots";
  // Walking up from any token must reach the root within n steps.
  for (std::size_t i = 0; i < n; ++i) {
    int node = static_cast<int>(i);
    std::size_t steps = 0;
    while (node != kRoot) {
      node = head[node];
      if (++steps > n) return "cycle through token " + std::to_string(i);
    }
  }
  return std::nullopt;
}

bool DepTree::IsProperDescendant(std::size_t node,
                                 std::size_t ancestor) const {
  int current = head[node];
  std::size_t steps = 0;
  while (current != kRoot && steps++ <= head.size()) {
    if (static_cast<std::size_t>(current) == ancestor) return true;
    current = head[current];
  }
  return false;
}

bool DepTree::HasChildWithRelation(std::size_t node,
                                   const std::string &relation_name) const {
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (head[i] == static_cast<int>(node) && relation[i] == relation_name) {
      return true;
    }
  }
  return false;
}

std::vector<DepTree> ReadConllu(std::istream &in) {
  std::vector<DepTree> trees;
  DepTree current;
  auto flush = [&] {
    if (current.head.empty()) return;
    trees.push_back(std::move(current));
    current = DepTree{};
  };

  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;

    std::vector<std::string> cols;
    std::string cell;
    if (line.find('\t') != std::string::npos) {
      std::istringstream fields(line);
      while (std::getline(fields, cell, '\t')) cols.push_back(cell);
    } else {
      // Space separated input is accepted when no tabs are present.
      std::istringstream fields(line);
      while (fields >> cell) cols.push_back(cell);
    }
    auto fail = [&](const std::string &why) {
      throw FormatError("conllu line " + std::to_string(number) + ": " + why);
    };
    if (cols.size() < 8) fail("expected at least 8 columns");
    if (cols[0].find_first_of("-.") != std::string::npos) continue;

    int id = 0, head = 0;
    auto parse_int = [&](const std::string &s, int &out) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail("bad integer '" + s + "'");
      }
    };
    parse_int(cols[0], id);
    parse_int(cols[6], head);
    if (id != static_cast<int>(current.head.size()) + 1) {
      fail("token id " + cols[0] + " out of sequence");
    }
    current.forms.push_back(cols[1]);
    current.pos.push_back(cols[3]);
    current.head.push_back(head == 0 ? DepTree::kRoot : head - 1);
    current.relation.push_back(cols[7]);
  }
  flush();
  return trees;
}

std::vector<DepTree> ReadConllu(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return ReadConllu(in);
}

}  // namespace srl
