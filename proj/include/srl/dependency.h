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

#ifndef SRL_DEPENDENCY_H_
#define SRL_DEPENDENCY_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace srl {

// Dependency tree over 0-based token positions.
struct DepTree {
  static constexpr int kRoot = -1;

  std::vector<std::string> forms;
  std::vector<int> head;  // kRoot for the root token
  std::vector<std::string> relation;
  std::vector<std::string> pos;

  std::size_t size() const { return head.size(); }

  // Describes why the tree is malformed (length mismatch, head out of
  // range, zero or several roots, a cycle); nullopt when well formed.
  std::optional<std::string> Problem() const;

  // True if `ancestor` lies strictly above `node`. Requires a well-formed
  // tree.
  bool IsProperDescendant(std::size_t node, std::size_t ancestor) const;

  bool HasChildWithRelation(std::size_t node,
                            const std::string &relation_name) const;
};

// Reads CoNLL-U: ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS MISC.
// Multiword ranges ("1-2") and empty nodes ("1.1") are skipped; '#' lines
// are comments. Throws FormatError with the line number on bad rows.
std::vector<DepTree> ReadConllu(std::istream &in);
std::vector<DepTree> ReadConllu(const std::filesystem::path &path);

}  // namespace srl

#endif  // SRL_DEPENDENCY_H_
