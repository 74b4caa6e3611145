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

// PropBank role labels and BIO tags with their canonical string forms.

#ifndef SRL_ROLE_H_
#define SRL_ROLE_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace srl {

enum class RoleKind {
  kPredicate,        // V
  kCore,             // ARG0..ARG5
  kSecondaryAgent,   // ARGA
  kModifier,         // ARGM-<func>
};

// R- (reference) and C- (continuation) wrappers around a base role.
enum class RolePrefix { kNone, kReference, kContinuation };

// Modifier functions. kOther is the catch-all for functions outside the
// documented inventory (e.g. "ARGM-XYZ"); the original text is preserved.
enum class ModifierFunction {
  kTmp, kLoc, kMnr, kAdv, kPrd, kDis, kNeg, kMod, kDir, kExt,
  kPrp, kPnc, kCau, kAdj, kCom, kDsp, kGol, kLvb, kRec, kPrr,
  kOther,
};

// A semantic role such as "ARG0", "ARGM-TMP", "R-ARG1" or "V".
//
// Values are immutable and compare by canonical text, so "ARG0" and
// "C-ARG0" are different roles.
class RoleLabel {
 public:
  // Parses a canonical role string. Throws FormatError on anything outside
  // the grammar V | ARG[0-5] | ARGA | ARGM-<FUNC> | (R|C)-<role>.
  static RoleLabel Parse(std::string_view text);
  static std::optional<RoleLabel> TryParse(std::string_view text);

  const std::string &str() const { return text_; }

  RolePrefix prefix() const { return prefix_; }
  RoleKind kind() const { return kind_; }
  // Core argument number; only meaningful for kCore.
  int core_number() const { return core_number_; }
  // Only meaningful for kModifier.
  ModifierFunction function() const { return function_; }
  // "TMP" for "ARGM-TMP" and "C-ARGM-TMP"; empty for other kinds.
  std::string_view function_text() const;

  // The role with any R-/C- prefix removed.
  RoleLabel Base() const;

  bool is_predicate() const {
    return kind_ == RoleKind::kPredicate && prefix_ == RolePrefix::kNone;
  }

  friend bool operator==(const RoleLabel &a, const RoleLabel &b) {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const RoleLabel &a,
                                          const RoleLabel &b) {
    return a.text_ <=> b.text_;
  }

 private:
  RoleLabel() = default;

  std::string text_;
  RolePrefix prefix_ = RolePrefix::kNone;
  RoleKind kind_ = RoleKind::kPredicate;
  int core_number_ = -1;
  ModifierFunction function_ = ModifierFunction::kOther;
};

enum class BioPrefix { kBegin, kInside, kOutside };

// One per-word tag: "B-<role>", "I-<role>" or "O".
class BioTag {
 public:
  BioTag() = default;  // O

  static BioTag Outside() { return BioTag(); }
  static BioTag Begin(RoleLabel role) {
    return BioTag(BioPrefix::kBegin, std::move(role));
  }
  static BioTag Inside(RoleLabel role) {
    return BioTag(BioPrefix::kInside, std::move(role));
  }

  static BioTag Parse(std::string_view text);

  BioPrefix prefix() const { return prefix_; }
  bool is_outside() const { return prefix_ == BioPrefix::kOutside; }
  bool is_begin() const { return prefix_ == BioPrefix::kBegin; }
  bool is_inside() const { return prefix_ == BioPrefix::kInside; }

  // Requires !is_outside().
  const RoleLabel &role() const { return *role_; }

  std::string str() const;

  friend bool operator==(const BioTag &a, const BioTag &b) = default;

 private:
  BioTag(BioPrefix prefix, RoleLabel role)
      : prefix_(prefix), role_(std::move(role)) {}

  BioPrefix prefix_ = BioPrefix::kOutside;
  std::optional<RoleLabel> role_;
};

}  // namespace srl

#endif  // SRL_ROLE_H_
