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

#include "srl/role.h"

#include <array>
#include <cctype>
#include <utility>

#include "srl/error.h"

namespace srl {

namespace {

constexpr std::array<std::pair<std::string_view, ModifierFunction>, 20>
    kModifierFunctions = {{
        {"TMP", ModifierFunction::kTmp}, {"LOC", ModifierFunction::kLoc},
        {"MNR", ModifierFunction::kMnr}, {"ADV", ModifierFunction::kAdv},
        {"PRD", ModifierFunction::kPrd}, {"DIS", ModifierFunction::kDis},
        {"NEG", ModifierFunction::kNeg}, {"MOD", ModifierFunction::kMod},
        {"DIR", ModifierFunction::kDir}, {"EXT", ModifierFunction::kExt},
        {"PRP", ModifierFunction::kPrp}, {"PNC", ModifierFunction::kPnc},
        {"CAU", ModifierFunction::kCau}, {"ADJ", ModifierFunction::kAdj},
        {"COM", ModifierFunction::kCom}, {"DSP", ModifierFunction::kDsp},
        {"GOL", ModifierFunction::kGol}, {"LVB", ModifierFunction::kLvb},
        {"REC", ModifierFunction::kRec}, {"PRR", ModifierFunction::kPrr},
    }};

ModifierFunction LookupFunction(std::string_view func) {
  for (const auto &[name, value] : kModifierFunctions) {
    if (name == func) return value;
  }
  return ModifierFunction::kOther;
}

bool IsFunctionText(std::string_view func) {
  if (func.empty()) return false;
  for (char c : func) {
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<RoleLabel> RoleLabel::TryParse(std::string_view text) {
  RoleLabel role;
  role.text_ = std::string(text);

  std::string_view rest = text;
  if (rest.starts_with("R-")) {
    role.prefix_ = RolePrefix::kReference;
    rest.remove_prefix(2);
  } else if (rest.starts_with("C-")) {
    role.prefix_ = RolePrefix::kContinuation;
    rest.remove_prefix(2);
  }

  if (rest == "V") {
    role.kind_ = RoleKind::kPredicate;
  } else if (rest == "ARGA") {
    role.kind_ = RoleKind::kSecondaryAgent;
  } else if (rest.size() == 4 && rest.starts_with("ARG") && rest[3] >= '0' &&
             rest[3] <= '5') {
    role.kind_ = RoleKind::kCore;
    role.core_number_ = rest[3] - '0';
  } else if (rest.starts_with("ARGM-") && IsFunctionText(rest.substr(5))) {
    role.kind_ = RoleKind::kModifier;
    role.function_ = LookupFunction(rest.substr(5));
  } else {
    return std::nullopt;
  }
  return role;
}

RoleLabel RoleLabel::Parse(std::string_view text) {
  auto role = TryParse(text);
  if (!role) {
    throw FormatError("invalid role label '" + std::string(text) + "'");
  }
  return *std::move(role);
}

std::string_view RoleLabel::function_text() const {
  if (kind_ != RoleKind::kModifier) return {};
  std::string_view view = text_;
  return view.substr(view.find("ARGM-") + 5);
}

RoleLabel RoleLabel::Base() const {
  if (prefix_ == RolePrefix::kNone) return *this;
  RoleLabel base = *this;
  base.text_ = text_.substr(2);
  base.prefix_ = RolePrefix::kNone;
  return base;
}

BioTag BioTag::Parse(std::string_view text) {
  if (text == "O") return BioTag();
  if (text.size() > 2 && text[1] == '-') {
    if (text[0] == 'B') return Begin(RoleLabel::Parse(text.substr(2)));
    if (text[0] == 'I') return Inside(RoleLabel::Parse(text.substr(2)));
  }
  throw FormatError("invalid BIO tag '" + std::string(text) + "'");
}

std::string BioTag::str() const {
  switch (prefix_) {
    case BioPrefix::kBegin:
      return "B-" + role_->str();
    case BioPrefix::kInside:
      return "I-" + role_->str();
    case BioPrefix::kOutside:
      break;
  }
  return "O";
}

}  // namespace srl
