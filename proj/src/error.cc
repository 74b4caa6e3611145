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

#include "srl/error.h"

namespace srl {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInternal: return "internal";
    case ErrorCode::kUsage: return "usage";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kStructural: return "structural";
    case ErrorCode::kBounds: return "bounds";
    case ErrorCode::kAlignment: return "alignment";
    case ErrorCode::kEncoding: return "encoding";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kDiagnostic: return "diagnostic";
  }
  return "unknown";
}

}  // namespace srl
