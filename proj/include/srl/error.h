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

#ifndef SRL_ERROR_H_
#define SRL_ERROR_H_

#include <stdexcept>
#include <string>

namespace srl {

// Error categories. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kFormat = 4,
  kStructural = 5,
  kBounds = 6,
  kAlignment = 7,
  kEncoding = 8,
  kProtocol = 9,
  kDiagnostic = 10,
};

const char *ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Malformed text input: bad tag strings, bad JSON fields, bad CoNLL-U rows.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string &message)
      : Error(ErrorCode::kFormat, message) {}
};

// Overlapping spans, duplicate predicates and similar shape violations.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string &message)
      : Error(ErrorCode::kStructural, message) {}
};

class BoundsError : public Error {
 public:
  explicit BoundsError(const std::string &message)
      : Error(ErrorCode::kBounds, message) {}
};

class AlignmentError : public Error {
 public:
  explicit AlignmentError(const std::string &message)
      : Error(ErrorCode::kAlignment, message) {}
};

class EncodingError : public Error {
 public:
  explicit EncodingError(const std::string &message)
      : Error(ErrorCode::kEncoding, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &message)
      : Error(ErrorCode::kIo, message) {}
};

class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string &message)
      : Error(ErrorCode::kProtocol, message) {}
};

// Dependency tree cannot support a diagnosis (cycle, several roots).
class DiagnosticError : public Error {
 public:
  explicit DiagnosticError(const std::string &message)
      : Error(ErrorCode::kDiagnostic, message) {}
};

}  // namespace srl

#endif  // SRL_ERROR_H_
