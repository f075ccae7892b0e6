// Copyright 2026 The UML Authors
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

#include "uml/error.h"

namespace uml {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kMalformedRecord: return "malformed_record";
    case ErrorCode::kUnknownLanguage: return "unknown_language";
    case ErrorCode::kVocabTruncation: return "vocab_truncation";
    case ErrorCode::kInvalidUtf8: return "invalid_utf8";
    case ErrorCode::kOutOfGroupRange: return "out_of_group_range";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kVersionMismatch: return "version_mismatch";
    case ErrorCode::kChecksumMismatch: return "checksum_mismatch";
    case ErrorCode::kNumerical: return "numerical";
  }
  return "unknown";
}

}  // namespace uml
