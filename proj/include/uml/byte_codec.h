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

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uml/vocab.h"

namespace uml {

// Node special_count + b carries byte value b.

/// UTF-8 bytes of `text` shifted into the byte node range. Throws
/// kInvalidUtf8 if `text` itself is malformed.
std::vector<int> encode_bytes(std::string_view text, int special_count = kSpecialCount);

/// Strict inverse of encode_bytes. A node below special_count throws
/// kInvalidArgument, one past the byte range kOutOfGroupRange; a malformed
/// byte sequence throws kInvalidUtf8 naming the offending byte offset. No replacement characters are produced.
std::string decode_bytes(std::span<const int> nodes, int special_count = kSpecialCount);

}  // namespace uml
