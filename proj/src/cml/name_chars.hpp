// Copyright 2026 The cmlkg Authors
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

#include <string_view>

namespace cmlkg::cml {

inline constexpr std::string_view kEscapable = "\\()<>&|!@=, ";

inline bool is_escapable(char c) {
  return kEscapable.find(c) != std::string_view::npos;
}

// Bytes that may appear unescaped in a name. UTF-8 continuation and lead
// bytes are allowed so relation names like "R1⁻¹" need no escaping.
inline bool is_plain_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return true;
  if (u <= 0x20 || u == 0x7f) return false;
  return !is_escapable(c);
}

}  // namespace cmlkg::cml
