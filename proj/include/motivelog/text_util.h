/* Copyright 2026 The motivelog Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef MOTIVELOG_TEXT_UTIL_H_
#define MOTIVELOG_TEXT_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace motivelog::text {

// Full Unicode case folding of UTF-8 text. Ill-formed sequences become
// U+FFFD.
std::string FoldCase(std::string_view utf8);

// Letters, combining marks, decimal digits and apostrophes.
bool IsTokenCodePoint(std::int32_t cp);
bool IsWhiteSpaceCodePoint(std::int32_t cp);

// Decodes one code point starting at `pos` and advances it; ill-formed input
// yields a negative value and advances by at least one byte.
std::int32_t NextCodePoint(std::string_view utf8, std::size_t& pos);

std::size_t CodePointCount(std::string_view utf8);

// Replaces ill-formed sequences with U+FFFD.
std::string ToValidUtf8(std::string_view bytes);
bool IsValidUtf8(std::string_view bytes);

// Byte offsets at which each code point of `utf8` starts, plus size().
std::vector<std::size_t> CodePointBoundaries(std::string_view utf8);

}  // namespace motivelog::text

#endif  // MOTIVELOG_TEXT_UTIL_H_
