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

#include "motivelog/text_util.h"

#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>

namespace motivelog::text {
namespace {

bool IsAscii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return static_cast<unsigned char>(c) < 0x80;
  });
}

}  // namespace

std::string FoldCase(std::string_view utf8) {
  if (IsAscii(utf8)) {
    std::string out(utf8);
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  u.foldCase(U_FOLD_CASE_DEFAULT);
  std::string out;
  u.toUTF8String(out);
  return out;
}

bool IsTokenCodePoint(std::int32_t cp) {
  if (cp < 0) return false;
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9') || cp == '\'';
  }
  if (cp == 0x2019) return true;  // right single quotation mark
  const std::int32_t mask = U_GET_GC_MASK(cp);
  return (mask & (U_GC_L_MASK | U_GC_M_MASK | U_GC_ND_MASK)) != 0;
}

bool IsWhiteSpaceCodePoint(std::int32_t cp) {
  if (cp < 0) return false;
  if (cp < 0x80) {
    return cp == ' ' || (cp >= '\t' && cp <= '\r') || cp == 0x1c ||
           cp == 0x1d || cp == 0x1e || cp == 0x1f;
  }
  return u_isUWhiteSpace(cp) != 0;
}

std::int32_t NextCodePoint(std::string_view utf8, std::size_t& pos) {
  const auto* s = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto length = static_cast<std::int32_t>(utf8.size());
  auto i = static_cast<std::int32_t>(pos);
  UChar32 c;
  U8_NEXT(s, i, length, c);
  pos = static_cast<std::size_t>(i);
  return c;
}

std::size_t CodePointCount(std::string_view utf8) {
  std::size_t pos = 0;
  std::size_t count = 0;
  while (pos < utf8.size()) {
    NextCodePoint(utf8, pos);
    ++count;
  }
  return count;
}

bool IsValidUtf8(std::string_view bytes) {
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (NextCodePoint(bytes, pos) < 0) return false;
  }
  return true;
}

std::string ToValidUtf8(std::string_view bytes) {
  if (IsAscii(bytes) || IsValidUtf8(bytes)) return std::string(bytes);
  std::string out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t start = pos;
    const std::int32_t cp = NextCodePoint(bytes, pos);
    if (cp < 0) {
      out += "\xEF\xBF\xBD";
    } else {
      out.append(bytes.substr(start, pos - start));
    }
  }
  return out;
}

std::vector<std::size_t> CodePointBoundaries(std::string_view utf8) {
  std::vector<std::size_t> bounds;
  std::size_t pos = 0;
  while (pos < utf8.size()) {
    bounds.push_back(pos);
    NextCodePoint(utf8, pos);
  }
  bounds.push_back(utf8.size());
  return bounds;
}

}  // namespace motivelog::text
