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

#ifndef MOTIVELOG_HASHING_H_
#define MOTIVELOG_HASHING_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace motivelog {

class Fnv1a64 {
 public:
  void Update(std::string_view bytes);
  // Length-prefixed so that ("ab", "c") and ("a", "bc") differ.
  void UpdateField(std::string_view bytes);
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string ToHex64(std::uint64_t value);

// Lower-case hex SHA-256.
std::string Sha256Hex(std::string_view bytes);

// Streams a file through SHA-256; throws IoError if it cannot be read.
std::string Sha256FileHex(const std::string& path);

}  // namespace motivelog

#endif  // MOTIVELOG_HASHING_H_
