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

#ifndef MOTIVELOG_CLI_H_
#define MOTIVELOG_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace motivelog {

inline constexpr const char* kVersion = "0.1.0";

// Runs one subcommand. `args` excludes the program name. Returns the exit
// status: 0 success, 1 validation or usage error, 2 I/O error.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace motivelog

#endif  // MOTIVELOG_CLI_H_
