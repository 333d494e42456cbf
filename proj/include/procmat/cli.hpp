// Copyright 2026 The procmat Authors
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

#ifndef PROCMAT_CLI_HPP_
#define PROCMAT_CLI_HPP_

#include <string>
#include <vector>

namespace procmat {

// Command dispatcher shared by the binary and in-process tests. `args`
// excludes the program name. Exit codes are a stable contract:
//   0  every check passed
//   1  a check ran and failed
//   2  usage, parse, or guard errors
int run_cli(const std::vector<std::string>& args);

}  // namespace procmat

#endif  // PROCMAT_CLI_HPP_
