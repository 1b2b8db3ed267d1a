// Copyright 2026 The ldpjoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPJOINT_CLI_HPP_
#define LDPJOINT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace ldpjoint {

// Command line entry point, callable in-process for tests. Results go to
// `out` as JSON; failures print {"error": {"code", "message"}} to `err`.
// Returns 0 on success, 2 on a usage error, 1 on a runtime failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ldpjoint

#endif  // LDPJOINT_CLI_HPP_
