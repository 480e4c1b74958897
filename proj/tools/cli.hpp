// Copyright 2026 The psmet Authors
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

#ifndef PSMET_TOOLS_CLI_HPP_
#define PSMET_TOOLS_CLI_HPP_

#include <ostream>

namespace psmet::cli {

// Full command-line front end, callable in-process (tests drive it with
// string streams; main() passes the real std streams).  Returns the process
// exit code: 0 success, 1 numeric/runtime failure or failed check, 2 flag
// errors.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace psmet::cli

#endif  // PSMET_TOOLS_CLI_HPP_
