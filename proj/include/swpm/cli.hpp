// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace swpm {

/// Entry point behind the command-line tool; exposed so tests can drive the
/// subcommands in-process. Returns the process exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace swpm
