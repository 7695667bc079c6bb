// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace choquet::cli {

// Dispatches one tool invocation.  Returns the process exit code:
// 0 success, 1 usage error, 2 validation failure.
int run(int argc, const char* const* argv);

}  // namespace choquet::cli
