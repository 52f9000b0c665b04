// Copyright 2026 The qsrm Authors
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

#ifndef QSRM_CLI_H
#define QSRM_CLI_H

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qsrm/report.h"

namespace qsrm {

enum ExitCode : int {
    kExitPass = 0,
    kExitAssertionFailed = 1,
    kExitUsage = 2,
    kExitResource = 3,
    kExitIo = 4,
};

struct HelpRequested : std::runtime_error {
    explicit HelpRequested(const std::string &text) : std::runtime_error(text) {
    }
};

/// Parses and validates command-line flags. Throws UsageError (unknown flag,
/// bad value, violated constraint) or HelpRequested.
RunConfig parse_args(int argc, const char *const *argv);

/// Whole command: parse, verify, emit. Returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &err);

}  // namespace qsrm

#endif
