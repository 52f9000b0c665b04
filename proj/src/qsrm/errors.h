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

#ifndef QSRM_ERRORS_H
#define QSRM_ERRORS_H

#include <stdexcept>
#include <string>

namespace qsrm {

/// Caller passed arguments that do not fit the operation (wrong dimension, bad factor set, ...).
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string &msg) : std::invalid_argument(msg) {
    }
};

/// A value violated a domain constraint (normalization, overlap bound, PSD Gram, ...).
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string &msg) : std::invalid_argument(msg) {
    }
};

/// A request would exceed a dimension cap or a blank-state reservoir.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string &msg) : std::runtime_error(msg) {
    }
};

}  // namespace qsrm

#endif
