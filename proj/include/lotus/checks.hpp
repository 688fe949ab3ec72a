// Copyright 2026 The LOTUS-QAOA Authors
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
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lotus {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteOptions {
    /// Deliberately corrupts the input of one check so the suite can be shown
    /// to fail. Supported: "lipschitz".
    std::optional<std::string> inject_fault;
    /// Called after each check completes.
    std::function<void(const CheckResult &)> on_result;
};

std::vector<std::string> invariant_names();

/// Runs every module invariant at full scale. A check that throws is
/// reported as failed with the exception message.
std::vector<CheckResult> invariant_suite(const SuiteOptions &opts = {});

} // namespace lotus
