// Copyright 2026 The loccsim authors
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

/**
 * @file
 * The acceptance suite: ten numbered criteria covering every protocol
 * family, resource ledger, event-log audit, and branch statistic. Shared by
 * the CLI's --selftest flag and the acceptance test binary.
 */

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace loccsim {

/// Case-count knobs for the randomized criteria. The defaults reproduce the
/// full suite; smaller grids run proportionally fewer cases.
struct GridSpec {
    std::size_t nmax = 3;   ///< largest control-register width exercised
    std::size_t mmax = 2;   ///< largest target-register width exercised
    std::size_t cases = 25; ///< seeded cases per grid cell

    /// Parses "nmax=3,mmax=2,cases=25"; omitted keys keep their defaults.
    /// Throws std::invalid_argument naming an unknown key or a bad value.
    static GridSpec parse(const std::string& text);
};

struct SelftestOptions {
    std::uint64_t seed = 1;
    GridSpec grid;
    /// Debug knob: runs the multiqubit criterion with the final corrections
    /// deliberately swapped, so the suite must fail on that criterion.
    bool corrupt_step5_order = false;
};

struct CriterionResult {
    int number = 0;
    std::string name;
    std::size_t cases = 0;
    std::size_t checks = 0;
    double max_error = 0.0;
    double seconds = 0.0;
    bool passed = false;
    /// First failure, naming the case, branch, and step involved.
    std::string detail;
};

struct SelftestReport {
    std::vector<CriterionResult> criteria;
    bool all_passed = false;
    double max_error = 0.0;

    /// First failing criterion, or nullptr when all passed.
    const CriterionResult* first_failure() const;
};

/// Runs all criteria in order, printing one pass/fail line per criterion.
SelftestReport run_selftest(const SelftestOptions& options, std::ostream& out);

}  // namespace loccsim
