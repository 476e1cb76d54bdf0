// Copyright 2026 The hamsim Authors
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

#ifndef HAMSIM_REGRESS_HPP
#define HAMSIM_REGRESS_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "hamsim/report.hpp"

namespace hamsim::regress {

enum class Relation { at_most, at_least, info };

/// One asserted number with its tolerance. Info rows are reported, never failed.
struct Check {
    std::string name;
    double measured = 0;
    Relation relation = Relation::at_most;
    double allowed = 0;
    bool pass = true;
};

Check at_most(const std::string &name, double measured, double allowed);
Check at_least(const std::string &name, double measured, double allowed);
Check info(const std::string &name, double measured);

const char *relation_symbol(Relation r);

struct SuiteResult {
    std::string suite;
    uint64_t seed = 1;
    std::vector<Check> checks;
    /// Deterministic table for the suite; excludes timings.
    std::string csv;
    double seconds = 0;

    bool passed() const;
    /// Names of failed checks joined by ", ".
    std::string failures() const;
};

/// Registered suites in run order.
const std::vector<std::string> &suite_names();

/// Throws PreconditionError for an empty or unknown name.
SuiteResult run_suite(const std::string &name, uint64_t seed = 1);

/// [suite] and [check.<name>] sections with measured, relation, allowed, pass.
report::Document to_document(const SuiteResult &r);

}  // namespace hamsim::regress

#endif
