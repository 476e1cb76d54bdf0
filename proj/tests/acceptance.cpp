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

// Acceptance runner: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; otherwise only the listed numbers. Exit status is nonzero if
// any selected criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "hamsim/regress.hpp"

using namespace hamsim;

namespace {

struct Criterion {
    int id;
    const char *title;
    const char *suite;
};

const std::vector<Criterion> kCriteria{
    {1, "norm chain", "norms"},
    {2, "block-encoding residuals", "blockenc"},
    {3, "amplitude multiplication error algebra", "amplify"},
    {4, "converter circuit exhaustive check", "gadget"},
    {5, "interaction-picture slice", "dyson"},
    {6, "recursive simulation", "recursion"},
    {7, "end-to-end sparse simulation", "sparse"},
    {8, "lower-bound dynamics", "lowerbound"},
    {9, "unitary dilation", "dilate"},
    {10, "cost-model consistency", "cost"},
    {11, "reproducibility", nullptr},
};

std::string summarize(const regress::SuiteResult &r) {
    std::string s;
    for (const auto &c : r.checks) {
        char buf[160];
        if (c.relation == regress::Relation::info) {
            std::snprintf(buf, sizeof buf, "%s=%.4g", c.name.c_str(), c.measured);
        } else {
            std::snprintf(buf, sizeof buf, "%s=%.4g%s%.4g%s", c.name.c_str(), c.measured,
                          regress::relation_symbol(c.relation), c.allowed, c.pass ? "" : "(FAIL)");
        }
        s += (s.empty() ? "" : " ") + std::string(buf);
    }
    return s;
}

bool run(const Criterion &c) {
    bool ok = true;
    std::string detail;
    if (c.suite) {
        auto r = regress::run_suite(c.suite);
        ok = r.passed();
        char t[32];
        std::snprintf(t, sizeof t, " [%.1fs]", r.seconds);
        detail = summarize(r) + t;
    } else {
        // Every suite twice with the same seed; CSV must match byte for byte.
        std::string differing;
        size_t bytes = 0;
        for (const auto &name : regress::suite_names()) {
            auto a = regress::run_suite(name, 1);
            auto b = regress::run_suite(name, 1);
            bytes += a.csv.size();
            if (a.csv != b.csv || a.csv.empty()) {
                differing += (differing.empty() ? "" : ",") + name;
            }
        }
        ok = differing.empty();
        detail = "suites=" + std::to_string(regress::suite_names().size()) + " csv_bytes=" + std::to_string(bytes) +
                 (ok ? " identical" : " differing=" + differing);
    }
    std::printf("CRITERION %02d %s %s: %s\n", c.id, ok ? "PASS" : "FAIL", c.title, detail.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; i++) {
        char *end = nullptr;
        long v = std::strtol(argv[i], &end, 10);
        if (*end != '\0' || v < 1 || v > static_cast<long>(kCriteria.size())) {
            std::fprintf(stderr, "usage: %s [criterion 1..%zu ...]\n", argv[0], kCriteria.size());
            return 2;
        }
        ids.push_back(static_cast<int>(v));
    }
    if (ids.empty()) {
        for (const auto &c : kCriteria) {
            ids.push_back(c.id);
        }
    }
    bool all = true;
    for (int id : ids) {
        try {
            all = run(kCriteria[id - 1]) && all;
        } catch (const std::exception &e) {
            std::printf("CRITERION %02d FAIL %s: error: %s\n", id, kCriteria[id - 1].title, e.what());
            all = false;
        }
    }
    return all ? 0 : 1;
}
