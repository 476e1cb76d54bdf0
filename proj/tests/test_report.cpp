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

#include "hamsim/report.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hamsim/numerics.hpp"

using namespace hamsim;
using namespace hamsim::report;

TEST_CASE("num round-trips") {
    for (double x : {0.1, 1.0 / 3, 1e-300, -2.5e17, 6.02214076e23}) {
        CHECK(std::stod(num(x)) == x);
    }
    CHECK(num(2) == "2");
}

TEST_CASE("document layout keeps insertion order and overwrites keys") {
    Document doc;
    doc.set("b", "x", "1");
    doc.set("a", "y", 0.5);
    doc.set("b", "z", "text");
    doc.set("b", "x", "2");
    CHECK(doc.str() == "[b]\nx = 2\nz = text\n\n[a]\ny = 0.5\n");
    std::ostringstream os;
    doc.write(os);
    CHECK(os.str() == doc.str());
    CHECK_THROWS_AS(doc.set("a", "k=v", "1"), PreconditionError);
    CHECK_THROWS_AS(doc.set("a", "k", "two\nlines"), PreconditionError);
}

TEST_CASE("loglog_slope recovers power laws") {
    std::vector<double> x{4, 8, 16, 32}, y;
    for (double v : x) {
        y.push_back(3 * std::pow(v, 0.75));
    }
    CHECK(loglog_slope(x, y) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK_THROWS_AS(loglog_slope({1}, {1}), PreconditionError);
    CHECK_THROWS_AS(loglog_slope({1, 2}, {1, -1}), PreconditionError);
    CHECK_THROWS_AS(loglog_slope({2, 2}, {1, 3}), PreconditionError);
}

TEST_CASE("svg plot") {
    Series s{"queries", {1, 10, 100}, {5, 50, 500}};
    auto svg = svg_line_plot("title <&>", "d", "q", {s}, true, true);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("title <&>") == std::string::npos);
    CHECK(svg.find("queries") != std::string::npos);
    Series bad{"bad", {0, 1}, {1, 2}};
    CHECK_THROWS_AS(svg_line_plot("t", "x", "y", {bad}, true, false), PreconditionError);
    Series ragged{"ragged", {1, 2}, {1}};
    CHECK_THROWS_AS(svg_line_plot("t", "x", "y", {ragged}), PreconditionError);
}
