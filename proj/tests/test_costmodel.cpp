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

#include "hamsim/costmodel.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hamsim/numerics.hpp"

using namespace hamsim;
using namespace hamsim::costmodel;

TEST_CASE("single-term formula") {
    CHECK(cost_single(1, 1, 1, 1e-3).queries == doctest::Approx(2 * std::log2(1e3)).epsilon(1e-14));
    // t alpha = 0 leaves the setup term (log guarded at 2).
    CHECK(cost_single(0, 3, 5, 1e-3).queries == 5);
    double one = cost_single(2, 1.5, 1, 1e-6).queries;
    CHECK(cost_single(2, 1.5, 7, 1e-6).queries == doctest::Approx(7 * one).epsilon(1e-14));
    CHECK_THROWS_AS(cost_single(1, 1, 1, 0), PreconditionError);
}

TEST_CASE("interaction formula") {
    CHECK(cost_interaction(1, 1, 0, 3, 11, 1e-3).queries == 11);
    // (1 + 1)(1 + 1) log2(1e3)^2.
    CHECK(cost_interaction(1, 1, 1, 1, 1, 1e-3).queries == doctest::Approx(4 * std::pow(std::log2(1e3), 2)));
    double a = cost_interaction(1, 1, 0.5, 2, 3, 1e-4).queries;
    double b = cost_interaction(1, 1, 0.5, 2, 3, 1e-8).queries;
    CHECK(b / a == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("recursion forms") {
    auto single = cost_single(0.7, 2.5, 3, 1e-5).queries;
    for (auto f : {RecursionForm::exact, RecursionForm::expanded}) {
        CHECK(cost_recursion({2.5}, {3}, 0.7, 1e-5, f).queries == single);
    }
    // Two terms: (t a2 + 1)(C2 + 2 (a1 / a2) C1) L^3.
    double a1 = 3, a2 = 0.5, c1 = 2, c2 = 7, t = 1.3, eps = 1e-4;
    double l = std::log2(t * a1 / eps);
    auto two = cost_recursion({a2, a1}, {c2, c1}, t, eps, RecursionForm::expanded);
    CHECK(two.queries == doctest::Approx((t * a2 + 1) * (c2 + 2 * (a1 / a2) * c1) * l * l * l).epsilon(1e-13));
    auto exact2 = cost_recursion({a1, a2}, {c1, c2}, t, eps, RecursionForm::exact);
    CHECK(exact2.queries ==
          doctest::Approx((t * a2 + 1) * (c2 + (a1 / a2 + 1) * c1 * l) * l * l).epsilon(1e-13));
    auto closed2 = cost_recursion({a1, a2}, {c1, c2}, t, eps, RecursionForm::closed);
    CHECK(closed2.queries == doctest::Approx(t * (a1 * c1 + a2 * c2) * l * l * l).epsilon(1e-13));
}

TEST_CASE("exact <= expanded <= scaled closed on random stacks") {
    numerics::SplitMix64 rng(3);
    for (int trial = 0; trial < 200; trial++) {
        size_t m = 1 + rng.below(5);
        std::vector<double> a(m), c(m);
        for (size_t j = 0; j < m; j++) {
            a[j] = 0.05 + 4 * rng.uniform();
            c[j] = 1 + 9 * rng.uniform();
        }
        double t = 0.1 + 3 * rng.uniform();
        double eps = std::pow(10.0, -1 - 9 * rng.uniform());
        double ex = cost_recursion(a, c, t, eps, RecursionForm::exact).queries;
        double xp = cost_recursion(a, c, t, eps, RecursionForm::expanded).queries;
        double cl = cost_recursion(a, c, t, eps, RecursionForm::closed).queries;
        double amin = *std::min_element(a.begin(), a.end());
        CHECK(ex <= xp * (1 + 1e-12));
        CHECK(xp <= std::ldexp(1.0, static_cast<int>(m) - 1) * (1 + 1 / (t * amin)) * cl * (1 + 1e-12));
    }
}

TEST_CASE("monotone in t and 1/eps") {
    double prev = 0;
    for (double t : {0.1, 0.5, 1.0, 2.0, 8.0}) {
        double q = cost_recursion({2, 1, 0.5}, {1, 1, 1}, t, 1e-6, RecursionForm::exact).queries;
        CHECK(q > prev);
        prev = q;
    }
    prev = 0;
    for (double eps : {1e-2, 1e-4, 1e-8}) {
        double q = cost_sparse(1, 16, 1, eps, 2).queries;
        CHECK(q > prev);
        prev = q;
    }
}

TEST_CASE("sparse formula") {
    // d = 1: sqrt(d) and d^{1/4m} are both 1.
    double l = std::log2(1 / 1e-3);
    CHECK(cost_sparse(1, 1, 1, 1e-3, 1).queries == doctest::Approx(l * l).epsilon(1e-14));
    // log cost is convex in m.
    for (double d : {4.0, 64.0, 4096.0, 1e12}) {
        std::vector<double> lc;
        for (int m = 1; m <= 12; m++) {
            lc.push_back(std::log(cost_sparse(1, d, 1, 1e-4, m).queries));
        }
        for (size_t i = 1; i + 1 < lc.size(); i++) {
            CHECK(lc[i - 1] + lc[i + 1] - 2 * lc[i] >= -1e-12);
        }
        int best = optimal_m(1, d, 1, 1e-4);
        CHECK(lc[best - 1] <= *std::min_element(lc.begin(), lc.end()));
    }
    CHECK(cost_sparse(1, 16, 1, 1e-4, 1).queries >= lower_bound(1, 16, 1));
}

TEST_CASE("sparse unitary and composed costs") {
    auto c1 = cost_corollaries(64, 1e-6, 1);
    auto c5 = cost_corollaries(64, 1e-6, 5);
    int m = optimal_m(M_PI / 2, 64, 1, 1e-6 / 5);
    CHECK(c1.queries == cost_sparse(M_PI / 2, 64, 1, 1e-6, optimal_m(M_PI / 2, 64, 1, 1e-6)).queries);
    CHECK(c5.queries == doctest::Approx(5 * cost_sparse(M_PI / 2, 64, 1, 1e-6 / 5, m).queries).epsilon(1e-14));
    CHECK(c5.queries > 5 * c1.queries);
}

TEST_CASE("gates and csv") {
    auto r = cost_single(1, 1, 1, 1e-3);
    attach_gates(r, 16, 4);
    CHECK(r.gates == doctest::Approx(r.queries * (4 + 32)));
    std::ostringstream out;
    write_csv_header(out);
    write_csv_row(out, cost_sparse(1, 16, 1, 1e-3, 2));
    write_csv_row(out, cost_single(1, 1, 1, 1e-3));
    std::string s = out.str();
    CHECK(s.rfind("formula,t,d,eps,m,value\nsparse,1,16,0.001,2,", 0) == 0);
    CHECK(s.find("\nsingle,1,,0.001,,") != std::string::npos);

    auto rows = sweep_d(1, 1, 1e-4, 4096);
    REQUIRE(rows.size() == 11);
    for (size_t i = 1; i < rows.size(); i++) {
        CHECK(rows[i].queries > rows[i - 1].queries);
    }
}
