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

#include "hamsim/recursion.hpp"

#include <cmath>

#include "doctest.h"

using namespace hamsim;
using namespace hamsim::recursion;
using numerics::ComplexMatrix;
namespace names = oracles::names;

static ComplexMatrix normalized_hermitian(size_t n, numerics::SplitMix64 &rng, double norm) {
    auto h = numerics::random_hermitian(n, rng);
    return h * cplx(norm / numerics::spectral_norm(h));
}

static BlockEncoding enc_of(const ComplexMatrix &h, double alpha, const std::string &label) {
    return blockenc::encode_hermitian(h, alpha, label);
}

static uint64_t count(const CostVector &c, const std::string &k) {
    auto it = c.find(k);
    return it == c.end() ? 0 : it->second;
}

static const ComplexMatrix X{{0, 1}, {1, 0}};

TEST_CASE("Jacobi-Anger order") {
    CHECK(jacobi_anger_order(1.0, 1e-6) == 7);
    CHECK(jacobi_anger_order(0.0, 1e-6) == 0);
    int prev = 0;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
        int q = jacobi_anger_order(5.0, eps);
        CHECK(q >= prev);
        prev = q;
    }
    CHECK_THROWS_AS(jacobi_anger_order(1.0, 1.0), PreconditionError);
}

TEST_CASE("single term") {
    auto ex = enc_of(X, 1, "X");
    auto r0 = simulate_single(ex, 0, 1e-6);
    CHECK(r0.op == ComplexMatrix::identity(2));
    CHECK(count(r0.ledger, names::encoding("X")) == 0);

    auto r = simulate_single(ex, M_PI / 2, 1e-10);
    CHECK(numerics::max_diff(r.op, X * cplx(0, -1)) <= 1e-10);
    CHECK(r.measured_error <= 1e-10);

    numerics::SplitMix64 rng(2);
    for (int trial = 0; trial < 10; trial++) {
        auto h = normalized_hermitian(4, rng, 0.5 + trial * 0.3);
        double alpha = 0.5 + trial * 0.4;
        auto e = enc_of(h, alpha, "H");
        for (double eps : {1e-3, 1e-8}) {
            auto s = simulate_single(e, 0.7, eps);
            CHECK(s.measured_error <= eps);
            int q = jacobi_anger_order(0.7 * alpha, eps);
            CHECK(count(s.ledger, names::encoding("H")) == static_cast<uint64_t>(q));
            CHECK(s.levels[0].max_degree == q);
        }
    }
    CHECK_THROWS_AS(simulate_single(ex, 1, 1.0), PreconditionError);
}

TEST_CASE("pair reductions") {
    numerics::SplitMix64 rng(4);
    auto a = normalized_hermitian(4, rng, 1);
    auto ea = enc_of(a, 1, "A");
    Provider pa = [&](double s, double e) { return single_evolution(ea, s, e); };

    auto zero = enc_of(ComplexMatrix(4, 4), 0.5, "B");
    auto r = simulate_pair(pa, a, 1, zero, 0.8, 1e-6);
    CHECK(r.op == pa(0.8, 1e-6).op);

    auto b = normalized_hermitian(4, rng, 0.9);
    auto eb = enc_of(b, 0.9, "B");
    auto za = enc_of(ComplexMatrix(4, 4), 1, "Z");
    Provider pz = [&](double s, double e) { return single_evolution(za, s, e); };
    auto rz = simulate_pair(pz, ComplexMatrix(4, 4), 1, eb, 1.0, 1e-6);
    CHECK(numerics::spectral_norm(rz.op - numerics::expm_i(b, 1.0)) <= 1e-6);

    CHECK_THROWS_AS(simulate_pair(pa, a, 0.5, eb, 1.0, 1e-6), PreconditionError);
}

TEST_CASE("pair on random instances") {
    numerics::SplitMix64 rng(6);
    for (int trial = 0; trial < 4; trial++) {
        auto a = normalized_hermitian(4, rng, 1);
        auto b = normalized_hermitian(4, rng, 0.6);
        auto ea = enc_of(a, 1, "A");
        auto eb = enc_of(b, 0.6, "B");
        Provider pa = [&](double s, double e) { return single_evolution(ea, s, e); };
        for (double eps : {1e-3, 1e-6}) {
            auto r = simulate_pair(pa, a, 1, eb, 1.0, eps);
            CHECK(r.measured_error <= eps);
        }
    }
}

TEST_CASE("stack reductions") {
    numerics::SplitMix64 rng(8);
    auto h = normalized_hermitian(4, rng, 1);
    auto e = enc_of(h, 1.2, "H");
    auto s1 = simulate_single(e, 0.9, 1e-7);
    auto st = simulate_stack({e}, 0.9, 1e-7);
    CHECK(st.op == s1.op);
    CHECK(st.ledger == s1.ledger);

    // Commuting pair: both diagonal in the same basis.
    auto u = numerics::random_unitary(4, rng);
    auto d1 = u * ComplexMatrix::diagonal(std::vector<double>{0.9, -0.4, 0.2, 0.7}) * u.adjoint();
    auto d2 = u * ComplexMatrix::diagonal(std::vector<double>{-0.3, 0.5, 0.1, -0.2}) * u.adjoint();
    auto rc = simulate_stack({enc_of(d1, 1, "H1"), enc_of(d2, 0.5, "H2")}, 1.0, 1e-5);
    auto want = numerics::expm_i(d1, 1.0) * numerics::expm_i(d2, 1.0);
    CHECK(numerics::spectral_norm(rc.op - want) <= 1e-5);

    CHECK_THROWS_AS(simulate_stack({e, e}, 1.0, 1e-3), PreconditionError);
    CHECK_THROWS_AS(simulate_stack({}, 1.0, 1e-3), PreconditionError);
}

TEST_CASE("three-level stack") {
    numerics::SplitMix64 rng(10);
    std::vector<BlockEncoding> terms;
    double norms[] = {1.0, 0.6, 0.3};
    for (int j = 0; j < 3; j++) {
        auto h = normalized_hermitian(4, rng, norms[j]);
        terms.push_back(enc_of(h, norms[j], "H" + std::to_string(j + 1)));
    }
    auto r = simulate_stack(terms, 0.5, 1e-5);
    CHECK(r.measured_error <= 1e-5);
    REQUIRE(r.levels.size() == 3);
    for (const auto &l : r.levels) {
        CHECK(l.queries > 0);
    }
    std::vector<BlockEncoding> perm{terms[2], terms[0], terms[1]};
    auto rp = simulate_stack(perm, 0.5, 1e-5);
    CHECK(numerics::spectral_norm(rp.op - r.op) <= 2e-5);
    CHECK(rp.ledger == r.ledger);
}

TEST_CASE("ledger factorizes over slices") {
    numerics::SplitMix64 rng(12);
    auto a = normalized_hermitian(4, rng, 1);
    auto b = normalized_hermitian(4, rng, 0.7);
    auto ea = enc_of(a, 1, "H1");
    auto eb = enc_of(b, 0.7, "H2");
    const double t = 1.0, eps = 1e-4;
    auto r = simulate_stack({ea, eb}, t, eps);

    size_t slices = static_cast<size_t>(std::ceil(2 * 0.7 * t - 1e-12));
    double tau = t / slices, es = eps / slices;
    auto p = dyson::plan(tau, es / 2, 1, 0.7);
    int nb = dyson::grid_bits(p.M);
    double pe = es / 4 / (2 * nb);
    uint64_t per_select_a = 0;
    for (int k = 0; k < nb; k++) {
        per_select_a += 2 * jacobi_anger_order(std::ldexp(tau / p.M, k) * 1.0, pe);
    }
    uint64_t outer = jacobi_anger_order(tau, es / 4);
    CHECK(count(r.ledger, names::encoding("H2")) == slices * p.K);
    CHECK(count(r.ledger, names::encoding("H1")) == slices * (outer + p.K * per_select_a));
    CHECK(r.levels[1].max_slices == slices);
    CHECK(r.levels[1].max_grid == p.M);
}

TEST_CASE("smaller eps never lowers a counter") {
    numerics::SplitMix64 rng(14);
    std::vector<BlockEncoding> terms;
    for (int j = 0; j < 3; j++) {
        terms.push_back(enc_of(normalized_hermitian(3, rng, 1.0 - 0.3 * j), 1.0 - 0.3 * j, "T" + std::to_string(j)));
    }
    CostVector prev;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
        auto r = simulate_stack(terms, 0.8, eps);
        CHECK(r.measured_error <= eps);
        for (const auto &[k, v] : prev) {
            CHECK(count(r.ledger, k) >= v);
        }
        prev = r.ledger;
    }
}
