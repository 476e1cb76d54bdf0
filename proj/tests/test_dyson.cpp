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

#include "hamsim/dyson.hpp"

#include <cmath>

#include "doctest.h"

using namespace hamsim;
using namespace hamsim::dyson;
using numerics::ComplexMatrix;

static ComplexMatrix normalized_hermitian(size_t n, numerics::SplitMix64 &rng, double norm) {
    auto h = numerics::random_hermitian(n, rng);
    return h * cplx(norm / numerics::spectral_norm(h));
}

static const ComplexMatrix X{{0, 1}, {1, 0}};

// Direct prefix recurrence S_k(j) = S_k(j-1) + (-i delta) H_I(t_j) S_{k-1}(j-1).
static ComplexMatrix direct_dyson(const InteractionFrame &f, const DysonPlan &p) {
    const size_t n = f.b.rows();
    std::vector<ComplexMatrix> layer(p.K + 1, ComplexMatrix(n, n));
    layer[0] = ComplexMatrix::identity(n);
    const double delta = p.tau / p.M;
    for (size_t j = 0; j < p.M; j++) {
        auto h = interaction_ham(f, j * delta) * cplx(0, -delta);
        for (int k = p.K; k >= 1; k--) {
            layer[k] += h * layer[k - 1];
        }
    }
    ComplexMatrix d(n, n);
    for (const auto &l : layer) {
        d += l;
    }
    return d;
}

TEST_CASE("interaction_ham") {
    auto a = ComplexMatrix::diagonal(std::vector<double>{0.3, -0.7});
    auto f = exact_frame(a, X, 1, 1);
    CHECK(interaction_ham(f, 0) == X);
    for (double s : {0.1, 0.5, 2.0}) {
        auto h = interaction_ham(f, s);
        CHECK(std::abs(h(0, 1) - std::polar(1.0, (0.3 + 0.7) * s)) < 1e-14);
        CHECK(std::abs(h(1, 0) - std::polar(1.0, -(0.3 + 0.7) * s)) < 1e-14);
        CHECK(std::abs(h(0, 0)) < 1e-15);
    }
    auto b = ComplexMatrix::diagonal(std::vector<double>{0.5, 0.25});
    auto fc = exact_frame(a, b, 1, 1);
    CHECK(numerics::max_diff(interaction_ham(fc, 0.7), b) < 1e-15);
    CHECK_THROWS_AS(exact_frame(a, X, 1, 0.5), PreconditionError);
}

TEST_CASE("plan formulas") {
    auto p = plan(0.5, 1e-3, 1, 1);
    CHECK(p.alpha_prime == 2);
    CHECK(p.M == 750);
    auto q = plan(0.5, 1e-6, 1, 1);
    CHECK(q.K == 9);
    CHECK(q.truncation_bound <= 0.5e-6);
    CHECK_THROWS_AS(plan(0.5, 1.5, 1, 1), PreconditionError);
    CHECK_THROWS_AS(plan(0.6, 1e-3, 1, 1), PreconditionError);
    auto z = plan(0.3, 1e-3, 1, 0);
    CHECK(z.K == 0);
    CHECK(z.M == 1);
    CHECK(grid_bits(1) == 0);
    CHECK(grid_bits(2) == 1);
    CHECK(grid_bits(750) == 10);
    CHECK(plan(0.5, 1e-3, 1, 1, 2.0).M == 1500);
}

TEST_CASE("trivial series") {
    numerics::SplitMix64 rng(3);
    auto a = normalized_hermitian(3, rng, 1);
    auto f = exact_frame(a, ComplexMatrix(3, 3), 1, 0);
    auto p = plan(0.4, 1e-6, 1, 0);
    CHECK(numerics::max_diff(truncated_dyson(f, p), ComplexMatrix::identity(3)) < 1e-15);

    auto b = normalized_hermitian(3, rng, 1);
    auto fz = exact_frame(ComplexMatrix(3, 3), b, 0, 1);
    auto pz = plan(0.5, 1e-5, 0, 1);
    auto d = truncated_dyson(fz, pz);
    CHECK(numerics::spectral_norm(d - numerics::expm_i(b, 0.5)) <= 1e-5);
}

TEST_CASE("random frames meet the slice budget") {
    numerics::SplitMix64 rng(11);
    for (int trial = 0; trial < 4; trial++) {
        auto a = normalized_hermitian(4, rng, 1);
        auto b = normalized_hermitian(4, rng, 1);
        auto f = exact_frame(a, b, 1, 1);
        for (double eps : {1e-3, 1e-5}) {
            auto p = plan(0.4, eps, 1, 1);
            auto d = truncated_dyson(f, p);
            auto t = exact_propagator(a, b, 0.4);
            CHECK(numerics::spectral_norm(d - t) <= eps);
            auto composed = numerics::expm_i(a, 0.4) * d;
            CHECK(numerics::spectral_norm(composed - numerics::expm_i(a + b, 0.4)) <= eps);
            CHECK(numerics::spectral_norm(d.adjoint() * d - ComplexMatrix::identity(4)) <= 2 * eps);
        }
    }
}

TEST_CASE("doubling M halves the discretization error") {
    numerics::SplitMix64 rng(5);
    auto a = normalized_hermitian(4, rng, 1);
    auto b = normalized_hermitian(4, rng, 1);
    auto f = exact_frame(a, b, 1, 1);
    auto t = exact_propagator(a, b, 0.5);
    auto p = plan(0.5, 1e-4, 1, 1);
    p.K = 14;
    double prev = -1;
    for (size_t m : {50, 100, 200, 400}) {
        p.M = m;
        double err = numerics::spectral_norm(truncated_dyson(f, p) - t);
        if (prev > 0) {
            CHECK(prev / err >= 1.8);
        }
        prev = err;
    }
}

TEST_CASE("doubling evaluation equals the direct recurrence") {
    numerics::SplitMix64 rng(21);
    for (size_t m : {1, 2, 3, 7, 64, 100, 257}) {
        auto a = normalized_hermitian(3, rng, 1.2);
        auto b = normalized_hermitian(3, rng, 0.7);
        auto exact = exact_frame(a, b, 1.2, 0.7);
        auto approx = provider_frame(a, b, 1.2, 0.7, exact_provider(a));
        auto p = plan(0.6, 1e-3, 1.2, 0.7);
        p.M = m;
        p.K = 6;
        auto ref = direct_dyson(exact, p);
        CHECK(numerics::max_diff(truncated_dyson(exact, p), ref) < 1e-12);
        CHECK(numerics::max_diff(truncated_dyson(approx, p), ref) < 1e-12);
    }
}

TEST_CASE("provider path matches the eigenbasis path") {
    numerics::SplitMix64 rng(9);
    auto a = normalized_hermitian(4, rng, 1.5);
    auto b = normalized_hermitian(4, rng, 0.8);
    auto exact = exact_frame(a, b, 1.5, 0.8);
    auto approx = provider_frame(a, b, 1.5, 0.8, exact_provider(a));
    auto p = plan(0.6, 1e-4, 1.5, 0.8);
    auto r1 = run_dyson(exact, p, {{"U_B", 1}});
    auto r2 = run_dyson(approx, p, {{"U_B", 1}});
    CHECK(numerics::max_diff(r1.op, r2.op) < 1e-11);
    int nb = grid_bits(p.M);
    CHECK(r1.cost == r2.cost);
    CHECK(r1.cost.at("U_B") == static_cast<uint64_t>(p.K));
    CHECK(r1.cost.at(oracles::names::EXP_A) == static_cast<uint64_t>(2 * nb * p.K));
    CHECK(r2.provider_calls == static_cast<size_t>(nb));
}

TEST_CASE("select unitary blocks") {
    numerics::SplitMix64 rng(13);
    auto a = normalized_hermitian(2, rng, 1);
    auto b = normalized_hermitian(2, rng, 0.9);
    auto enc = blockenc::encode_hermitian(b, 0.9, "B");
    auto f = exact_frame(a, b, 1, 0.9);
    for (size_t m : {1, 4, 8}) {
        auto p = plan(0.5, 1e-2, 1, 0.9);
        p.M = m;
        auto sel = select_unitary(f, p, enc);
        CHECK(numerics::unitarity_defect(sel.unitary) < 1e-10);
        CHECK(sel.system_dim == 2 * m);
        for (size_t j = 0; j < m; j++) {
            auto blk = sel.encoded_block().block(2 * j, 2 * j, 2, 2);
            auto want = interaction_ham(f, 0.5 * j / m) * cplx(1 / 0.9);
            CHECK(numerics::max_diff(blk, want) < 1e-9);
            for (size_t k = 0; k < m; k++) {
                if (k != j) {
                    CHECK(sel.encoded_block().block(2 * j, 2 * k, 2, 2).max_abs() < 1e-12);
                }
            }
        }
    }
    auto f0 = exact_frame(ComplexMatrix(2, 2), b, 0, 0.9);
    auto p = plan(0.5, 1e-2, 0, 0.9);
    p.M = 4;
    auto sel = select_unitary(f0, p, enc);
    for (size_t j = 0; j < 4; j++) {
        CHECK(numerics::max_diff(sel.encoded_block().block(2 * j, 2 * j, 2, 2), b * cplx(1 / 0.9)) < 1e-12);
    }
    p.M = 9;
    CHECK_THROWS_AS(select_unitary(f0, p, enc), PreconditionError);
}
