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

#include "hamsim/gadgets.hpp"

#include <cmath>

#include "doctest.h"

using namespace hamsim;
using namespace hamsim::gadgets;
using oracles::FixedPointFormat;
using oracles::FixedPointValue;

TEST_CASE("single gates") {
    Statevector sv(1);
    apply_gate(sv, {GateKind::H, 0, {}});
    CHECK(std::abs(sv.amplitudes()[0] - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(sv.amplitudes()[1] - 1 / std::sqrt(2.0)) < 1e-15);

    Statevector t(3);
    apply_gate(t, {GateKind::X, 0, {}});
    apply_gate(t, {GateKind::X, 1, {}});
    apply_gate(t, {GateKind::CCX, 2, {0, 1}});
    CHECK(t.amplitudes()[7] == cplx(1));
    apply_gate(t, {GateKind::CPHASE, 2, {1}, M_PI / 2});
    CHECK(std::abs(t.amplitudes()[7] - cplx(0, 1)) < 1e-15);

    CHECK_THROWS_AS(apply_gate(t, {GateKind::CX, 1, {1}}), PreconditionError);
    CHECK_THROWS_AS(apply_gate(t, {GateKind::X, 3, {}}), PreconditionError);
    CHECK_THROWS_AS(apply_gate(t, {GateKind::CCX, 2, {0}}), PreconditionError);
}

TEST_CASE("comparator flags r 2^n < j") {
    FixedPointFormat f{0, 2, 1};
    auto l = GadgetLayout::make(f);
    Circuit c;
    append_comparator(c, l);
    const uint64_t w = l.width();
    for (uint64_t big_r = 0; big_r <= (uint64_t{1} << w); big_r++) {
        for (uint64_t idx = 0; idx < (uint64_t{1} << w); idx++) {
            Statevector sv(l.qubits);
            sv.amplitudes()[0] = 0;
            sv.amplitudes()[l.index(0, big_r, idx, 0, 0)] = 1;
            run(c, sv);
            int flag = big_r < idx + 1 ? 1 : 0;
            CHECK(sv.amplitudes()[l.index(0, big_r, idx, flag, 0)] == cplx(1));
        }
    }
    // R = 2, j = 3.
    Statevector sv(l.qubits);
    sv.amplitudes()[0] = 0;
    sv.amplitudes()[l.index(0, 2, 2, 0, 0)] = 1;
    run(c, sv);
    CHECK(sv.amplitudes()[l.index(0, 2, 2, 1, 0)] == cplx(1));
}

TEST_CASE("half magnitude with half phase lands on i / sqrt 2") {
    FixedPointFormat f{1, 0, 1};
    FixedPointValue z{1, 1};  // r = 0.5, phi = 0.5
    auto res = fixed_point_to_amplitude(z, f, 1.0);
    // Uniform weight 1/sqrt 2 on idx 0 only; overlap with |u> = |0> gives the amplitude.
    CHECK(std::abs(res.projected[0] - cplx(0, 1) / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(res.projected[1]) < 1e-15);
    CHECK(std::abs(target_amplitude(z, f, 1.0) - cplx(0, 1) / std::sqrt(2.0)) < 1e-15);
    CHECK(res.max_norm_drift < 1e-12);
}

TEST_CASE("extreme inputs") {
    FixedPointFormat f{2, 1, 2};
    const double lambda = 2.0;
    auto one = fixed_point_to_amplitude({4, 0}, f, lambda);  // r = 1
    double s = 0;
    for (size_t i = 0; i < 4; i++) {
        CHECK(std::abs(one.projected[i] - 1 / std::sqrt(4 * lambda)) < 1e-12);
        s += std::norm(one.projected[i]);
    }
    CHECK(s == doctest::Approx(1 / lambda).epsilon(1e-12));
    auto zero = fixed_point_to_amplitude({0, 3}, f, lambda);
    for (auto z : zero.projected) {
        CHECK(std::abs(z) < 1e-15);
    }
    double out = 0;
    for (auto z : zero.output) {
        out += std::norm(z);
    }
    CHECK(out == doctest::Approx(1).epsilon(1e-12));
    CHECK_THROWS_AS(fixed_point_to_amplitude({9, 0}, f, lambda), PreconditionError);
    CHECK_THROWS_AS(fixed_point_to_amplitude({1, 4}, f, lambda), PreconditionError);
    CHECK_THROWS_AS(build_gadget(GadgetLayout::make(f), 1.5), PreconditionError);
}

TEST_CASE("exhaustive small formats") {
    for (FixedPointFormat f : {FixedPointFormat{1, 0, 1}, FixedPointFormat{2, 1, 2}, FixedPointFormat{3, 2, 2},
                               FixedPointFormat{2, 0, 4}, FixedPointFormat{0, 3, 1}}) {
        for (double scale : {1.0, 1.25, 3.0}) {
            double lambda = scale * f.max_magnitude();
            auto rep = exhaustive_check(f, lambda);
            CAPTURE(f.p);
            CAPTURE(f.m);
            CAPTURE(f.n);
            CAPTURE(lambda);
            CHECK(rep.inputs == (uint64_t{1} << f.p) * ((uint64_t{1} << (f.m + f.n)) + 1));
            CHECK(rep.amplitude_error < 1e-12);
            CHECK(rep.garbage_error < 1e-12);
            CHECK(rep.max_norm_drift < 1e-12);
        }
    }
}

TEST_CASE("gate count is affine in each register width") {
    for (int b = 6; b <= 20; b++) {
        FixedPointFormat f{b / 3, b / 3, b - 2 * (b / 3)};
        auto l = GadgetLayout::make(f);
        CHECK(gate_count(l) == 6 * (f.m + f.n) + 3 + f.p);
    }
    FixedPointFormat base{4, 2, 3};
    int prev = gate_count(GadgetLayout::make(base));
    for (int p = 5; p <= 12; p++) {
        base.p = p;
        int cur = gate_count(GadgetLayout::make(base));
        CHECK(cur - prev == 1);
        prev = cur;
    }
    for (int n = 1; n <= 8; n *= 2) {
        FixedPointFormat a{0, 0, n}, b{0, 0, 2 * n};
        auto ca = build_gadget(GadgetLayout::make(a), 1.0);
        auto cb = build_gadget(GadgetLayout::make(b), 1.0);
        CHECK(cb.stage_multi_qubit["compare"] - 3 == 2 * (ca.stage_multi_qubit["compare"] - 3));
    }
    auto nophase = build_gadget(GadgetLayout::make(FixedPointFormat{0, 2, 3}), 4.0);
    CHECK(nophase.stage_gates.count("phase") == 0);
    for (const auto &g : nophase.gates) {
        CHECK(g.kind != GateKind::CPHASE);
    }
}
