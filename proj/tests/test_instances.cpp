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

#include "hamsim/instances.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"

using namespace hamsim;
using namespace hamsim::instances;
using numerics::ComplexMatrix;

static cplx inner(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    cplx s = 0;
    for (size_t i = 0; i < a.size(); i++) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

TEST_CASE("h_spin couplings") {
    auto h1 = h_spin(1);
    CHECK(h1 == ComplexMatrix{{0, 1}, {1, 0}});
    auto h2 = h_spin(2);
    CHECK(std::abs(h2(0, 1) - std::sqrt(2.0) / 2) < 1e-15);
    CHECK(std::abs(h2(1, 2) - std::sqrt(2.0) / 2) < 1e-15);
    for (int n = 1; n <= 20; n++) {
        CHECK(h_spin(n).max_abs() <= 1.0);
    }
}

TEST_CASE("h_spin perfect state transfer") {
    for (int n = 1; n <= 12; n++) {
        auto u = numerics::expm_i(h_spin(n), n * M_PI / 2);
        CHECK(std::abs(u(n, 0)) >= 1 - 1e-9);
    }
}

TEST_CASE("h_parity computes parity for every input up to n = 6") {
    for (int n = 1; n <= 6; n++) {
        for (int mask = 0; mask < (1 << n); mask++) {
            std::vector<int> x(n);
            int parity = 0;
            for (int j = 0; j < n; j++) {
                x[j] = (mask >> j) & 1;
                parity ^= x[j];
            }
            auto u = numerics::expm_i(h_parity(n, x), n * M_PI / 2);
            CHECK(std::abs(u(2 * n + parity, 0)) >= 1 - 1e-9);
        }
    }
    auto zero = h_parity(3, {0, 0, 0});
    auto spin = h_spin(3);
    CHECK(zero == numerics::kron(spin, ComplexMatrix::identity(2)));
}

TEST_CASE("h_parity n = 1 flips the out bit") {
    auto u = numerics::expm_i(h_parity(1, {1}), M_PI / 2);
    CHECK(std::abs(u(3, 0)) >= 1 - 1e-12);
}

TEST_CASE("h_or acts as X or I on the uniform state") {
    for (int m = 1; m <= 6; m++) {
        for (int hot = -1; hot < m; hot++) {
            std::vector<int> x(m, 0);
            if (hot >= 0) {
                x[hot] = 1;
            }
            auto h = h_or(m, x);
            CHECK(numerics::hermiticity_defect(h) == 0);
            for (int k = 0; k < 2; k++) {
                std::vector<cplx> in(2 * m), want(2 * m);
                int kk = hot >= 0 ? k ^ 1 : k;
                for (int l = 0; l < m; l++) {
                    in[k * m + l] = 1 / std::sqrt(double(m));
                    want[kk * m + l] = 1 / std::sqrt(double(m));
                }
                auto out = numerics::apply(h, in);
                double err = 0;
                for (int i = 0; i < 2 * m; i++) {
                    err = std::max(err, std::abs(out[i] - want[i]));
                }
                CHECK(err < 1e-14);
            }
        }
    }
    InstanceParams bad{1, 2, 1, {{1, 1}}};
    CHECK_FALSE(bad.promise());
    CHECK_THROWS_AS(h_parity_or(bad), PreconditionError);
}

TEST_CASE("h_parity_or delivers the parity of ORs") {
    InstanceParams p{2, 2, 1, {{1, 0}, {0, 0}}};
    auto h = h_parity_or(p);
    auto u = numerics::expm_i(h, M_PI);
    auto out = numerics::apply(u, parity_or_state(p, 0, 0));
    CHECK(std::abs(inner(parity_or_state(p, 2, 1), out)) >= 1 - 1e-9);

    for (int s : {1, 2, 4}) {
        InstanceParams q{2, 2, s, {{0, 1}, {0, 0}}};
        auto uq = numerics::expm_i(h_parity_or(q), 2 * M_PI / (2 * s));
        auto oq = numerics::apply(uq, parity_or_state(q, 0, 0));
        CHECK(std::abs(inner(parity_or_state(q, 2, 1), oq)) >= 1 - 1e-9);
    }
}

TEST_CASE("h_parity_or norms scale with s") {
    InstanceParams base{2, 3, 1, {{0, 1, 0}, {1, 0, 0}}};
    double first = 0;
    for (int s : {1, 2, 4, 8}) {
        InstanceParams p = base;
        p.s = s;
        auto h = h_parity_or(p);
        auto nb = numerics::compute_norms(h);
        double ratio = nb.one_to_two / std::sqrt(double(s));
        if (s == 1) {
            first = ratio;
        }
        CHECK(ratio == doctest::Approx(first).epsilon(1e-12));
        CHECK(nb.max_norm <= 1.0);
        CHECK(sparsity(h, 1e-15) <= static_cast<size_t>(4 * p.m_or * s));
    }
}

TEST_CASE("dilate_unitary") {
    auto h = dilate_unitary(ComplexMatrix::identity(2));
    CHECK(h == numerics::kron(ComplexMatrix{{0, 1}, {1, 0}}, ComplexMatrix::identity(2)));
    numerics::SplitMix64 rng(17);
    for (int trial = 0; trial < 10; trial++) {
        auto u = numerics::random_unitary(4, rng);
        auto d = dilate_unitary(u);
        CHECK(numerics::max_diff(d * d, ComplexMatrix::identity(8)) <= 1e-9);
        auto e = numerics::expm_i(d, M_PI / 2);
        CHECK(numerics::max_diff(e, cplx(0, -1) * d) <= 1e-9);
    }
    CHECK_THROWS_AS(dilate_unitary(ComplexMatrix{{1, 1}, {0, 1}}), PreconditionError);
}

TEST_CASE("dilation of a sparse unitary keeps its sparsity") {
    // Signed permutation with two nonzeros per row after mixing pairs.
    double r = 1 / std::sqrt(2.0);
    ComplexMatrix u{{r, r, 0, 0}, {r, -r, 0, 0}, {0, 0, 0, 1}, {0, 0, cplx(0, 1), 0}};
    auto h = dilate_unitary(u);
    CHECK(sparsity(h) == sparsity(u));
    auto nb = numerics::compute_norms(h);
    CHECK(nb.max_norm <= 1 + 1e-15);
    CHECK(nb.one_to_two <= 1 + 1e-12);
}

TEST_CASE("random_sparse is deterministic and valid") {
    RandomSparseSpec spec;
    spec.dim = 32;
    spec.sparsity = 5;
    spec.seed = 77;
    auto a = random_sparse(spec);
    auto b = random_sparse(spec);
    CHECK(a == b);
    std::ostringstream sa, sb;
    oracles::write_instance(sa, a);
    oracles::write_instance(sb, b);
    CHECK(sa.str() == sb.str());
    CHECK(a.max_row_count() <= 5);
    CHECK(a.max_magnitude() <= 1.0);

    spec.sparsity = 1;
    auto p = random_sparse(spec);
    CHECK(p.max_row_count() <= 1);

    spec.dim = 12;
    CHECK_THROWS_AS(random_sparse(spec), PreconditionError);
    spec.dim = 4;
    spec.sparsity = 5;
    CHECK_THROWS_AS(random_sparse(spec), PreconditionError);
    spec.sparsity = 2;
    spec.max_magnitude = 9.0;
    CHECK_THROWS_AS(random_sparse(spec), PreconditionError);
}

TEST_CASE("random_sparse instances satisfy the norm chain") {
    for (uint64_t seed = 1; seed <= 40; seed++) {
        RandomSparseSpec spec;
        spec.dim = 16;
        spec.sparsity = 1 + seed % 6;
        spec.seed = seed;
        auto h = random_sparse(spec).to_dense();
        auto nb = numerics::compute_norms(h);
        double d = static_cast<double>(spec.sparsity);
        double chain[] = {nb.max_norm, nb.one_to_two, nb.spectral, nb.induced_one, std::sqrt(d) * nb.one_to_two,
                          std::sqrt(d * nb.max_norm * nb.induced_one), d * nb.max_norm};
        for (int i = 0; i + 1 < 7; i++) {
            CHECK(chain[i + 1] - chain[i] >= -1e-9);
        }
    }
}

TEST_CASE("rescale_one_to_two hits the target from below") {
    RandomSparseSpec spec;
    spec.dim = 32;
    spec.sparsity = 6;
    spec.seed = 9;
    auto h = random_sparse(spec);
    for (double target : {0.25, 1.0, 2.0}) {
        auto g = rescale_one_to_two(h, target);
        double l12 = numerics::compute_norms(g.to_dense()).one_to_two;
        CHECK(l12 <= target);
        CHECK(l12 >= 0.99 * target);
        CHECK(g.sparsity() == h.sparsity());
        CHECK(g.format() == h.format());
        CHECK(g.seed() == h.seed());
        CHECK(g.max_row_count() <= h.max_row_count());
    }
    CHECK_THROWS_AS(rescale_one_to_two(h, 0), PreconditionError);
    CHECK_THROWS_AS(rescale_one_to_two(h, 1, 1.5), PreconditionError);
}
