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

#include "hamsim/oracles.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "test_util.hpp"

using namespace hamsim;
using namespace hamsim::oracles;
using hamsim::numerics::ComplexMatrix;
using hamsim::numerics::SplitMix64;

static std::shared_ptr<SparseHermitian> pauli_x() {
    return std::make_shared<SparseHermitian>(SparseHermitian::from_dense(ComplexMatrix{{0, 1}, {1, 0}}, {}));
}

TEST_CASE("fixed-point round trip is bit exact") {
    FixedPointFormat f{3, 1, 2};
    for (uint64_t r = 0; r <= 8; r++) {
        for (uint64_t ph = 0; ph < 8; ph++) {
            FixedPointValue v{r, ph};
            cplx z = v.decode(f);
            FixedPointValue back = encode(z, f);
            if (r == 0) {
                CHECK(back.is_zero());
            } else {
                CHECK(back == v);
            }
            CHECK(v.conj(f).decode(f) == std::conj(z));
        }
    }
}

TEST_CASE("fixed-point special phases decode exactly") {
    FixedPointFormat f{2, 0, 1};
    CHECK(FixedPointValue{1, 0}.decode(f) == cplx(0.5, 0));
    CHECK(FixedPointValue{1, 1}.decode(f) == cplx(0, 0.5));
    CHECK(FixedPointValue{1, 2}.decode(f) == cplx(-0.5, 0));
    CHECK(FixedPointValue{1, 3}.decode(f) == cplx(0, -0.5));
    CHECK(FixedPointValue{2, 2}.sqrt_decode(f) == cplx(0, 1));
    CHECK_THROWS_AS(encode(cplx(1.5), f), PreconditionError);
    CHECK_THROWS_AS(encode_real(-1.0, FixedPointFormat{0, 1, 1}), PreconditionError);
}

TEST_CASE("build_oracles on X") {
    auto ledger = std::make_shared<QueryLedger>();
    auto o = OracleSet::build(pauli_x(), ledger);
    CHECK(o.position(0, 1) == 1);
    CHECK(o.position(1, 1) == 0);
    CHECK(o.value(0, 0).is_zero());
    CHECK(o.value(0, 1).decode(o.format()) == cplx(1));
    CHECK(ledger->get(names::O_F) == 2);
    CHECK(ledger->get(names::O_H) == 2);
    CHECK(o.materialize() == ComplexMatrix{{0, 1}, {1, 0}});
    CHECK(ledger->get(names::O_H) == 2);
    CHECK_THROWS_AS(o.position(0, 2), PreconditionError);
    CHECK_THROWS_AS(o.value(2, 0), PreconditionError);
}

TEST_CASE("position oracle padding") {
    // Row 0 has nonzeros at columns 1 and 3; d = 4.
    auto h = std::make_shared<SparseHermitian>(4, 4, FixedPointFormat{});
    FixedPointFormat f;
    h->set(0, 1, encode(0.5, f));
    h->set(0, 3, encode(0.25, f));
    auto o = OracleSet::build(h);
    CHECK(o.peek_position(0, 1) == 1);
    CHECK(o.peek_position(0, 2) == 3);
    CHECK(o.peek_position(0, 3) == 0);
    CHECK(o.peek_position(0, 4) == 2);
    CHECK(o.peek_value(0, o.peek_position(0, 3)).is_zero());
    // Injective on every row.
    for (size_t i = 0; i < 4; i++) {
        std::set<size_t> seen;
        for (size_t l = 1; l <= 4; l++) {
            seen.insert(o.peek_position(i, l));
        }
        CHECK(seen.size() == 4);
    }
}

TEST_CASE("threshold sub-oracles") {
    FixedPointFormat f;
    auto h = std::make_shared<SparseHermitian>(3, 3, f);
    h->set(0, 1, encode(0.1, f));
    h->set(1, 2, encode(cplx(0, 0.5), f));
    h->set(2, 2, encode_real(1.0, f));
    auto ledger = std::make_shared<QueryLedger>();
    auto o = OracleSet::build(h, ledger);

    auto full = o.threshold(0, h->max_magnitude(), "full");
    CHECK(full.materialize() == o.materialize());

    auto top = o.threshold(0.707, 1.0, "top");
    auto m = top.materialize();
    CHECK(m(2, 2) == cplx(1));
    CHECK(m(0, 1) == cplx(0));
    CHECK(m(1, 2) == cplx(0));

    auto empty = o.threshold(h->max_magnitude(), 4.0, "none");
    CHECK(empty.materialize().max_abs() == 0);
    CHECK_THROWS_AS(o.threshold(0.5, 0.5, "bad"), PreconditionError);

    top.value(2, 2);
    top.value(0, 1);
    o.value(1, 2);
    CHECK(ledger->get(names::sub_oracle("top")) == 2);
    CHECK(ledger->get(names::O_H) == 3);
}

TEST_CASE("partition identity and ledger conservation on random instances") {
    SplitMix64 rng(99);
    FixedPointFormat f;
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 2 + rng.below(30);
        size_t d = 1 + rng.below(std::min<size_t>(n, 8));
        auto dense = testing::sparse_hermitian(n, d, rng);
        auto h = std::make_shared<SparseHermitian>(SparseHermitian::from_dense(dense, f, d));
        auto ledger = std::make_shared<QueryLedger>();
        auto o = OracleSet::build(h, ledger);
        double lmax = h->max_magnitude();
        std::vector<double> cuts{0, lmax / 8, lmax / 3, lmax / 2, lmax};
        ComplexMatrix sum(n, n);
        uint64_t sub_queries = 0;
        for (size_t j = 1; j < cuts.size(); j++) {
            auto s = o.threshold(cuts[j - 1], cuts[j], std::to_string(j));
            auto mj = s.materialize();
            CHECK(numerics::hermiticity_defect(mj) == 0);
            sum += mj;
            for (size_t i = 0; i < n; i++) {
                s.value(i, rng.below(n));
                sub_queries++;
            }
        }
        CHECK(sum == o.materialize());
        CHECK(o.materialize() == h->to_dense());
        for (int q = 0; q < 5; q++) {
            o.value(0, 0);
        }
        CHECK(ledger->get(names::O_H) == sub_queries + 5);
    }
}

TEST_CASE("from_dense quantizes and resymmetrizes") {
    FixedPointFormat f{4, 1, 3};
    ComplexMatrix h{{0.3, cplx(0.2, 0.2)}, {cplx(0.2, -0.2000001), -0.7}};
    auto s = SparseHermitian::from_dense(h, f);
    auto dq = s.to_dense();
    CHECK(numerics::hermiticity_defect(dq) == 0);
    CHECK(std::abs(dq(0, 0) - 0.25) == 0);
    CHECK(std::abs(dq(1, 1) - (-0.75)) == 0);
}

TEST_CASE("instance files round trip bit for bit") {
    SplitMix64 rng(5);
    FixedPointFormat f;
    auto dense = testing::sparse_hermitian(16, 4, rng);
    auto h = SparseHermitian::from_dense(dense, f, 4);
    h.set_seed(1234);
    std::ostringstream out;
    write_instance(out, h);
    std::istringstream in(out.str());
    auto back = read_instance(in);
    CHECK(back == h);
    std::ostringstream again;
    write_instance(again, back);
    CHECK(again.str() == out.str());
    CHECK(out.str().rfind("16 4 32 12 3 16 1234\n", 0) == 0);

    std::istringstream bad("2 1 9 1 1 1 0\n0 1 1 0\n");
    CHECK_THROWS_AS(read_instance(bad), PreconditionError);
    auto meta = instance_metadata(h, "test");
    CHECK(meta.find("\"one_to_two\"") != std::string::npos);
}

TEST_CASE("sparsity violations are rejected") {
    FixedPointFormat f;
    SparseHermitian h(3, 1, f);
    h.set(0, 1, encode(0.5, f));
    h.set(0, 2, encode(0.5, f));
    CHECK_THROWS_AS(h.validate(), PreconditionError);
    CHECK_THROWS_AS(h.set(0, 0, encode(cplx(0, 0.5), f)), PreconditionError);
}
