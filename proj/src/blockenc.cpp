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

#include "hamsim/blockenc.hpp"

#include <cfloat>
#include <cmath>
#include <map>
#include <sstream>

#include "hamsim/gadgets.hpp"

namespace hamsim::blockenc {

namespace {

ComplexMatrix first_columns(const ComplexMatrix &m, size_t n) {
    return m.block(0, 0, m.rows(), n);
}

ComplexMatrix overlap(const ComplexMatrix &row, const ComplexMatrix &col) {
    return row.adjoint() * col;
}

CostVector scaled(const CostVector &c, uint64_t times) {
    CostVector out;
    oracles::add_cost(out, c, times);
    return out;
}

}  // namespace

BlockEncoding from_unitary(const ComplexMatrix &u, size_t ancilla_dim, double alpha, CostVector cost,
                           std::string label) {
    if (!u.is_square() || ancilla_dim == 0 || u.rows() % ancilla_dim != 0) {
        throw PreconditionError("from_unitary: dimension must be ancilla_dim * system_dim");
    }
    if (!(alpha > 0)) {
        throw PreconditionError("from_unitary: alpha must be positive");
    }
    double defect = numerics::unitarity_defect(u);
    if (defect > 1e-9) {
        std::ostringstream ss;
        ss << "from_unitary: unitarity defect " << defect << " exceeds 1e-9";
        throw PreconditionError(ss.str());
    }
    BlockEncoding e;
    e.unitary = u;
    e.ancilla_dim = ancilla_dim;
    e.system_dim = u.rows() / ancilla_dim;
    e.col = first_columns(u, e.system_dim);
    e.row = first_columns(ComplexMatrix::identity(u.rows()), e.system_dim);
    e.block = u.block(0, 0, e.system_dim, e.system_dim);
    e.alpha = alpha;
    e.cost = std::move(cost);
    e.label = std::move(label);
    return e;
}

void materialize(BlockEncoding &enc) {
    if (enc.has_unitary()) {
        return;
    }
    const size_t dim = enc.ancilla_dim * enc.system_dim;
    if (dim > kMaxDenseDim) {
        std::ostringstream ss;
        ss << "materialize: dimension " << dim << " above the dense cap " << kMaxDenseDim;
        throw PreconditionError(ss.str());
    }
    enc.unitary = numerics::complete_isometry(enc.row).adjoint() * numerics::complete_isometry(enc.col);
}

double verify(const BlockEncoding &enc, const ComplexMatrix &h) {
    if (!h.is_square() || h.rows() != enc.system_dim || enc.block.rows() != enc.system_dim) {
        std::ostringstream ss;
        ss << "verify: encoding acts on dimension " << enc.system_dim << ", matrix is " << h.rows() << "x"
           << h.cols();
        throw PreconditionError(ss.str());
    }
    return numerics::spectral_norm(enc.block - h * cplx(1 / enc.alpha));
}

BlockEncoding encode_hermitian(const ComplexMatrix &h, double alpha, const std::string &label) {
    auto eig = numerics::hermitian_eig(h);
    double norm = 0;
    for (double l : eig.eigenvalues) {
        norm = std::max(norm, std::abs(l));
    }
    if (!(alpha > 0) || norm > alpha * (1 + 1e-12)) {
        std::ostringstream ss;
        ss << "encode_hermitian: alpha " << alpha << " below ||H|| = " << norm;
        throw PreconditionError(ss.str());
    }
    std::vector<cplx> s(eig.eigenvalues.size());
    for (size_t i = 0; i < s.size(); i++) {
        double x = eig.eigenvalues[i] / alpha;
        s[i] = std::sqrt(std::max(0.0, 1 - x * x));
    }
    auto a = h * cplx(1 / alpha);
    auto sq = numerics::spectral_apply(eig, s);
    const size_t n = h.rows();
    ComplexMatrix u(2 * n, 2 * n);
    u.set_block(0, 0, a);
    u.set_block(0, n, sq);
    u.set_block(n, 0, sq);
    u.set_block(n, n, a * cplx(-1));
    auto e = from_unitary(u, 2, alpha, {{oracles::names::encoding(label), 1}}, label);
    e.block = a;
    return e;
}

BlockEncoding product(const BlockEncoding &e1, const BlockEncoding &e2) {
    if (e1.system_dim != e2.system_dim) {
        throw PreconditionError("product: system dimensions differ");
    }
    const size_t ns = e1.system_dim, a1 = e1.ancilla_dim, a2 = e2.ancilla_dim;
    const size_t dim = a1 * a2 * ns;
    if (dim > kMaxDenseDim) {
        throw PreconditionError("product: combined dimension above the dense cap");
    }
    BlockEncoding u1 = e1, u2 = e2;
    materialize(u1);
    materialize(u2);
    auto idx = [&](size_t x1, size_t x2, size_t s) { return (x1 * a2 + x2) * ns + s; };
    ComplexMatrix big1(dim, dim), big2(dim, dim);
    for (size_t x1 = 0; x1 < a1; x1++) {
        for (size_t y1 = 0; y1 < a1; y1++) {
            for (size_t s = 0; s < ns; s++) {
                for (size_t t = 0; t < ns; t++) {
                    cplx v = u1.unitary(x1 * ns + s, y1 * ns + t);
                    if (v == cplx(0)) {
                        continue;
                    }
                    for (size_t x2 = 0; x2 < a2; x2++) {
                        big1(idx(x1, x2, s), idx(y1, x2, t)) = v;
                    }
                }
            }
        }
    }
    for (size_t x2 = 0; x2 < a2; x2++) {
        for (size_t y2 = 0; y2 < a2; y2++) {
            for (size_t s = 0; s < ns; s++) {
                for (size_t t = 0; t < ns; t++) {
                    cplx v = u2.unitary(x2 * ns + s, y2 * ns + t);
                    if (v == cplx(0)) {
                        continue;
                    }
                    for (size_t x1 = 0; x1 < a1; x1++) {
                        big2(idx(x1, x2, s), idx(x1, y2, t)) = v;
                    }
                }
            }
        }
    }
    CostVector cost = e1.cost;
    oracles::add_cost(cost, e2.cost);
    return from_unitary(big2 * big1, a1 * a2, e1.alpha * e2.alpha, cost, e2.label + "*" + e1.label);
}

const char *layout_name(Layout l) {
    return l == Layout::compact ? "compact" : "literal";
}

StatePrepPair build_stateprep(const oracles::OracleSet &o, double lambda_max, Layout layout,
                              const std::string &label) {
    const size_t n = o.dim(), d = o.sparsity();
    const auto &f = o.format();
    if (n == 0 || d == 0) {
        throw PreconditionError("build_stateprep: empty oracle");
    }
    double largest = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t l = 1; l <= d; l++) {
            largest = std::max(largest, o.peek_value(i, o.peek_position(i, l)).magnitude(f));
        }
    }
    if (!(lambda_max > 0) || lambda_max < largest) {
        std::ostringstream ss;
        ss << "build_stateprep: Lambda_max = " << lambda_max << " below max|H_ik| = " << largest;
        throw PreconditionError(ss.str());
    }

    StatePrepPair pair;
    pair.layout = layout;
    pair.system_dim = n;
    pair.sparsity = d;
    pair.lambda_max = lambda_max;
    pair.normalization = static_cast<double>(d) * lambda_max;
    pair.label = label;
    oracles::add_cost(pair.cost, o.value_cost(), 4);
    pair.cost[oracles::names::O_F] += 2;
    pair.cost[oracles::names::U_COL] += 1;
    pair.cost[oracles::names::U_ROW] += 1;

    const double inv_sqrt_d = 1 / std::sqrt(static_cast<double>(d));
    const double inv_sqrt_lambda = 1 / std::sqrt(lambda_max);

    if (layout == Layout::compact) {
        pair.ancilla_dim = 3 * n;
        const size_t dim = pair.ancilla_dim * n;
        auto idx = [&](size_t a1, size_t a2, size_t s) { return (a1 * 3 + a2) * n + s; };
        pair.col = ComplexMatrix(dim, n);
        pair.row = ComplexMatrix(dim, n);
        pair.good.assign(pair.ancilla_dim, 0);
        for (size_t a = 0; a < pair.ancilla_dim; a += 3) {
            pair.good[a] = 1;
        }
        for (size_t k = 0; k < n; k++) {
            for (size_t l = 1; l <= d; l++) {
                size_t p = o.peek_position(k, l);
                auto v = o.peek_value(p, k);
                double r = v.magnitude(f) / lambda_max;
                pair.col(idx(p, 0, k), k) = v.sqrt_decode(f) * inv_sqrt_lambda * inv_sqrt_d;
                pair.col(idx(p, 1, k), k) = std::sqrt(std::max(0.0, 1 - r)) * inv_sqrt_d;
            }
            for (size_t l = 1; l <= d; l++) {
                size_t q = o.peek_position(k, l);
                auto v = o.peek_value(k, q);
                double r = v.magnitude(f) / lambda_max;
                pair.row(idx(k, 0, q), k) = std::conj(v.sqrt_decode(f)) * inv_sqrt_lambda * inv_sqrt_d;
                pair.row(idx(k, 2, q), k) = std::sqrt(std::max(0.0, 1 - r)) * inv_sqrt_d;
            }
            pair.col_fallback.push_back(idx(k, 1, k));
            pair.row_fallback.push_back(idx(k, 2, k));
        }
        return pair;
    }

    // Literal layout: a1, the converter's index register a, flags b and c,
    // and a side qubit that keeps row garbage orthogonal to column garbage.
    const int w = f.m + f.n;
    auto gl = gadgets::GadgetLayout::make(f);
    if (gl.qubits > gadgets::kMaxQubits) {
        throw PreconditionError("build_stateprep: literal layout needs p + 2(m+n) + 4 <= 24 qubits");
    }
    if (lambda_max < f.max_magnitude()) {
        throw PreconditionError("build_stateprep: literal layout needs Lambda_max >= 2^m");
    }
    const size_t a4 = size_t{1} << w;
    pair.ancilla_dim = n * a4 * 8;
    const size_t dim = pair.ancilla_dim * n;
    if (dim * n > (size_t{1} << 24)) {
        throw PreconditionError("build_stateprep: literal layout too large to store");
    }
    auto idx = [&](size_t a1, size_t ai, size_t bc, size_t side, size_t s) {
        return (((a1 * a4 + ai) * 4 + bc) * 2 + side) * n + s;
    };
    std::map<std::pair<uint64_t, uint64_t>, std::vector<cplx>> cache;
    auto convert = [&](const oracles::FixedPointValue &v) -> const std::vector<cplx> & {
        auto key = std::make_pair(v.r_bits, v.phi_bits);
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, gadgets::fixed_point_to_amplitude(v, f, lambda_max).output).first;
        }
        return it->second;
    };
    pair.col = ComplexMatrix(dim, n);
    pair.row = ComplexMatrix(dim, n);
    pair.good.assign(pair.ancilla_dim, 0);
    for (size_t a = 0; a < pair.ancilla_dim; a += 8) {
        pair.good[a] = 1;
    }
    for (size_t k = 0; k < n; k++) {
        for (size_t l = 1; l <= d; l++) {
            size_t p = o.peek_position(k, l);
            const auto &out = convert(o.peek_value(p, k));
            for (size_t bc = 0; bc < 4; bc++) {
                for (size_t ai = 0; ai < a4; ai++) {
                    pair.col(idx(p, ai, bc, 0, k), k) = out[ai + a4 * bc] * inv_sqrt_d;
                }
            }
        }
        for (size_t l = 1; l <= d; l++) {
            size_t q = o.peek_position(k, l);
            const auto &out = convert(o.peek_value(k, q));
            for (size_t bc = 0; bc < 4; bc++) {
                for (size_t ai = 0; ai < a4; ai++) {
                    pair.row(idx(k, ai, bc, bc == 0 ? 0 : 1, q), k) = std::conj(out[ai + a4 * bc]) * inv_sqrt_d;
                }
            }
        }
        pair.col_fallback.push_back(idx(k, 0, 3, 0, k));
        pair.row_fallback.push_back(idx(k, 0, 0, 1, k));
    }
    return pair;
}

BlockEncoding to_encoding(const StatePrepPair &pair) {
    BlockEncoding e;
    e.col = pair.col;
    e.row = pair.row;
    e.block = overlap(pair.row, pair.col);
    e.ancilla_dim = pair.ancilla_dim;
    e.system_dim = pair.system_dim;
    e.alpha = pair.normalization;
    e.cost = pair.cost;
    e.label = pair.label;
    return e;
}

std::vector<double> good_amplitudes(const StatePrepPair &pair, const ComplexMatrix &states) {
    const size_t n = pair.system_dim;
    std::vector<double> out(states.cols(), 0);
    for (size_t i = 0; i < states.rows(); i++) {
        if (!pair.good[i / n]) {
            continue;
        }
        for (size_t k = 0; k < states.cols(); k++) {
            out[k] += std::norm(states(i, k));
        }
    }
    for (auto &x : out) {
        x = std::sqrt(x);
    }
    return out;
}

StatePrepPair amplitude_amplify(const StatePrepPair &pair, int c_odd) {
    if (c_odd < 1 || c_odd % 2 == 0) {
        throw PreconditionError("amplitude_amplify: C must be an odd positive integer");
    }
    const size_t n = pair.system_dim;
    for (const auto *states : {&pair.col, &pair.row}) {
        for (double a : good_amplitudes(pair, *states)) {
            double theta = std::asin(std::min(1.0, a));
            if (c_odd * theta > M_PI / 2 + 1e-12) {
                std::ostringstream ss;
                ss << "amplitude_amplify: C asin(a) = " << c_odd * theta << " over-rotates past pi/2";
                throw PreconditionError(ss.str());
            }
        }
    }
    StatePrepPair out = pair;
    const int rounds = (c_odd - 1) / 2;
    for (auto *states : {&out.col, &out.row}) {
        const size_t dim = states->rows();
        std::vector<cplx> v(dim), x(dim);
        for (size_t k = 0; k < states->cols(); k++) {
            for (size_t i = 0; i < dim; i++) {
                v[i] = x[i] = (*states)(i, k);
            }
            for (int r = 0; r < rounds; r++) {
                cplx ov = 0;
                for (size_t i = 0; i < dim; i++) {
                    if (pair.good[i / n]) {
                        x[i] = -x[i];
                    }
                    ov += std::conj(v[i]) * x[i];
                }
                for (size_t i = 0; i < dim; i++) {
                    x[i] = 2.0 * ov * v[i] - x[i];
                }
            }
            for (size_t i = 0; i < dim; i++) {
                (*states)(i, k) = x[i];
            }
        }
    }
    out.cost = scaled(pair.cost, c_odd);
    return out;
}

std::vector<double> realize_deltas(const AmplificationSpec &spec, size_t n) {
    if (!(spec.delta >= 0 && spec.delta < 1)) {
        throw PreconditionError("amplification: delta must lie in [0, 1)");
    }
    std::vector<double> out(n);
    switch (spec.profile) {
        case DeltaProfile::alternating:
            for (size_t k = 0; k < n; k++) {
                out[k] = k % 2 == 0 ? spec.delta : -spec.delta;
            }
            break;
        case DeltaProfile::random: {
            numerics::SplitMix64 rng(spec.seed);
            for (size_t k = 0; k < n; k++) {
                out[k] = spec.delta * (2 * rng.uniform() - 1);
            }
            break;
        }
        case DeltaProfile::explicit_values:
            if (spec.explicit_deltas.size() != n) {
                throw PreconditionError("amplification: explicit delta profile has the wrong length");
            }
            for (size_t k = 0; k < n; k++) {
                if (std::abs(spec.explicit_deltas[k]) > spec.delta) {
                    throw PreconditionError("amplification: explicit delta_k exceeds delta");
                }
                out[k] = spec.explicit_deltas[k];
            }
            break;
    }
    return out;
}

uint64_t multiply_queries(const AmplificationSpec &spec) {
    double delta = spec.delta > 0 ? spec.delta : DBL_EPSILON;
    double q = std::ceil(spec.c_am * spec.factor * std::log(1 / delta));
    return std::max<uint64_t>(1, static_cast<uint64_t>(q));
}

BlockEncoding amplitude_multiply(const StatePrepPair &pair, const AmplificationSpec &spec) {
    if (!(spec.factor > 0) || !(spec.c_am > 0)) {
        throw PreconditionError("amplitude_multiply: C and c_am must be positive");
    }
    const size_t n = pair.system_dim;
    auto deltas = realize_deltas(spec, n);
    StatePrepPair out = pair;
    for (int side = 0; side < 2; side++) {
        ComplexMatrix &states = side == 0 ? out.col : out.row;
        const auto &fallback = side == 0 ? pair.col_fallback : pair.row_fallback;
        const size_t dim = states.rows();
        auto amps = good_amplitudes(pair, states);
        for (size_t k = 0; k < n; k++) {
            double a = amps[k];
            double g = spec.factor * a * (1 + deltas[k]);
            if (g > 1 + 1e-12) {
                std::ostringstream ss;
                ss << "amplitude_multiply: C = " << spec.factor << " pushes amplitude " << a << " of index " << k
                   << " to " << g << " > 1";
                throw PreconditionError(ss.str());
            }
            g = std::min(g, 1.0);
            std::vector<cplx> bad(dim);
            double bad_norm = 0;
            for (size_t i = 0; i < dim; i++) {
                if (!pair.good[i / n]) {
                    bad[i] = states(i, k);
                    bad_norm += std::norm(bad[i]);
                }
            }
            bad_norm = std::sqrt(bad_norm);
            if (bad_norm < 1e-8) {
                std::fill(bad.begin(), bad.end(), cplx(0));
                bad[fallback[k]] = 1;
                bad_norm = 1;
            }
            double keep = a > 0 ? g / a : 0;
            double rest = std::sqrt(std::max(0.0, 1 - g * g)) / bad_norm;
            for (size_t i = 0; i < dim; i++) {
                states(i, k) = pair.good[i / n] ? states(i, k) * keep : bad[i] * rest;
            }
        }
    }
    auto e = to_encoding(out);
    e.alpha = pair.normalization / (spec.factor * spec.factor);
    e.cost = scaled(pair.cost, multiply_queries(spec));
    return e;
}

std::vector<double> column_sums(const oracles::OracleSet &o) {
    const auto &f = o.format();
    std::vector<double> out(o.dim(), 0);
    for (size_t k = 0; k < o.dim(); k++) {
        for (size_t l = 1; l <= o.sparsity(); l++) {
            out[k] += o.peek_value(k, o.peek_position(k, l)).magnitude(f);
        }
    }
    return out;
}

}  // namespace hamsim::blockenc
