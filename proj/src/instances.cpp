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

namespace hamsim::instances {

bool InstanceParams::promise() const {
    for (const auto &row : x) {
        int ones = 0;
        for (int b : row) {
            ones += b != 0;
        }
        if (ones > 1) {
            return false;
        }
    }
    return true;
}

void InstanceParams::validate() const {
    if (n < 1 || m_or < 1 || s < 1) {
        throw PreconditionError("instance params: n, m_or, s must be positive");
    }
    if (x.size() != static_cast<size_t>(n)) {
        throw PreconditionError("instance params: x needs n rows");
    }
    for (const auto &row : x) {
        if (row.size() != static_cast<size_t>(m_or)) {
            throw PreconditionError("instance params: each x row needs m_or bits");
        }
    }
}

static double spin_coupling(int j, int n) {
    return std::sqrt(static_cast<double>(j) * (n - j + 1)) / n;
}

ComplexMatrix h_spin(int n) {
    if (n < 1) {
        throw PreconditionError("h_spin: n must be positive");
    }
    ComplexMatrix h(n + 1, n + 1);
    for (int j = 1; j <= n; j++) {
        h(j - 1, j) = h(j, j - 1) = spin_coupling(j, n);
    }
    return h;
}

ComplexMatrix h_parity(int n, const std::vector<int> &x) {
    if (n < 1 || x.size() != static_cast<size_t>(n)) {
        throw PreconditionError("h_parity: need n >= 1 and |x| = n");
    }
    ComplexMatrix h(2 * n + 2, 2 * n + 2);
    for (int j = 1; j <= n; j++) {
        double c = spin_coupling(j, n);
        int xj = x[j - 1] ? 1 : 0;
        for (int k = 0; k < 2; k++) {
            for (int kp = 0; kp < 2; kp++) {
                // H_NOT = [[x^1, x], [x, x^1]].
                double v = (k == kp) ? (xj ^ 1) : xj;
                if (v != 0) {
                    h(2 * (j - 1) + k, 2 * j + kp) = c * v;
                    h(2 * j + kp, 2 * (j - 1) + k) = c * v;
                }
            }
        }
    }
    return h;
}

ComplexMatrix h_or(int m_or, const std::vector<int> &x) {
    if (m_or < 1 || x.size() != static_cast<size_t>(m_or)) {
        throw PreconditionError("h_or: need m_or >= 1 and |x| = m_or");
    }
    const size_t m = m_or;
    // Circulant C0(r, c) = x[(c - r) mod m].
    ComplexMatrix c0(m, m);
    for (size_t r = 0; r < m; r++) {
        for (size_t c = 0; c < m; c++) {
            c0(r, c) = x[(c + m - r) % m] ? 1.0 : 0.0;
        }
    }
    ComplexMatrix c1(m, m);
    for (size_t r = 0; r < m; r++) {
        for (size_t c = 0; c < m; c++) {
            c1(r, c) = 1.0 / m - 0.5 * (c0(r, c) + std::conj(c0(c, r)));
        }
    }
    ComplexMatrix h(2 * m, 2 * m);
    h.set_block(0, 0, c1);
    h.set_block(0, m, c0);
    h.set_block(m, 0, c0.adjoint());
    h.set_block(m, m, c1);
    return h;
}

size_t parity_or_index(const InstanceParams &p, int spin, int o, int c, int out) {
    return ((static_cast<size_t>(spin) * p.m_or + o) * p.s + c) * 2 + out;
}

ComplexMatrix h_parity_or(const InstanceParams &params) {
    params.validate();
    if (!params.promise()) {
        throw PreconditionError("h_parity_or: OR promise violated (a row of x has two or more ones)");
    }
    const int n = params.n, m = params.m_or, s = params.s;
    size_t dim = static_cast<size_t>(n + 1) * m * s * 2;
    ComplexMatrix h(dim, dim);
    for (int j = 1; j <= n; j++) {
        double cj = spin_coupling(j, n);
        auto hor = h_or(m, params.x[j - 1]);
        for (int k = 0; k < 2; k++) {
            for (int o = 0; o < m; o++) {
                for (int kp = 0; kp < 2; kp++) {
                    for (int op = 0; op < m; op++) {
                        cplx v = hor(k * m + o, kp * m + op);
                        if (v == cplx(0)) {
                            continue;
                        }
                        // H_complete has every entry equal to 1.
                        for (int c = 0; c < s; c++) {
                            for (int cp = 0; cp < s; cp++) {
                                size_t row = parity_or_index(params, j - 1, o, c, k);
                                size_t col = parity_or_index(params, j, op, cp, kp);
                                h(row, col) = cj * v;
                                h(col, row) = cj * std::conj(v);
                            }
                        }
                    }
                }
            }
        }
    }
    return h;
}

std::vector<cplx> parity_or_state(const InstanceParams &params, int spin, int out) {
    size_t dim = static_cast<size_t>(params.n + 1) * params.m_or * params.s * 2;
    std::vector<cplx> v(dim);
    double amp = 1.0 / std::sqrt(static_cast<double>(params.m_or) * params.s);
    for (int o = 0; o < params.m_or; o++) {
        for (int c = 0; c < params.s; c++) {
            v[parity_or_index(params, spin, o, c, out)] = amp;
        }
    }
    return v;
}

ComplexMatrix dilate_unitary(const ComplexMatrix &u) {
    if (!u.is_square()) {
        throw PreconditionError("dilate_unitary: non-square input");
    }
    double defect = numerics::unitarity_defect(u);
    if (defect > 1e-10) {
        std::ostringstream ss;
        ss << "dilate_unitary: input not unitary, max|U^dagger U - I| = " << defect;
        throw PreconditionError(ss.str());
    }
    const size_t n = u.rows();
    ComplexMatrix h(2 * n, 2 * n);
    h.set_block(0, n, u);
    h.set_block(n, 0, u.adjoint());
    return h;
}

oracles::SparseHermitian random_sparse(const RandomSparseSpec &spec) {
    const auto &fmt = spec.format;
    fmt.validate();
    if (spec.dim == 0 || (spec.dim & (spec.dim - 1)) != 0) {
        throw PreconditionError("random_sparse: N must be a power of two");
    }
    if (spec.sparsity < 1 || spec.sparsity > spec.dim) {
        throw PreconditionError("random_sparse: need 1 <= d <= N");
    }
    if (!(spec.max_magnitude > 0) || spec.max_magnitude > fmt.max_magnitude()) {
        throw PreconditionError("random_sparse: max magnitude must lie in (0, 2^m]");
    }
    if (fmt.p == 0) {
        throw PreconditionError("random_sparse: needs at least one phase bit");
    }
    numerics::SplitMix64 rng(spec.seed);
    const size_t n = spec.dim, d = spec.sparsity;
    oracles::SparseHermitian h(n, d, fmt);
    h.set_seed(spec.seed);
    std::vector<size_t> count(n, 0);
    const uint64_t top = static_cast<uint64_t>(std::floor(std::ldexp(spec.max_magnitude, fmt.n)));
    const uint64_t bottom =
        std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(std::ldexp(spec.min_fraction * spec.max_magnitude, fmt.n))));
    if (top < bottom) {
        throw PreconditionError("random_sparse: magnitude range empty at this precision");
    }
    auto draw = [&](bool diagonal) {
        oracles::FixedPointValue v;
        v.r_bits = bottom + rng.below(top - bottom + 1);
        if (diagonal) {
            v.phi_bits = rng.below(2) ? (uint64_t{1} << (fmt.p - 1)) : 0;
        } else {
            v.phi_bits = rng.below(uint64_t{1} << fmt.p);
        }
        return v;
    };
    // Greedy fill: each row tries to reach d nonzeros with random partners.
    for (size_t i = 0; i < n; i++) {
        for (size_t attempt = 0; attempt < 4 * d && count[i] < d; attempt++) {
            size_t k = rng.below(n);
            if (count[k] >= d || !h.get(i, k).is_zero()) {
                continue;
            }
            h.set(i, k, draw(i == k));
            count[i]++;
            if (k != i) {
                count[k]++;
            }
        }
    }
    h.validate();
    return h;
}

oracles::SparseHermitian rescale_one_to_two(const oracles::SparseHermitian &h, double target, double fraction) {
    if (!(target > 0) || !(fraction > 0 && fraction <= 1)) {
        throw PreconditionError("rescale_one_to_two: need target > 0 and fraction in (0, 1]");
    }
    auto dense = h.to_dense();
    double l12 = numerics::compute_norms(dense).one_to_two;
    if (l12 == 0) {
        throw PreconditionError("rescale_one_to_two: zero matrix");
    }
    auto out = oracles::SparseHermitian::from_dense(dense * cplx(fraction * target / l12), h.format(), h.sparsity());
    out.set_seed(h.seed());
    return out;
}

oracles::SparseHermitian to_sparse(const ComplexMatrix &h, const oracles::FixedPointFormat &fmt) {
    return oracles::SparseHermitian::from_dense(h, fmt, std::max<size_t>(1, sparsity(h)));
}

size_t sparsity(const ComplexMatrix &h, double tol) {
    size_t best = 0;
    for (size_t i = 0; i < h.rows(); i++) {
        size_t c = 0;
        for (size_t j = 0; j < h.cols(); j++) {
            c += std::abs(h(i, j)) > tol;
        }
        best = std::max(best, c);
    }
    return best;
}

}  // namespace hamsim::instances
