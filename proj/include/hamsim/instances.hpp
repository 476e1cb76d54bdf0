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

#ifndef HAMSIM_INSTANCES_HPP
#define HAMSIM_INSTANCES_HPP

#include <cstdint>
#include <vector>

#include "hamsim/numerics.hpp"
#include "hamsim/oracles.hpp"

namespace hamsim::instances {

using numerics::ComplexMatrix;

/// Bit matrix x[j][l] for PARITY of n ORs over m_or bits, plus the
/// complete-graph size s.
struct InstanceParams {
    int n = 1;
    int m_or = 1;
    int s = 1;
    std::vector<std::vector<int>> x;

    /// At most one set bit per row.
    bool promise() const;
    void validate() const;
};

/// (n+1)x(n+1) chain with couplings sqrt(j(n-j+1))/n.
ComplexMatrix h_spin(int n);
/// (2n+2)-dimensional parity Hamiltonian; spin register slow, out bit fast.
ComplexMatrix h_parity(int n, const std::vector<int> &x);
/// 2m x 2m OR Hamiltonian in block form [[C1, C0], [C0^dagger, C1]] (out bit slow).
ComplexMatrix h_or(int m_or, const std::vector<int> &x);
/// Full instance H_{PARITY o OR} (x) H_complete, ordered s, o, c, out (out fastest).
ComplexMatrix h_parity_or(const InstanceParams &params);

/// Basis index for h_parity_or.
size_t parity_or_index(const InstanceParams &params, int spin, int o, int c, int out);
/// |spin>|u>_o|u>_c|out> for h_parity_or.
std::vector<cplx> parity_or_state(const InstanceParams &params, int spin, int out);

/// [[0, U], [U^dagger, 0]]; rejects non-unitary input.
ComplexMatrix dilate_unitary(const ComplexMatrix &u);

struct RandomSparseSpec {
    size_t dim = 16;
    size_t sparsity = 4;
    /// Largest entry magnitude; must not exceed 2^m of the format.
    double max_magnitude = 1.0;
    /// Magnitudes are drawn uniformly from [min_fraction, 1] * max_magnitude.
    double min_fraction = 0.0;
    oracles::FixedPointFormat format;
    uint64_t seed = 1;
};

/// Hermitian with at most d nonzeros per row, deterministic in the seed.
oracles::SparseHermitian random_sparse(const RandomSparseSpec &spec);

/// Requantized copy scaled so that ||H||_{1->2} = fraction * target (fraction < 1
/// leaves room for rounding). Keeps the declared sparsity and format.
oracles::SparseHermitian rescale_one_to_two(const oracles::SparseHermitian &h, double target, double fraction = 0.999);

/// Quantized copy of a dense Hermitian instance for the oracle file format.
oracles::SparseHermitian to_sparse(const ComplexMatrix &h, const oracles::FixedPointFormat &fmt);

size_t sparsity(const ComplexMatrix &h, double tol = 0.0);

}  // namespace hamsim::instances

#endif
