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

#ifndef HAMSIM_BLOCKENC_HPP
#define HAMSIM_BLOCKENC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hamsim/numerics.hpp"
#include "hamsim/oracles.hpp"

namespace hamsim::blockenc {

using numerics::ComplexMatrix;
using oracles::CostVector;

/// Dense materialization cap for U (rows of the full ancilla x system space).
constexpr size_t kMaxDenseDim = 1024;

/// Basis index a * N_s + s: the ancilla is the slow register, so the encoded
/// block is the top-left N_s x N_s corner of U.
struct BlockEncoding {
    /// Full unitary, or empty when only the isometries are kept.
    ComplexMatrix unitary;
    /// U_col |0>_a and U_row |0>_a restricted to the system, as D x N_s isometries.
    ComplexMatrix col;
    ComplexMatrix row;
    /// Cached top-left block, equal to H / alpha for a faithful encoding.
    ComplexMatrix block;
    size_t ancilla_dim = 1;
    size_t system_dim = 0;
    double alpha = 1;
    /// Base-oracle queries charged per application.
    CostVector cost;
    std::string label;

    bool has_unitary() const {
        return !unitary.empty();
    }
    const ComplexMatrix &encoded_block() const {
        return block;
    }
    ComplexMatrix matrix() const {
        return block * cplx(alpha);
    }
};

/// Wraps an explicit unitary. Rejects non-unitary input.
BlockEncoding from_unitary(const ComplexMatrix &u, size_t ancilla_dim, double alpha, CostVector cost = {},
                           std::string label = "U");

/// Builds U from the stored isometries when D <= kMaxDenseDim. Idempotent.
void materialize(BlockEncoding &enc);

/// ||encoded_block - H / alpha|| in spectral norm.
double verify(const BlockEncoding &enc, const ComplexMatrix &h);

/// Two-ancilla encoding [[H/a, S], [S, -H/a]] with S = sqrt(I - H^2/a^2).
BlockEncoding encode_hermitian(const ComplexMatrix &h, double alpha, const std::string &label = "H");

/// Encoded block e2.block * e1.block; ancilla (a1, a2) with a1 slow.
BlockEncoding product(const BlockEncoding &e1, const BlockEncoding &e2);

enum class Layout {
    /// a1 (N) x a2 (3): value branch a2 = 0, column garbage 1, row garbage 2.
    compact,
    /// a1 (N) x a (2^{m+n}) x b x c x side, amplitudes from the converter circuit.
    literal,
};

const char *layout_name(Layout l);

struct StatePrepPair {
    Layout layout = Layout::compact;
    size_t system_dim = 0;
    size_t ancilla_dim = 0;
    /// Column k is |chi_k> = U_col |0>_a |k>_s.
    ComplexMatrix col;
    /// Column j is |chi-bar_j> = U_row |0>_a |j>_s.
    ComplexMatrix row;
    /// good[a] = 1 on ancilla values carrying the amplitude sqrt(H_pk / Lambda).
    std::vector<uint8_t> good;
    /// Full-space index used as the garbage direction when a state has none.
    std::vector<size_t> col_fallback;
    std::vector<size_t> row_fallback;
    size_t sparsity = 0;
    double lambda_max = 0;
    /// d * Lambda_max.
    double normalization = 0;
    /// Per application of U_row^dagger U_col.
    CostVector cost;
    std::string label;
};

/// U_col and U_row for a d-sparse oracle. Rejects Lambda_max below the largest entry.
StatePrepPair build_stateprep(const oracles::OracleSet &o, double lambda_max, Layout layout = Layout::compact,
                              const std::string &label = "H");

/// U = U_row^dagger U_col with alpha = normalization.
BlockEncoding to_encoding(const StatePrepPair &pair);

/// ||Pi_good chi_k|| for every column of states (col or row of a pair).
std::vector<double> good_amplitudes(const StatePrepPair &pair, const ComplexMatrix &states);

/// Amplitudes a_k -> sin(C asin a_k) by (C-1)/2 rounds of (2vv^dagger - I)(I - 2 Pi).
StatePrepPair amplitude_amplify(const StatePrepPair &pair, int c_odd);

enum class DeltaProfile { alternating, random, explicit_values };

struct AmplificationSpec {
    double factor = 1;
    double delta = 0;
    DeltaProfile profile = DeltaProfile::alternating;
    uint64_t seed = 1;
    std::vector<double> explicit_deltas;
    /// Constant in ceil(c_am C ln(1/delta)).
    double c_am = 1;
};

/// delta_k per index: +-delta alternating, seeded uniform in [-delta, delta], or explicit.
std::vector<double> realize_deltas(const AmplificationSpec &spec, size_t n);

/// Number of pair applications charged by amplitude_multiply.
uint64_t multiply_queries(const AmplificationSpec &spec);

/// Contract model: a_k -> C a_k (1 + delta_k) on both states, alpha = d Lambda / C^2.
BlockEncoding amplitude_multiply(const StatePrepPair &pair, const AmplificationSpec &spec);

/// sigma_k = sum_p |H_pk| over the oracle's (windowed) values.
std::vector<double> column_sums(const oracles::OracleSet &o);

}  // namespace hamsim::blockenc

#endif
