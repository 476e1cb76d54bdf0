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

#ifndef HAMSIM_RECURSION_HPP
#define HAMSIM_RECURSION_HPP

#include <string>
#include <vector>

#include "hamsim/blockenc.hpp"
#include "hamsim/dyson.hpp"

namespace hamsim::recursion {

using blockenc::BlockEncoding;
using dyson::Evolution;
using dyson::Provider;
using numerics::ComplexMatrix;
using oracles::CostVector;

/// Numerical work at one level, aggregated over every invocation.
struct LevelReport {
    int level = 0;
    std::string label;
    double alpha = 0;
    size_t invocations = 0;
    /// Largest slice count, grid size, truncation order and Chebyshev degree seen.
    size_t max_slices = 0;
    size_t max_grid = 0;
    int max_order = 0;
    int max_degree = 0;
    /// Smallest budget handed to this level.
    double min_eps = 0;
    /// Applications of this level's encoding in the final ledger.
    uint64_t queries = 0;
};

struct SimResult {
    ComplexMatrix op;
    double measured_error = 0;
    double t = 0;
    double eps = 0;
    CostVector ledger;
    std::vector<LevelReport> levels;
};

/// Smallest q with sum_{k > q} 2 |J_k(tau)| <= eps.
int jacobi_anger_order(double tau, double eps);

/// Per-application cost of an encoding, with its own enc[label] counter set to 1.
CostVector application_cost(const BlockEncoding &enc);

/// Truncated Jacobi-Anger series of e^{-i t alpha x} on the encoded block x; charges q applications.
Evolution single_evolution(const BlockEncoding &enc, double t, double eps, LevelReport *stats = nullptr);

/// L = ceil(2 alpha_B t) slices of provider_A(tau) times the truncated Dyson series.
/// Each slice gets eps/L: half to the series, a quarter to provider_A(tau), and a
/// quarter to the binary powers inside the select unitary.
Evolution pair_evolution(const Provider &provider_a, double alpha_a, const BlockEncoding &enc_b, double t, double eps,
                         double c_m = 1, LevelReport *stats = nullptr);

SimResult simulate_single(const BlockEncoding &enc, double t, double eps);

/// a_ref is the dense A behind provider_a, used only to measure the error.
SimResult simulate_pair(const Provider &provider_a, const ComplexMatrix &a_ref, double alpha_a,
                        const BlockEncoding &enc_b, double t, double eps, double c_m = 1);

struct StackOptions {
    double c_m = 1;
    bool measure = true;
};

/// Sorts by alpha descending, then nests pair_evolution over the prefix sums.
SimResult simulate_stack(std::vector<BlockEncoding> terms, double t, double eps, const StackOptions &opt = {});

}  // namespace hamsim::recursion

#endif
