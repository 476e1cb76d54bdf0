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

#ifndef HAMSIM_SPARSESIM_HPP
#define HAMSIM_SPARSESIM_HPP

#include <string>
#include <vector>

#include "hamsim/blockenc.hpp"
#include "hamsim/oracles.hpp"
#include "hamsim/recursion.hpp"

namespace hamsim::sparsesim {

using numerics::ComplexMatrix;
using oracles::CostVector;

/// max(1, round(sqrt(ln d) / 2)); 1 for d <= 1.
int choose_m(double d);

/// Minimizer of the sparse cost bound over m in 1..12.
int brute_force_m(double d, double t, double l12, double eps);

/// Share of the spec'd per-term error delta actually used: each term gets
/// delta_j = kDeltaShare * eps / (m t sqrt(d) L12).
constexpr double kDeltaShare = 0.125;
/// Share of eps handed to the recursion; encodings take at most a quarter.
constexpr double kRecursionShare = 0.5;

struct ThresholdSchedule {
    int m = 1;
    double d = 1;
    double gamma = 1;
    double l12 = 0;
    double t = 0;
    double eps = 0;
    /// cutoffs[0] = 0 < cutoffs[1] < ... < cutoffs[m] = L12.
    std::vector<double> cutoffs;
    /// one_norm[j - 1] bounds ||H_j||_1.
    std::vector<double> one_norm;
    /// Per-term multiplicative amplitude error; infinite when t = 0.
    std::vector<double> delta;

    bool exact() const {
        return t == 0;
    }
};

/// Geometric cut-offs with ratio d^{1/(2m)} ending at L12.
ThresholdSchedule build_schedule(double l12, double d, int m, double t, double eps);

struct SparseOptions {
    /// 0 picks choose_m(d).
    int m = 0;
    /// 0 uses the measured ||H||_{1->2}.
    double l12 = 0;
    blockenc::Layout layout = blockenc::Layout::compact;
    /// Use the measured largest column sum when it beats the schedule bound.
    bool tighten = false;
    blockenc::DeltaProfile profile = blockenc::DeltaProfile::alternating;
    uint64_t seed = 1;
    double c_am = 1;
    double c_m = 1;
    bool measure = true;
};

struct TermReport {
    int level = 0;
    std::string label;
    double lo = 0;
    double hi = 0;
    size_t nonzeros = 0;
    bool dropped = false;
    double measured_one_norm = 0;
    double measured_max = 0;
    double bound_one_norm = 0;
    bool tightened = false;
    double factor = 0;
    double delta = 0;
    double alpha = 0;
    uint64_t multiply_queries = 0;
    /// Base-oracle cost of one application of the amplified encoding.
    CostVector cost;
    /// ||H~_j - H_j||.
    double encoding_error = 0;
};

struct SparseResult {
    recursion::SimResult sim;
    ThresholdSchedule schedule;
    std::vector<TermReport> terms;
    double l12 = 0;
    /// ||sum_j H~_j - H||.
    double encoding_error = 0;
    uint64_t o_h = 0;
    uint64_t o_f = 0;
};

/// Threshold split, amplified encodings and recursive simulation of the oracle's matrix.
SparseResult simulate_sparse(const oracles::OracleSet &o, double t, double eps, const SparseOptions &opt = {});

/// O_H count of the unsplit, unamplified encoding (alpha = d L12) under the
/// single-term series, for contrast with simulate_sparse.
uint64_t dense_queries(const oracles::OracleSet &o, double t, double eps, double l12 = 0);

}  // namespace hamsim::sparsesim

#endif
