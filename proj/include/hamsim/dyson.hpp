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

#ifndef HAMSIM_DYSON_HPP
#define HAMSIM_DYSON_HPP

#include <functional>
#include <optional>

#include "hamsim/blockenc.hpp"
#include "hamsim/numerics.hpp"
#include "hamsim/oracles.hpp"

namespace hamsim::dyson {

using numerics::ComplexMatrix;
using oracles::CostVector;

/// An approximation of e^{-iAs} together with the queries it used.
struct Evolution {
    ComplexMatrix op;
    CostVector cost;
};

/// Returns e^{-iAs} within eps.
using Provider = std::function<Evolution(double s, double eps)>;

/// Exact e^{-iAs} from an eigendecomposition; each call charges cost_per_call.
Provider exact_provider(const ComplexMatrix &a, CostVector cost_per_call = {{oracles::names::EXP_A, 1}});

struct InteractionFrame {
    ComplexMatrix a;
    ComplexMatrix b;
    double alpha_a = 0;
    double alpha_b = 0;
    Provider provider;
    /// Set for exact frames; the series is then evaluated in A's eigenbasis.
    std::optional<numerics::EigenDecomposition> eig_a;
};

/// Frame with the exact provider. Rejects ||B|| > alpha_b or ||A|| > alpha_a.
InteractionFrame exact_frame(const ComplexMatrix &a, const ComplexMatrix &b, double alpha_a, double alpha_b);

/// Frame driven by an approximate provider (A is kept only for reference checks).
InteractionFrame provider_frame(const ComplexMatrix &a, const ComplexMatrix &b, double alpha_a, double alpha_b,
                                Provider provider);

/// H_I(s) = e^{iAs} B e^{-iAs}.
ComplexMatrix interaction_ham(const InteractionFrame &frame, double s);

struct DysonPlan {
    double tau = 0;
    double eps = 0;
    size_t M = 1;
    int K = 0;
    double alpha_a = 0;
    double alpha_b = 0;
    double alpha_prime = 0;
    double c_m = 1;
    /// (2 alpha_B tau)^{K+1} / (K+1)!, at most eps / 2.
    double truncation_bound = 0;
    /// Per-call budget for provider invocations (approximate frames).
    double provider_eps = 0;
};

/// M = ceil(c_M tau^2 (alpha' + alpha_B^2) / eps), K from the factorial remainder.
DysonPlan plan(double tau, double eps, double alpha_a, double alpha_b, double c_m = 1);

/// Bits needed to address grid points 0..M-1.
int grid_bits(size_t m);

struct DysonResult {
    ComplexMatrix op;
    /// K queries to the select unitary, each one U_B plus two of every binary power of e^{-iA tau/M}.
    CostVector cost;
    size_t provider_calls = 0;
};

/// Discrete truncated Dyson series by the prefix recurrence.
DysonResult run_dyson(const InteractionFrame &frame, const DysonPlan &p, const CostVector &cost_b = {});

ComplexMatrix truncated_dyson(const InteractionFrame &frame, const DysonPlan &p);

/// e^{iA tau} e^{-i(A+B) tau}.
ComplexMatrix exact_propagator(const ComplexMatrix &a, const ComplexMatrix &b, double tau);

/// (R^dagger x I)(I_d x U_B)(R x I) with R = sum_j |j><j| x e^{-iA j tau/M}. Needs M <= 8.
blockenc::BlockEncoding select_unitary(const InteractionFrame &frame, const DysonPlan &p,
                                       const blockenc::BlockEncoding &enc_b);

}  // namespace hamsim::dyson

#endif
