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

#ifndef HAMSIM_COSTMODEL_HPP
#define HAMSIM_COSTMODEL_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace hamsim::costmodel {

/// Multiplicative constants of the asymptotic forms. All default to 1.
struct Constants {
    double single = 1;
    double interaction = 1;
    double recursion = 1;
    double sparse = 1;
    /// Exponent multiplier k in log^{k m}; the sparse form uses log^{2m}.
    double sparse_log_power = 2;
    /// Gate overhead per query is log2(N) + b^gate_exponent.
    double gate_exponent = 2.5;
};

struct CostReport {
    std::string formula;
    /// Named inputs (t, d, eps, alpha, C, m, kappa, ...).
    std::map<std::string, double> inputs;
    double queries = 0;
    /// Zero unless a bit width b and dimension were supplied.
    double gates = 0;
    Constants constants;
};

/// log2(max(x, 2)).
double lg(double x);

/// (t alpha + 1) C_A log(t alpha / eps).
CostReport cost_single(double t, double alpha, double c_a, double eps, const Constants &k = {});

/// (t alpha_B + 1)(C_B + nested) log^2(t alpha_A / eps); alpha_B = 0 returns nested.
CostReport cost_interaction(double t, double alpha_a, double alpha_b, double c_b, double nested, double eps,
                            const Constants &k = {});

enum class RecursionForm {
    /// Nested evaluation of the single-term base and the interaction step.
    exact,
    /// (t alpha_m + 1) log^{2m-1} sum_j 2^{m-j} (alpha_j / alpha_m) C_j.
    expanded,
    /// t <alpha, C> log^{2m-1}(t alpha_1 / eps).
    closed,
};

const char *recursion_form_name(RecursionForm f);

/// Terms are sorted by alpha descending internally.
CostReport cost_recursion(std::vector<double> alphas, std::vector<double> costs, double t, double eps,
                          RecursionForm form = RecursionForm::exact, const Constants &k = {});

/// t sqrt(d) L12 d^{1/(4m)} log^{2m}(t sqrt(d) L12 / eps).
CostReport cost_sparse(double t, double d, double l12, double eps, int m, const Constants &k = {});

/// t sqrt(d) L12, the lower-bound line.
double lower_bound(double t, double d, double l12);

/// Minimizer of cost_sparse over m in [1, m_max]; ties go to the smaller m.
int optimal_m(double t, double d, double l12, double eps, int m_max = 12, const Constants &k = {});

/// Unitary simulation at t = pi/2 with unit column norms, multiplied by kappa at eps / kappa.
CostReport cost_corollaries(double d, double eps, double kappa, const Constants &k = {});

/// Fills report.gates = queries (log2 n + b^gate_exponent).
void attach_gates(CostReport &report, double n, int b);

/// One `formula,t,d,eps,m,value` row per report; missing inputs print as empty fields.
void write_csv_header(std::ostream &out);
void write_csv_row(std::ostream &out, const CostReport &r);

/// Rows for d = 4, 8, ..., d_max at m = optimal_m(d).
std::vector<CostReport> sweep_d(double t, double l12, double eps, double d_max, const Constants &k = {});

}  // namespace hamsim::costmodel

#endif
