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

#include "hamsim/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>

#include "hamsim/numerics.hpp"

namespace hamsim::costmodel {

double lg(double x) {
    return std::log2(std::max(x, 2.0));
}

static void require(bool ok, const char *msg) {
    if (!ok) {
        throw PreconditionError(msg);
    }
}

CostReport cost_single(double t, double alpha, double c_a, double eps, const Constants &k) {
    require(t >= 0 && alpha >= 0 && c_a > 0 && eps > 0, "cost_single: need t, alpha >= 0 and C_A, eps > 0");
    CostReport r{"single", {{"t", t}, {"alpha", alpha}, {"C", c_a}, {"eps", eps}}, 0, 0, k};
    r.queries = k.single * (t * alpha + 1) * c_a * lg(t * alpha / eps);
    return r;
}

CostReport cost_interaction(double t, double alpha_a, double alpha_b, double c_b, double nested, double eps,
                            const Constants &k) {
    require(t >= 0 && alpha_a >= 0 && alpha_b >= 0 && c_b >= 0 && nested >= 0 && eps > 0,
            "cost_interaction: negative input or eps <= 0");
    CostReport r{"interaction",
                 {{"t", t}, {"alpha_a", alpha_a}, {"alpha_b", alpha_b}, {"C", c_b}, {"nested", nested}, {"eps", eps}},
                 0,
                 0,
                 k};
    if (alpha_b == 0) {
        r.queries = nested;
        return r;
    }
    double l = lg(t * alpha_a / eps);
    r.queries = k.interaction * (t * alpha_b + 1) * (c_b + nested) * l * l;
    return r;
}

const char *recursion_form_name(RecursionForm f) {
    switch (f) {
        case RecursionForm::exact:
            return "recursion_exact";
        case RecursionForm::expanded:
            return "recursion_expanded";
        case RecursionForm::closed:
            return "recursion_closed";
    }
    return "?";
}

CostReport cost_recursion(std::vector<double> alphas, std::vector<double> costs, double t, double eps,
                          RecursionForm form, const Constants &k) {
    require(!alphas.empty() && alphas.size() == costs.size(), "cost_recursion: need matching nonempty alpha and C");
    require(t >= 0 && eps > 0, "cost_recursion: need t >= 0 and eps > 0");
    const size_t m = alphas.size();
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) { return alphas[i] > alphas[j]; });
    std::vector<double> a(m), c(m);
    for (size_t j = 0; j < m; j++) {
        a[j] = alphas[order[j]];
        c[j] = costs[order[j]];
        require(a[j] > 0 && c[j] > 0, "cost_recursion: alphas and costs must be positive");
    }
    CostReport r{recursion_form_name(form), {{"t", t}, {"eps", eps}, {"m", double(m)}, {"alpha1", a[0]}}, 0, 0, k};
    // The log argument t alpha_1 / eps is invariant under t -> 1/alpha_k, eps -> eps / (t alpha_k).
    const double l = lg(t * a[0] / eps);
    const double l_pow = std::pow(l, 2.0 * m - 1);
    switch (form) {
        case RecursionForm::closed: {
            double dot = 0;
            for (size_t j = 0; j < m; j++) {
                dot += a[j] * c[j];
            }
            r.queries = k.recursion * t * dot * l_pow;
            break;
        }
        case RecursionForm::expanded: {
            double s = 0;
            for (size_t j = 0; j < m; j++) {
                s += std::ldexp(a[j] / a[m - 1], static_cast<int>(m - 1 - j)) * c[j];
            }
            r.queries = k.recursion * (t * a[m - 1] + 1) * s * l_pow;
            break;
        }
        case RecursionForm::exact: {
            // level(j, time) nests the interaction step over the prefix of j terms.
            auto level = [&](auto &&self, size_t j, double time) -> double {
                if (j == 0) {
                    return k.single * (time * a[0] + 1) * c[0] * l;
                }
                return k.interaction * (time * a[j] + 1) * (c[j] + self(self, j - 1, 1 / a[j])) * l * l;
            };
            r.queries = level(level, m - 1, t);
            break;
        }
    }
    return r;
}

CostReport cost_sparse(double t, double d, double l12, double eps, int m, const Constants &k) {
    require(t >= 0 && d >= 1 && l12 > 0 && eps > 0 && m >= 1, "cost_sparse: need t >= 0, d >= 1, L12 > 0, eps > 0, m >= 1");
    CostReport r{"sparse", {{"t", t}, {"d", d}, {"L12", l12}, {"eps", eps}, {"m", double(m)}}, 0, 0, k};
    double base = t * std::sqrt(d) * l12;
    r.queries = k.sparse * base * std::pow(d, 1.0 / (4.0 * m)) * std::pow(lg(base / eps), k.sparse_log_power * m);
    return r;
}

double lower_bound(double t, double d, double l12) {
    return t * std::sqrt(d) * l12;
}

int optimal_m(double t, double d, double l12, double eps, int m_max, const Constants &k) {
    require(m_max >= 1, "optimal_m: m_max must be positive");
    int best = 1;
    double best_cost = cost_sparse(t, d, l12, eps, 1, k).queries;
    for (int m = 2; m <= m_max; m++) {
        double c = cost_sparse(t, d, l12, eps, m, k).queries;
        if (c < best_cost) {
            best = m;
            best_cost = c;
        }
    }
    return best;
}

CostReport cost_corollaries(double d, double eps, double kappa, const Constants &k) {
    require(d >= 1 && eps > 0 && kappa >= 1, "cost_corollaries: need d >= 1, eps > 0, kappa >= 1");
    const double t = M_PI / 2;
    double e = eps / kappa;
    int m = optimal_m(t, d, 1.0, e, 12, k);
    auto inner = cost_sparse(t, d, 1.0, e, m, k);
    CostReport r{kappa == 1 ? "unitary" : "unitary_composed",
                 {{"t", t}, {"d", d}, {"eps", eps}, {"kappa", kappa}, {"m", double(m)}},
                 kappa * inner.queries,
                 0,
                 k};
    return r;
}

void attach_gates(CostReport &report, double n, int b) {
    require(n >= 1 && b >= 1, "attach_gates: need N >= 1 and b >= 1");
    report.inputs["N"] = n;
    report.inputs["b"] = b;
    report.gates = report.queries * (std::log2(n) + std::pow(b, report.constants.gate_exponent));
}

void write_csv_header(std::ostream &out) {
    out << "formula,t,d,eps,m,value\n";
}

void write_csv_row(std::ostream &out, const CostReport &r) {
    auto field = [&](const char *key) {
        auto it = r.inputs.find(key);
        if (it != r.inputs.end()) {
            out << std::setprecision(17) << it->second;
        }
    };
    out << r.formula << ',';
    field("t");
    out << ',';
    field("d");
    out << ',';
    field("eps");
    out << ',';
    field("m");
    out << ',' << std::setprecision(17) << r.queries << '\n';
}

std::vector<CostReport> sweep_d(double t, double l12, double eps, double d_max, const Constants &k) {
    std::vector<CostReport> rows;
    for (double d = 4; d <= d_max; d *= 2) {
        rows.push_back(cost_sparse(t, d, l12, eps, optimal_m(t, d, l12, eps, 12, k), k));
    }
    return rows;
}

}  // namespace hamsim::costmodel
