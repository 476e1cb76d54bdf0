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

#include "hamsim/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hamsim::recursion {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    return (m + m.adjoint()) * cplx(0.5);
}

ComplexMatrix power(ComplexMatrix base, size_t e) {
    ComplexMatrix out = ComplexMatrix::identity(base.rows());
    while (e > 0) {
        if (e & 1) {
            out = out * base;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return out;
}

void check_eps(double eps) {
    if (!(eps > 0 && eps < 1)) {
        throw PreconditionError("simulation: eps must lie in (0, 1)");
    }
}

void note(LevelReport *s, double eps) {
    if (s == nullptr) {
        return;
    }
    s->invocations++;
    s->min_eps = s->min_eps == 0 ? eps : std::min(s->min_eps, eps);
}

}  // namespace

int jacobi_anger_order(double tau, double eps) {
    check_eps(eps);
    tau = std::abs(tau);
    const int kmax = static_cast<int>(std::ceil(1.5 * tau)) + 60;
    auto j = numerics::bessel_j(kmax, tau);
    // tail[q] = sum_{k > q} 2 |J_k|, accumulated from the top.
    double tail = 0;
    int q = kmax;
    for (int k = kmax; k >= 1; k--) {
        if (tail + 2 * std::abs(j[k]) > eps) {
            break;
        }
        tail += 2 * std::abs(j[k]);
        q = k - 1;
    }
    return q;
}

CostVector application_cost(const BlockEncoding &enc) {
    CostVector c = enc.cost;
    c[oracles::names::encoding(enc.label)] = 1;
    return c;
}

Evolution single_evolution(const BlockEncoding &enc, double t, double eps, LevelReport *stats) {
    check_eps(eps);
    if (t < 0) {
        throw PreconditionError("simulate_single: t must be non-negative");
    }
    note(stats, eps);
    const size_t n = enc.system_dim;
    const double tau = t * enc.alpha;
    Evolution ev;
    if (tau == 0) {
        ev.op = ComplexMatrix::identity(n);
        return ev;
    }
    const int q = jacobi_anger_order(tau, eps);
    auto j = numerics::bessel_j(std::max(q, 1), tau);
    const ComplexMatrix x = hermitian_part(enc.encoded_block());
    // e^{-i tau x} = J_0 + 2 sum_k (-i)^k J_k T_k(x).
    ComplexMatrix prev = ComplexMatrix::identity(n), cur = x;
    ComplexMatrix out = prev * cplx(j[0]);
    const cplx minus_i(0, -1);
    cplx phase = 1;
    for (int k = 1; k <= q; k++) {
        phase *= minus_i;
        out += cur * (2.0 * phase * j[k]);
        if (k < q) {
            ComplexMatrix next = x * cur;
            next *= 2.0;
            next -= prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
    }
    ev.op = std::move(out);
    oracles::add_cost(ev.cost, application_cost(enc), static_cast<uint64_t>(q));
    if (stats != nullptr) {
        stats->max_degree = std::max(stats->max_degree, q);
    }
    return ev;
}

Evolution pair_evolution(const Provider &provider_a, double alpha_a, const BlockEncoding &enc_b, double t, double eps,
                         double c_m, LevelReport *stats) {
    check_eps(eps);
    if (t < 0) {
        throw PreconditionError("simulate_pair: t must be non-negative");
    }
    const double alpha_b = enc_b.alpha;
    if (alpha_a < alpha_b) {
        std::ostringstream ss;
        ss << "simulate_pair: needs alpha_A >= alpha_B, got " << alpha_a << " < " << alpha_b;
        throw PreconditionError(ss.str());
    }
    note(stats, eps);
    const size_t n = enc_b.system_dim;
    if (t == 0) {
        return Evolution{ComplexMatrix::identity(n), {}};
    }
    const ComplexMatrix b = hermitian_part(enc_b.matrix());
    if (b.max_abs() == 0) {
        return provider_a(t, eps);
    }
    const size_t slices = static_cast<size_t>(std::ceil(2 * alpha_b * t - 1e-12));
    const double tau = t / static_cast<double>(slices);
    const double eps_slice = eps / static_cast<double>(slices);
    auto p = dyson::plan(tau, eps_slice / 2, alpha_a, alpha_b, c_m);
    const int nbits = dyson::grid_bits(p.M);
    p.provider_eps = nbits > 0 ? eps_slice / 4 / (2 * nbits) : eps_slice / 4;
    auto frame = dyson::provider_frame(ComplexMatrix(), b, alpha_a, alpha_b, provider_a);
    auto dy = dyson::run_dyson(frame, p, application_cost(enc_b));
    Evolution outer = provider_a(tau, eps_slice / 4);
    Evolution ev;
    ev.op = power(outer.op * dy.op, slices);
    oracles::add_cost(ev.cost, outer.cost, slices);
    oracles::add_cost(ev.cost, dy.cost, slices);
    if (stats != nullptr) {
        stats->max_slices = std::max(stats->max_slices, slices);
        stats->max_grid = std::max(stats->max_grid, p.M);
        stats->max_order = std::max(stats->max_order, p.K);
    }
    return ev;
}

static double measure(const ComplexMatrix &op, const ComplexMatrix &h, double t) {
    return numerics::spectral_norm(op - numerics::expm_i(h, t));
}

SimResult simulate_single(const BlockEncoding &enc, double t, double eps) {
    SimResult r;
    r.t = t;
    r.eps = eps;
    LevelReport lr;
    lr.level = 1;
    lr.label = enc.label;
    lr.alpha = enc.alpha;
    auto ev = single_evolution(enc, t, eps, &lr);
    r.op = std::move(ev.op);
    r.ledger = std::move(ev.cost);
    lr.queries = r.ledger.count(oracles::names::encoding(enc.label)) ? r.ledger.at(oracles::names::encoding(enc.label)) : 0;
    r.levels.push_back(lr);
    r.measured_error = measure(r.op, hermitian_part(enc.matrix()), t);
    return r;
}

SimResult simulate_pair(const Provider &provider_a, const ComplexMatrix &a_ref, double alpha_a,
                        const BlockEncoding &enc_b, double t, double eps, double c_m) {
    SimResult r;
    r.t = t;
    r.eps = eps;
    LevelReport lr;
    lr.level = 2;
    lr.label = enc_b.label;
    lr.alpha = enc_b.alpha;
    auto ev = pair_evolution(provider_a, alpha_a, enc_b, t, eps, c_m, &lr);
    r.op = std::move(ev.op);
    r.ledger = std::move(ev.cost);
    auto key = oracles::names::encoding(enc_b.label);
    lr.queries = r.ledger.count(key) ? r.ledger.at(key) : 0;
    r.levels.push_back(lr);
    r.measured_error = measure(r.op, a_ref + hermitian_part(enc_b.matrix()), t);
    return r;
}

SimResult simulate_stack(std::vector<BlockEncoding> terms, double t, double eps, const StackOptions &opt) {
    check_eps(eps);
    if (terms.empty()) {
        throw PreconditionError("simulate_stack: empty stack");
    }
    const size_t n = terms[0].system_dim;
    for (const auto &e : terms) {
        if (e.system_dim != n) {
            throw PreconditionError("simulate_stack: terms act on different dimensions");
        }
        if (!(e.alpha > 0)) {
            throw PreconditionError("simulate_stack: every alpha must be positive");
        }
    }
    for (size_t i = 0; i < terms.size(); i++) {
        for (size_t j = i + 1; j < terms.size(); j++) {
            if (terms[i].label == terms[j].label) {
                throw PreconditionError("simulate_stack: duplicate term label '" + terms[i].label + "'");
            }
        }
    }
    std::stable_sort(terms.begin(), terms.end(),
                     [](const BlockEncoding &a, const BlockEncoding &b) { return a.alpha > b.alpha; });
    const size_t m = terms.size();
    std::vector<LevelReport> levels(m);
    for (size_t k = 0; k < m; k++) {
        levels[k].level = static_cast<int>(k + 1);
        levels[k].label = terms[k].label;
        levels[k].alpha = terms[k].alpha;
    }
    // providers[k] simulates H_1 + ... + H_{k+1}.
    std::vector<Provider> providers(m);
    providers[0] = [&terms, &levels](double s, double e) { return single_evolution(terms[0], s, e, &levels[0]); };
    double alpha_prefix = terms[0].alpha;
    for (size_t k = 1; k < m; k++) {
        const double alpha_a = alpha_prefix;
        providers[k] = [&terms, &levels, &providers, k, alpha_a, c_m = opt.c_m](double s, double e) {
            return pair_evolution(providers[k - 1], alpha_a, terms[k], s, e, c_m, &levels[k]);
        };
        alpha_prefix += terms[k].alpha;
    }
    Evolution ev = providers[m - 1](t, eps);

    SimResult r;
    r.t = t;
    r.eps = eps;
    r.op = std::move(ev.op);
    r.ledger = std::move(ev.cost);
    for (auto &l : levels) {
        auto key = oracles::names::encoding(l.label);
        l.queries = r.ledger.count(key) ? r.ledger.at(key) : 0;
    }
    r.levels = std::move(levels);
    if (opt.measure) {
        ComplexMatrix h(n, n);
        for (const auto &e : terms) {
            h += hermitian_part(e.matrix());
        }
        r.measured_error = measure(r.op, h, t);
    }
    return r;
}

}  // namespace hamsim::recursion
