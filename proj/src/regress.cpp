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

#include "hamsim/regress.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <type_traits>

#include "hamsim/blockenc.hpp"
#include "hamsim/costmodel.hpp"
#include "hamsim/dyson.hpp"
#include "hamsim/gadgets.hpp"
#include "hamsim/instances.hpp"
#include "hamsim/recursion.hpp"
#include "hamsim/sparsesim.hpp"

namespace hamsim::regress {

using numerics::ComplexMatrix;
using numerics::SplitMix64;
using report::num;

Check at_most(const std::string &name, double measured, double allowed) {
    return {name, measured, Relation::at_most, allowed, measured <= allowed};
}

Check at_least(const std::string &name, double measured, double allowed) {
    return {name, measured, Relation::at_least, allowed, measured >= allowed};
}

Check info(const std::string &name, double measured) {
    return {name, measured, Relation::info, 0, true};
}

const char *relation_symbol(Relation r) {
    switch (r) {
        case Relation::at_most:
            return "<=";
        case Relation::at_least:
            return ">=";
        case Relation::info:
            return "info";
    }
    return "?";
}

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

std::string SuiteResult::failures() const {
    std::string out;
    for (const auto &c : checks) {
        if (!c.pass) {
            out += (out.empty() ? "" : ", ") + c.name;
        }
    }
    return out;
}

namespace {

/// Comma-joined CSV line builder.
class Csv {
   public:
    explicit Csv(const std::string &header) {
        out_ << header << '\n';
    }
    template <typename... Ts>
    void row(const Ts &...vals) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(vals), first = false), ...);
        out_ << '\n';
    }
    std::string str() const {
        return out_.str();
    }

   private:
    static std::string cell(double v) {
        return num(v);
    }
    template <typename I, typename = std::enable_if_t<std::is_integral_v<I>>>
    static std::string cell(I v) {
        return std::to_string(v);
    }
    static std::string cell(const std::string &v) {
        return v;
    }
    static std::string cell(const char *v) {
        return v;
    }
    std::ostringstream out_;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::shared_ptr<oracles::SparseHermitian> random_instance(size_t dim, size_t d, uint64_t seed) {
    instances::RandomSparseSpec spec;
    spec.dim = dim;
    spec.sparsity = d;
    spec.seed = seed;
    return std::make_shared<oracles::SparseHermitian>(instances::random_sparse(spec));
}

ComplexMatrix hermitian_with_norm(size_t n, SplitMix64 &rng, double norm) {
    auto h = numerics::random_hermitian(n, rng);
    return h * cplx(norm / numerics::spectral_norm(h));
}

double max_column_sum(const std::vector<double> &s) {
    return *std::max_element(s.begin(), s.end());
}

// Norm chain on random sparse instances.
SuiteResult suite_norms(uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r;
    SplitMix64 rng(seed);
    Csv csv("instance,N,d,max,one_to_two,spectral,induced_one,min_slack");
    double worst = INFINITY;
    const int count = 1000;
    for (int i = 0; i < count; i++) {
        size_t n = size_t{8} << (i % 4);
        size_t d = 1 + rng.below(8);
        auto h = random_instance(n, d, rng.next())->to_dense();
        auto nb = numerics::compute_norms(h);
        double dd = static_cast<double>(d);
        double chain[] = {nb.max_norm,
                          nb.one_to_two,
                          nb.spectral,
                          nb.induced_one,
                          std::sqrt(dd) * nb.one_to_two,
                          std::sqrt(dd * nb.max_norm * nb.induced_one),
                          dd * nb.max_norm};
        double slack = INFINITY;
        for (int k = 0; k + 1 < 7; k++) {
            slack = std::min(slack, chain[k + 1] - chain[k]);
        }
        worst = std::min(worst, slack);
        csv.row(i, n, d, nb.max_norm, nb.one_to_two, nb.spectral, nb.induced_one, slack);
    }
    r.checks.push_back(at_least("instances", count, 1000));
    r.checks.push_back(at_least("min_chain_slack", worst, -1e-9));
    r.seconds = since(t0);
    r.checks.push_back(at_most("runtime_s", r.seconds, 60));
    r.csv = csv.str();
    return r;
}

// Un-amplified and exactly amplified encodings, plus the amplification closed form.
SuiteResult suite_blockenc(uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r;
    SplitMix64 rng(seed);
    Csv csv("instance,N,d,residual_plain,C,alpha_amplified,residual_amplified,amplify_error");
    double worst_plain = 0, worst_amp = 0, worst_alpha = 0, worst_sin = 0;
    const int count = 200;
    const double lambda = 1.0;
    for (int i = 0; i < count; i++) {
        size_t n = size_t{4} << (i % 4);
        size_t d = 1 + rng.below(std::min<size_t>(8, n));
        auto o = oracles::OracleSet::build(random_instance(n, d, rng.next()));
        auto h = o.materialize();
        auto pair = blockenc::build_stateprep(o, lambda);
        double res_plain = blockenc::verify(blockenc::to_encoding(pair), h);

        double l1 = max_column_sum(blockenc::column_sums(o));
        int c = static_cast<int>(std::floor(std::sqrt(static_cast<double>(d) * lambda / l1) + 1e-12));
        if (c % 2 == 0) {
            c--;
        }
        blockenc::AmplificationSpec spec;
        spec.factor = c;
        auto enc = blockenc::amplitude_multiply(pair, spec);
        double res_amp = blockenc::verify(enc, h);
        double alpha_dev = std::abs(enc.alpha - static_cast<double>(d) * lambda / (c * c));

        auto amp = blockenc::amplitude_amplify(pair, c);
        auto before = blockenc::good_amplitudes(pair, pair.col);
        auto after = blockenc::good_amplitudes(amp, amp.col);
        double sin_err = 0;
        for (size_t k = 0; k < n; k++) {
            sin_err = std::max(sin_err, std::abs(after[k] - std::sin(c * std::asin(before[k]))));
        }
        worst_plain = std::max(worst_plain, res_plain);
        worst_amp = std::max(worst_amp, res_amp);
        worst_alpha = std::max(worst_alpha, alpha_dev);
        worst_sin = std::max(worst_sin, sin_err);
        csv.row(i, n, d, res_plain, c, enc.alpha, res_amp, sin_err);
    }
    r.checks.push_back(at_most("residual_unamplified", worst_plain, 1e-9));
    r.checks.push_back(at_most("residual_amplified", worst_amp, 1e-8));
    r.checks.push_back(at_most("alpha_deviation", worst_alpha, 1e-12));
    r.checks.push_back(at_most("amplify_closed_form", worst_sin, 1e-9));
    r.seconds = since(t0);
    r.checks.push_back(at_most("runtime_s", r.seconds, 120));
    r.csv = csv.str();
    return r;
}

// (I+D) H (I+D) against the injected delta.
SuiteResult suite_amplify(uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r;
    SplitMix64 rng(seed);
    Csv csv("instance,N,d,delta,profile,error,bound");
    double worst_excess = -INFINITY;
    const int count = 50;
    for (int i = 0; i < count; i++) {
        size_t n = size_t{4} << (i % 3);
        size_t d = 1 + rng.below(std::min<size_t>(6, n));
        auto o = oracles::OracleSet::build(random_instance(n, d, rng.next()));
        auto h = o.materialize();
        double hn = numerics::spectral_norm(h);
        auto pair = blockenc::build_stateprep(o, 1.0);
        double l1 = max_column_sum(blockenc::column_sums(o));
        uint64_t inst_seed = rng.next();
        for (double delta : {1e-2, 1e-4}) {
            for (auto profile : {blockenc::DeltaProfile::alternating, blockenc::DeltaProfile::random}) {
                blockenc::AmplificationSpec spec;
                spec.factor = std::sqrt(static_cast<double>(d) / l1) / (1 + delta);
                spec.delta = delta;
                spec.profile = profile;
                spec.seed = inst_seed;
                auto enc = blockenc::amplitude_multiply(pair, spec);
                double err = numerics::spectral_norm(enc.matrix() - h);
                double bound = hn * (2 * delta + delta * delta);
                worst_excess = std::max(worst_excess, err - bound);
                csv.row(i, n, d, delta, profile == blockenc::DeltaProfile::random ? "random" : "alternating", err,
                        bound);
            }
        }
    }
    r.checks.push_back(at_most("error_minus_bound", worst_excess, 1e-12));
    r.seconds = since(t0);
    r.csv = csv.str();
    return r;
}

// Exhaustive converter check for every format with b <= 10.
SuiteResult suite_gadget(uint64_t) {
    auto t0 = Clock::now();
    SuiteResult r;
    Csv csv("p,m,n,lambda,inputs,amplitude_error,garbage_error,gates");
    double amp = 0, garb = 0, drift = 0;
    size_t formats = 0, gate_mismatch = 0;
    for (int b = 1; b <= 10; b++) {
        for (int p = 0; p < b; p++) {
            for (int m = 0; p + m < b; m++) {
                oracles::FixedPointFormat f{p, m, b - 1 - p - m};
                std::vector<double> lambdas{std::ldexp(1.0, m)};
                if (b <= 8) {
                    lambdas.push_back(3 * std::ldexp(1.0, m));
                }
                for (double lambda : lambdas) {
                    auto rep = gadgets::exhaustive_check(f, lambda);
                    amp = std::max(amp, rep.amplitude_error);
                    garb = std::max(garb, rep.garbage_error);
                    drift = std::max(drift, rep.max_norm_drift);
                    gate_mismatch += rep.multi_qubit_gates != gadgets::gate_count(gadgets::GadgetLayout::make(f));
                    csv.row(p, m, f.n, lambda, rep.inputs, rep.amplitude_error, rep.garbage_error,
                            rep.multi_qubit_gates);
                }
                formats++;
            }
        }
    }
    // Second differences of the gate count along each register width.
    double curvature = 0;
    auto gc = [](int p, int m, int n) { return gadgets::gate_count(gadgets::GadgetLayout::make({p, m, n})); };
    for (int a = 0; a <= 20; a++) {
        for (int c = 1; c <= 18; c++) {
            curvature = std::max<double>(curvature, std::abs(gc(c - 1, a, 1) - 2 * gc(c, a, 1) + gc(c + 1, a, 1)));
            curvature = std::max<double>(curvature, std::abs(gc(a, c - 1, 1) - 2 * gc(a, c, 1) + gc(a, c + 1, 1)));
            curvature = std::max<double>(curvature, std::abs(gc(a, 1, c - 1) - 2 * gc(a, 1, c) + gc(a, 1, c + 1)));
        }
    }
    r.checks.push_back(at_least("formats", static_cast<double>(formats), 220));
    r.checks.push_back(at_most("amplitude_error", amp, 1e-12));
    r.checks.push_back(at_most("garbage_error", garb, 1e-12));
    // Sanity bound on rounding across up to 2^22 amplitudes; not an acceptance tolerance.
    r.checks.push_back(at_most("norm_drift", drift, 1e-10));
    r.checks.push_back(at_most("gate_count_mismatch", static_cast<double>(gate_mismatch), 0));
    r.checks.push_back(at_most("gate_count_second_difference", curvature, 0));
    r.seconds = since(t0);
    r.checks.push_back(at_most("runtime_s", r.seconds, 300));
    r.csv = csv.str();
    return r;
}

// One interaction-picture slice against the exact propagator.
SuiteResult suite_dyson(uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r;
    SplitMix64 rng(seed);
    Csv csv("frame,alpha_b,tau,eps,M,K,error");
    double worst_ratio = 0, min_gain = INFINITY;
    for (int i = 0; i < 6; i++) {
        double alpha_b = 0.5 + rng.uniform();
        auto a = hermitian_with_norm(4, rng, 1);
        auto b = hermitian_with_norm(4, rng, alpha_b);
        double tau = (0.25 + 0.25 * rng.uniform()) / alpha_b;
        auto f = dyson::exact_frame(a, b, 1, alpha_b);
        auto exact = dyson::exact_propagator(a, b, tau);
        for (double eps : {1e-4, 1e-8}) {
            auto p = dyson::plan(tau, eps, 1, alpha_b);
            double err = numerics::spectral_norm(dyson::truncated_dyson(f, p) - exact);
            worst_ratio = std::max(worst_ratio, err / eps);
            csv.row(i, alpha_b, tau, eps, p.M, p.K, err);
        }
        // Truncation far below the grid error: doubling M should halve it.
        auto p = dyson::plan(tau, 1e-4, 1, alpha_b);
        p.K = 16;
        double prev = -1;
        for (size_t m : {25, 50, 100, 200}) {
            p.M = m;
            double err = numerics::spectral_norm(dyson::truncated_dyson(f, p) - exact);
            if (prev > 0) {
                min_gain = std::min(min_gain, prev / err);
            }
            prev = err;
            csv.row(i, alpha_b, tau, 0.0, m, p.K, err);
        }
    }
    r.checks.push_back(at_most("error_over_eps", worst_ratio, 1));
    r.checks.push_back(at_least("doubling_gain", min_gain, 1.8));
    r.seconds = since(t0);
    r.csv = csv.str();
    return r;
}

uint64_t encoding_total(const oracles::CostVector &ledger) {
    uint64_t total = 0;
    for (const auto &[k, v] : ledger) {
        if (k.rfind("enc[", 0) == 0) {
            total += v;
        }
    }
    return total;
}

// Term stacks of one to three levels against expm_i.
SuiteResult suite_recursion(uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r;
    SplitMix64 rng(seed);
    Csv csv("m,N,t,eps,error,ledger_total,closed_form");
    double worst_ratio = 0, worst_ledger = 0;
    for (int m = 1; m <= 3; m++) {
        for (size_t n : {4, 8}) {
            for (double t : {0.5, 1.0}) {
                std::vector<blockenc::BlockEncoding> terms;
                std::vector<double> alphas, ones;
                for (int j = 0; j < m; j++) {
                    double a = 0.2 + rng.uniform();
                    terms.push_back(blockenc::encode_hermitian(hermitian_with_norm(n, rng, a), a,
                                                               "H" + std::to_string(j + 1)));
                    alphas.push_back(a);
                    ones.push_back(1);
                }
                for (double eps : {1e-3, 1e-5}) {
                    auto s = recursion::simulate_stack(terms, t, eps);
                    double closed =
                        costmodel::cost_recursion(alphas, ones, t, eps, costmodel::RecursionForm::closed).queries;
                    uint64_t total = encoding_total(s.ledger);
                    worst_ratio = std::max(worst_ratio, s.measured_error / eps);
                    worst_ledger = std::max(worst_ledger, total / closed);
                    csv.row(m, n, t, eps, s.measured_error, total, closed);
                }
            }
        }
    }
    r.checks.push_back(at_most("error_over_eps", worst_ratio, 1));
    r.checks.push_back(at_most("ledger_over_closed_form", worst_ledger, 8));
    r.seconds = since(t0);
    r.checks.push_back(at_most("runtime_s", r.seconds, 600));
    r.csv = csv.str();
    return r;
}

/// Random instance rescaled so that ||H||_{1->2} sits just below `norm`.
std::shared_ptr<oracles::SparseHermitian> unit_norm_instance(size_t dim, size_t d, uint64_t seed, double norm) {
    return std::make_shared<oracles::SparseHermitian>(
        instances::rescale_one_to_two(*random_instance(dim, d, seed), norm));
}

// Full threshold pipeline, plus the O_H scaling fit in d.
SuiteResult suite_sparse(uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r;
    SplitMix64 rng(seed);
    Csv csv("kind,N,d,m,t,eps,error,o_h,o_f,cost_sparse,dense_o_h");
    double worst_ratio = 0, worst_cost = 0;
    uint64_t decomposition_mismatch = 0;
    const double eps = 1e-4;
    for (int i = 0; i < 20; i++) {
        size_t n = size_t{8} << (i % 3);
        size_t d = 2 + rng.below(std::min<size_t>(7, n - 1));
        double t = i % 2 ? 1.0 : 0.5;
        auto o = oracles::OracleSet::build(random_instance(n, d, rng.next()));
        sparsesim::SparseOptions opt;
        opt.m = 1 + i % 3;
        auto s = sparsesim::simulate_sparse(o, t, eps, opt);
        uint64_t sum = 0;
        for (const auto &tr : s.terms) {
            if (!tr.dropped) {
                sum += s.sim.ledger.at(oracles::names::encoding(tr.label)) * tr.cost.at(oracles::names::O_H);
            }
        }
        decomposition_mismatch += sum != s.o_h;
        double bound = costmodel::cost_sparse(t, static_cast<double>(d), s.l12, eps, opt.m).queries;
        worst_ratio = std::max(worst_ratio, s.sim.measured_error / eps);
        worst_cost = std::max(worst_cost, s.o_h / bound);
        csv.row("instance", n, d, opt.m, t, eps, s.sim.measured_error, s.o_h, s.o_f, bound,
                sparsesim::dense_queries(o, t, eps, s.l12));
    }
    std::vector<double> ds, oh, dense;
    double fit_err = 0;
    for (size_t d : {4, 8, 16, 32}) {
        auto o = oracles::OracleSet::build(unit_norm_instance(64, d, seed * 7919 + d, 1.0));
        sparsesim::SparseOptions opt;
        opt.l12 = 1.0;
        auto s = sparsesim::simulate_sparse(o, 1.0, eps, opt);
        uint64_t dq = sparsesim::dense_queries(o, 1.0, eps, 1.0);
        ds.push_back(static_cast<double>(d));
        oh.push_back(static_cast<double>(s.o_h));
        dense.push_back(static_cast<double>(dq));
        fit_err = std::max(fit_err, s.sim.measured_error / eps);
        double bound = costmodel::cost_sparse(1.0, static_cast<double>(d), 1.0, eps, s.schedule.m).queries;
        csv.row("scaling", size_t{64}, d, s.schedule.m, 1.0, eps, s.sim.measured_error, s.o_h, s.o_f, bound, dq);
    }
    r.checks.push_back(at_most("error_over_eps", worst_ratio, 1));
    r.checks.push_back(at_most("ledger_decomposition_mismatches", static_cast<double>(decomposition_mismatch), 0));
    r.checks.push_back(at_most("o_h_over_cost_sparse", worst_cost, 8));
    r.checks.push_back(at_most("scaling_error_over_eps", fit_err, 1));
    r.checks.push_back(at_most("o_h_exponent_in_d", report::loglog_slope(ds, oh), 0.75));
    r.checks.push_back(info("dense_o_h_exponent_in_d", report::loglog_slope(ds, dense)));
    r.seconds = since(t0);
    r.csv = csv.str();
    return r;
}

double fidelity(const std::vector<cplx> &target, const std::vector<cplx> &state) {
    cplx s = 0;
    for (size_t i = 0; i < state.size(); i++) {
        s += std::conj(target[i]) * state[i];
    }
    return std::norm(s);
}

/// All rows with at most one set bit, enumerated as base-(m+1) digits.
std::vector<std::vector<std::vector<int>>> promise_inputs(int n, int m) {
    std::vector<std::vector<std::vector<int>>> out;
    size_t total = 1;
    for (int j = 0; j < n; j++) {
        total *= static_cast<size_t>(m + 1);
    }
    for (size_t code = 0; code < total; code++) {
        std::vector<std::vector<int>> x(n, std::vector<int>(m, 0));
        size_t c = code;
        for (int j = 0; j < n; j++) {
            size_t digit = c % (m + 1);
            c /= (m + 1);
            if (digit > 0) {
                x[j][digit - 1] = 1;
            }
        }
        out.push_back(std::move(x));
    }
    return out;
}

// Perfect-transfer dynamics of the lower-bound instances.
SuiteResult suite_lowerbound(uint64_t) {
    auto t0 = Clock::now();
    SuiteResult r;
    Csv csv("kind,n,m_or,s,input,value,fidelity");
    double min_fid = 1, max_spread = 0;
    size_t runs = 0;
    for (int n = 1; n <= 6; n++) {
        for (int mask = 0; mask < (1 << n); mask++) {
            std::vector<int> x(n);
            int parity = 0;
            for (int j = 0; j < n; j++) {
                x[j] = (mask >> j) & 1;
                parity ^= x[j];
            }
            auto u = numerics::expm_i(instances::h_parity(n, x), n * M_PI / 2);
            double fid = std::norm(u(2 * n + parity, 0));
            min_fid = std::min(min_fid, fid);
            runs++;
            csv.row("parity", n, 0, 1, mask, parity, fid);
        }
    }
    for (int m = 1; m <= 6; m++) {
        for (int hot = -1; hot < m; hot++) {
            std::vector<int> x(m, 0);
            if (hot >= 0) {
                x[hot] = 1;
            }
            auto u = numerics::expm_i(instances::h_or(m, x), M_PI / 2);
            int value = hot >= 0;
            for (int k = 0; k < 2; k++) {
                std::vector<cplx> in(2 * m), want(2 * m);
                for (int l = 0; l < m; l++) {
                    in[k * m + l] = 1 / std::sqrt(double(m));
                    want[(k ^ value) * m + l] = 1 / std::sqrt(double(m));
                }
                double fid = fidelity(want, numerics::apply(u, in));
                min_fid = std::min(min_fid, fid);
                runs++;
                csv.row("or", 0, m, 1, hot + 1, value, fid);
            }
        }
    }
    for (int n = 1; n <= 8; n++) {
        for (int m = 1; n * m <= 8; m++) {
            auto inputs = promise_inputs(n, m);
            for (size_t code = 0; code < inputs.size(); code++) {
                int parity = 0;
                for (const auto &row : inputs[code]) {
                    for (int bit : row) {
                        parity ^= bit;
                    }
                }
                double lo = INFINITY, hi = 0;
                for (int s : {1, 2, 4}) {
                    instances::InstanceParams p{n, m, s, inputs[code]};
                    auto h = instances::h_parity_or(p);
                    auto u = numerics::expm_i(h, n * M_PI / (2 * s));
                    auto out = numerics::apply(u, instances::parity_or_state(p, 0, 0));
                    double fid = fidelity(instances::parity_or_state(p, n, parity), out);
                    min_fid = std::min(min_fid, fid);
                    double ratio = numerics::compute_norms(h).one_to_two / std::sqrt(double(s));
                    lo = std::min(lo, ratio);
                    hi = std::max(hi, ratio);
                    runs++;
                    csv.row("parity_or", n, m, s, code, parity, fid);
                }
                max_spread = std::max(max_spread, hi / lo - 1);
            }
        }
    }
    r.checks.push_back(info("runs", static_cast<double>(runs)));
    r.checks.push_back(at_least("min_fidelity", min_fid, 1 - 1e-9));
    r.checks.push_back(at_most("one_to_two_over_sqrt_s_spread", max_spread, 1e-9));
    r.seconds = since(t0);
    r.csv = csv.str();
    return r;
}

// [[0, U], [U^dagger, 0]] for random unitaries.
SuiteResult suite_dilate(uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r;
    SplitMix64 rng(seed);
    Csv csv("instance,N,evolution_error,square_error");
    double worst_evo = 0, worst_sq = 0;
    for (int i = 0; i < 100; i++) {
        size_t n = 1 + rng.below(8);
        auto h = instances::dilate_unitary(numerics::random_unitary(n, rng));
        double evo = numerics::spectral_norm(numerics::expm_i(h, M_PI / 2) + h * cplx(0, 1));
        double sq = numerics::spectral_norm(h * h - ComplexMatrix::identity(2 * n));
        worst_evo = std::max(worst_evo, evo);
        worst_sq = std::max(worst_sq, sq);
        csv.row(i, n, evo, sq);
    }
    r.checks.push_back(at_most("evolution_error", worst_evo, 1e-9));
    r.checks.push_back(at_most("square_error", worst_sq, 1e-9));
    r.seconds = since(t0);
    r.csv = csv.str();
    return r;
}

// Cost-model identities and the bound-level growth of the sparse formula.
SuiteResult suite_cost(uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r;
    SplitMix64 rng(seed);
    std::ostringstream table;
    costmodel::write_csv_header(table);
    size_t single_mismatch = 0;
    for (int i = 0; i < 50; i++) {
        double t = 3 * rng.uniform(), a = 0.1 + 4 * rng.uniform(), c = 1 + 9 * rng.uniform();
        double eps = std::pow(10.0, -1 - 9 * rng.uniform());
        double single = costmodel::cost_single(t, a, c, eps).queries;
        for (auto form : {costmodel::RecursionForm::exact, costmodel::RecursionForm::expanded}) {
            single_mismatch += costmodel::cost_recursion({a}, {c}, t, eps, form).queries != single;
        }
    }
    // Read the C coefficients of the two-term expansion off by linearity.
    double expansion_dev = 0;
    for (int i = 0; i < 20; i++) {
        double a2 = 0.1 + rng.uniform(), a1 = a2 * (1 + 5 * rng.uniform());
        double t = 0.2 + 2 * rng.uniform(), eps = std::pow(10.0, -2 - 6 * rng.uniform());
        auto e = [&](double c1, double c2) {
            return costmodel::cost_recursion({a1, a2}, {c1, c2}, t, eps, costmodel::RecursionForm::expanded).queries;
        };
        double base = e(1, 1);
        double coef1 = e(2, 1) - base, coef2 = e(1, 2) - base;
        double l = costmodel::lg(t * a1 / eps);
        expansion_dev = std::max(expansion_dev, std::abs(coef1 / coef2 - 2 * a1 / a2) / (2 * a1 / a2));
        expansion_dev = std::max(expansion_dev, std::abs(coef2 / ((t * a2 + 1) * l * l * l) - 1));
    }
    std::vector<double> ds, ratios;
    const double eps = 1e-6;
    for (double d = 4; d <= 4096; d *= 2) {
        int m = costmodel::optimal_m(1, d, 1, eps);
        auto rep = costmodel::cost_sparse(1, d, 1, eps, m);
        ds.push_back(d);
        ratios.push_back(rep.queries / costmodel::lower_bound(1, d, 1));
        costmodel::write_csv_row(table, rep);
    }
    r.checks.push_back(at_most("single_term_mismatches", static_cast<double>(single_mismatch), 0));
    r.checks.push_back(at_most("two_term_expansion_deviation", expansion_dev, 1e-12));
    r.checks.push_back(at_most("sparse_ratio_growth_exponent", report::loglog_slope(ds, ratios), 0.13));
    r.seconds = since(t0);
    r.csv = table.str();
    return r;
}

const std::map<std::string, std::function<SuiteResult(uint64_t)>> &registry() {
    static const std::map<std::string, std::function<SuiteResult(uint64_t)>> suites{
        {"norms", suite_norms},         {"blockenc", suite_blockenc},   {"amplify", suite_amplify},
        {"gadget", suite_gadget},       {"dyson", suite_dyson},         {"recursion", suite_recursion},
        {"sparse", suite_sparse},       {"lowerbound", suite_lowerbound}, {"dilate", suite_dilate},
        {"cost", suite_cost},
    };
    return suites;
}

}  // namespace

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{"norms",  "blockenc", "amplify",    "gadget", "dyson",
                                                "recursion", "sparse", "lowerbound", "dilate", "cost"};
    return names;
}

SuiteResult run_suite(const std::string &name, uint64_t seed) {
    if (name.empty()) {
        throw PreconditionError("regress: empty suite name; choose one of norms, blockenc, amplify, gadget, dyson, "
                                "recursion, sparse, lowerbound, dilate, cost");
    }
    auto it = registry().find(name);
    if (it == registry().end()) {
        throw PreconditionError("regress: unknown suite '" + name + "'");
    }
    auto r = it->second(seed);
    r.suite = name;
    r.seed = seed;
    return r;
}

report::Document to_document(const SuiteResult &r) {
    report::Document doc;
    doc.set("suite", "name", r.suite);
    doc.set("suite", "seed", std::to_string(r.seed));
    doc.set("suite", "passed", r.passed() ? "true" : "false");
    doc.set("suite", "seconds", r.seconds);
    for (const auto &c : r.checks) {
        std::string sec = "check." + c.name;
        doc.set(sec, "measured", c.measured);
        doc.set(sec, "relation", relation_symbol(c.relation));
        if (c.relation != Relation::info) {
            doc.set(sec, "allowed", c.allowed);
        }
        doc.set(sec, "pass", c.pass ? "true" : "false");
    }
    return doc;
}

}  // namespace hamsim::regress
