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

#include "hamsim/sparsesim.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hamsim/costmodel.hpp"

namespace hamsim::sparsesim {

namespace names = oracles::names;

int choose_m(double d) {
    if (!(d >= 1)) {
        throw PreconditionError("choose_m: d must be at least 1");
    }
    if (d <= 1) {
        return 1;
    }
    return std::max(1, static_cast<int>(std::lround(std::sqrt(std::log(d)) / 2)));
}

int brute_force_m(double d, double t, double l12, double eps) {
    return costmodel::optimal_m(t, d, l12, eps, 12);
}

ThresholdSchedule build_schedule(double l12, double d, int m, double t, double eps) {
    if (!(l12 > 0) || !(d >= 1) || m < 1 || !(t >= 0) || !(eps > 0)) {
        throw PreconditionError("build_schedule: need L12 > 0, d >= 1, m >= 1, t >= 0, eps > 0");
    }
    ThresholdSchedule s;
    s.m = m;
    s.d = d;
    s.gamma = 1.0 / (2 * m);
    s.l12 = l12;
    s.t = t;
    s.eps = eps;
    s.cutoffs.assign(m + 1, 0);
    for (int j = 1; j < m; j++) {
        s.cutoffs[j] = l12 * std::pow(d, 0.5 * j / m - 0.5);
    }
    s.cutoffs[m] = l12;
    s.one_norm.resize(m);
    s.one_norm[0] = std::sqrt(d) * l12;
    for (int j = 2; j <= m; j++) {
        s.one_norm[j - 1] = l12 * l12 / s.cutoffs[j - 1];
    }
    double delta = t == 0 ? std::numeric_limits<double>::infinity()
                          : kDeltaShare * eps / (m * t * std::sqrt(d) * l12);
    s.delta.assign(m, delta);
    return s;
}

static double max_column_sum(const std::vector<double> &sums) {
    double best = 0;
    for (double s : sums) {
        best = std::max(best, s);
    }
    return best;
}

SparseResult simulate_sparse(const oracles::OracleSet &o, double t, double eps, const SparseOptions &opt) {
    if (o.windowed()) {
        throw PreconditionError("simulate_sparse: expects the unwindowed oracle");
    }
    if (!(t >= 0) || !(eps > 0 && eps < 1)) {
        throw PreconditionError("simulate_sparse: need t >= 0 and 0 < eps < 1");
    }
    const ComplexMatrix h = o.materialize();
    const size_t n = o.dim();
    const double d = static_cast<double>(o.sparsity());
    auto norms = numerics::compute_norms(h);

    SparseResult res;
    res.l12 = opt.l12 > 0 ? opt.l12 : norms.one_to_two;
    if (norms.one_to_two > res.l12 * (1 + 1e-12)) {
        std::ostringstream ss;
        ss << "simulate_sparse: L12 = " << res.l12 << " below measured ||H||_{1->2} = " << norms.one_to_two;
        throw PreconditionError(ss.str());
    }
    res.sim.t = t;
    res.sim.eps = eps;
    if (res.l12 == 0) {
        // H = 0: nothing to encode.
        res.schedule = build_schedule(1, d, 1, t, eps);
        res.sim.op = ComplexMatrix::identity(n);
        return res;
    }
    const int m = opt.m > 0 ? opt.m : choose_m(d);
    res.schedule = build_schedule(res.l12, d, m, t, eps);
    const auto &s = res.schedule;

    std::vector<recursion::BlockEncoding> encs;
    ComplexMatrix approx(n, n);
    for (int j = 1; j <= m; j++) {
        TermReport tr;
        tr.level = j;
        tr.label = "H" + std::to_string(j);
        tr.lo = s.cutoffs[j - 1];
        tr.hi = s.cutoffs[j];
        tr.bound_one_norm = s.one_norm[j - 1];
        tr.delta = s.delta[j - 1];
        if (!(tr.lo < tr.hi)) {
            tr.dropped = true;
            res.terms.push_back(tr);
            continue;
        }
        auto sub = o.threshold(tr.lo, tr.hi, tr.label);
        const auto &f = o.format();
        for (size_t i = 0; i < n; i++) {
            for (size_t l = 1; l <= o.sparsity(); l++) {
                double mag = sub.peek_value(i, sub.peek_position(i, l)).magnitude(f);
                if (mag > 0) {
                    tr.nonzeros++;
                    tr.measured_max = std::max(tr.measured_max, mag);
                }
            }
        }
        if (tr.nonzeros == 0) {
            tr.dropped = true;
            res.terms.push_back(tr);
            continue;
        }
        tr.measured_one_norm = max_column_sum(blockenc::column_sums(sub));
        if (tr.measured_one_norm > tr.bound_one_norm * (1 + 1e-12)) {
            std::ostringstream ss;
            ss << "simulate_sparse: level " << j << " column sum " << tr.measured_one_norm << " exceeds bound "
               << tr.bound_one_norm;
            throw PreconditionError(ss.str());
        }
        if (s.exact()) {
            res.terms.push_back(tr);
            continue;
        }
        double target = tr.bound_one_norm;
        if (opt.tighten && tr.measured_one_norm < target) {
            target = tr.measured_one_norm;
            tr.tightened = true;
        }
        tr.factor = std::sqrt(d * tr.hi / target) / (1 + tr.delta);

        blockenc::AmplificationSpec spec;
        spec.factor = tr.factor;
        spec.delta = tr.delta;
        spec.profile = opt.profile;
        spec.seed = opt.seed + static_cast<uint64_t>(j);
        spec.c_am = opt.c_am;
        blockenc::BlockEncoding enc;
        try {
            auto pair = blockenc::build_stateprep(sub, tr.hi, opt.layout, tr.label);
            enc = blockenc::amplitude_multiply(pair, spec);
        } catch (const PreconditionError &e) {
            throw PreconditionError("simulate_sparse: level " + std::to_string(j) + ": " + e.what());
        }
        tr.alpha = enc.alpha;
        tr.multiply_queries = blockenc::multiply_queries(spec);
        tr.cost = enc.cost;
        ComplexMatrix hj = enc.matrix();
        tr.encoding_error = numerics::spectral_norm(hj - sub.materialize());
        approx += hj;
        encs.push_back(std::move(enc));
        res.terms.push_back(tr);
    }

    if (s.exact() || encs.empty()) {
        res.sim.op = ComplexMatrix::identity(n);
        return res;
    }
    res.encoding_error = numerics::spectral_norm(approx - h);

    recursion::StackOptions so;
    so.c_m = opt.c_m;
    so.measure = false;
    auto sim = recursion::simulate_stack(encs, t, kRecursionShare * eps, so);
    sim.eps = eps;
    if (opt.measure) {
        sim.measured_error = numerics::spectral_norm(sim.op - numerics::expm_i(h, t));
    }
    res.sim = std::move(sim);
    auto get = [&](const std::string &k) {
        auto it = res.sim.ledger.find(k);
        return it == res.sim.ledger.end() ? uint64_t{0} : it->second;
    };
    res.o_h = get(names::O_H);
    res.o_f = get(names::O_F);
    return res;
}

uint64_t dense_queries(const oracles::OracleSet &o, double t, double eps, double l12) {
    if (l12 <= 0) {
        l12 = numerics::compute_norms(o.materialize()).one_to_two;
    }
    double alpha = static_cast<double>(o.sparsity()) * l12;
    int q = recursion::jacobi_anger_order(t * alpha, eps);
    // Four value queries per application of U_row^dagger U_col.
    return 4 * static_cast<uint64_t>(q);
}

}  // namespace hamsim::sparsesim
