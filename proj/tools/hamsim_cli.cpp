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

// hamsim: experiment harness over the simulation library.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hamsim/blockenc.hpp"
#include "hamsim/costmodel.hpp"
#include "hamsim/dyson.hpp"
#include "hamsim/gadgets.hpp"
#include "hamsim/instances.hpp"
#include "hamsim/regress.hpp"
#include "hamsim/report.hpp"
#include "hamsim/sparsesim.hpp"

using namespace hamsim;
using numerics::ComplexMatrix;
using regress::Check;
using report::num;

namespace {

struct Common {
    std::string out_dir;
    uint64_t seed = 1;
};

struct InstanceArgs {
    std::string file;
    size_t dim = 16;
    size_t sparsity = 4;
    double max_magnitude = 1.0;
    double min_fraction = 0.0;
    std::vector<int> format{12, 3, 16};
    /// > 0 rescales the generated instance to this ||H||_{1->2}.
    double l12 = 0;
};

/// Everything a subcommand hands back for persistence.
struct Outcome {
    std::string module;
    report::Document doc;
    std::string csv;
    std::string svg;
    std::vector<Check> checks;
};

void add_instance_options(CLI::App *app, InstanceArgs &a) {
    app->add_option("--instance", a.file, "Instance file (overrides the generator)");
    app->add_option("--dim", a.dim, "Generator: dimension N (power of two)");
    app->add_option("--sparsity,-d", a.sparsity, "Generator: sparsity d");
    app->add_option("--max-magnitude", a.max_magnitude, "Generator: largest entry magnitude");
    app->add_option("--min-fraction", a.min_fraction, "Generator: smallest magnitude as a fraction of the largest");
    app->add_option("--format", a.format, "Generator: fixed-point widths p m n")->expected(3);
    app->add_option("--rescale-l12", a.l12, "Generator: rescale to this ||H||_{1->2} (0 keeps the draw)");
}

oracles::FixedPointFormat to_format(const std::vector<int> &v) {
    oracles::FixedPointFormat f{v.at(0), v.at(1), v.at(2)};
    f.validate();
    return f;
}

std::shared_ptr<oracles::SparseHermitian> obtain_instance(const InstanceArgs &a, uint64_t seed, Outcome &out) {
    if (!a.file.empty()) {
        out.doc.set("instance", "source", a.file);
        return std::make_shared<oracles::SparseHermitian>(oracles::load_instance(a.file));
    }
    instances::RandomSparseSpec spec;
    spec.dim = a.dim;
    spec.sparsity = a.sparsity;
    spec.max_magnitude = a.max_magnitude;
    spec.min_fraction = a.min_fraction;
    spec.format = to_format(a.format);
    spec.seed = seed;
    auto h = instances::random_sparse(spec);
    if (a.l12 > 0) {
        h = instances::rescale_one_to_two(h, a.l12);
    }
    out.doc.set("instance", "source", "random_sparse");
    out.doc.set("instance", "seed", std::to_string(seed));
    return std::make_shared<oracles::SparseHermitian>(std::move(h));
}

void describe_instance(const oracles::SparseHermitian &h, Outcome &out) {
    const auto &f = h.format();
    out.doc.set("instance", "N", std::to_string(h.dim()));
    out.doc.set("instance", "d", std::to_string(h.sparsity()));
    out.doc.set("instance", "format", std::to_string(f.p) + "," + std::to_string(f.m) + "," + std::to_string(f.n));
    out.doc.set("instance", "nonzeros", std::to_string(h.nonzero_count()));
}

void record_checks(Outcome &out) {
    for (const auto &c : out.checks) {
        std::string sec = "check." + c.name;
        out.doc.set(sec, "measured", c.measured);
        out.doc.set(sec, "relation", regress::relation_symbol(c.relation));
        if (c.relation != regress::Relation::info) {
            out.doc.set(sec, "allowed", c.allowed);
        }
        out.doc.set(sec, "pass", c.pass ? "true" : "false");
    }
}

/// Every option of the subcommand with its effective value.
void record_provenance(const CLI::App *sub, const Common &common, Outcome &out) {
    out.doc.set("provenance", "command", sub->get_name());
    out.doc.set("provenance", "out_dir", common.out_dir);
    for (const auto *opt : sub->get_options()) {
        if (opt->get_name() == "--help" || opt->get_name().empty()) {
            continue;
        }
        std::string value;
        if (opt->count() > 0) {
            for (const auto &r : opt->results()) {
                value += (value.empty() ? "" : " ") + r;
            }
        } else {
            value = opt->get_default_str();
        }
        out.doc.set("provenance", opt->get_name(), value);
    }
}

void write_file(const std::filesystem::path &p, const std::string &content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + p.string());
    }
    f << content;
}

int finish(const CLI::App *sub, const Common &common, Outcome &out, const std::string &svg_path = "") {
    record_checks(out);
    record_provenance(sub, common, out);
    bool ok = true;
    for (const auto &c : out.checks) {
        if (!c.pass) {
            ok = false;
            std::fprintf(stderr, "FAIL module=%s operation=%s check=%s measured=%s relation=%s allowed=%s\n",
                         out.module.c_str(), sub->get_name().c_str(), c.name.c_str(), num(c.measured).c_str(),
                         regress::relation_symbol(c.relation), num(c.allowed).c_str());
        }
    }
    out.doc.set("result", "pass", ok ? "true" : "false");
    std::filesystem::path dir(common.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / (sub->get_name() + ".txt"), out.doc.str());
    if (!out.csv.empty()) {
        write_file(dir / (sub->get_name() + ".csv"), out.csv);
    }
    if (!svg_path.empty() && !out.svg.empty()) {
        write_file(svg_path, out.svg);
    }
    std::cout << out.doc.str();
    return ok ? 0 : 1;
}

Outcome cmd_gen(const InstanceArgs &ia, const Common &c, const std::string &path) {
    Outcome out;
    out.module = "instances";
    auto h = obtain_instance(ia, c.seed, out);
    describe_instance(*h, out);
    std::string file = path.empty() ? (std::filesystem::path(c.out_dir) / "instance.txt").string() : path;
    std::filesystem::create_directories(std::filesystem::path(file).parent_path().empty()
                                            ? std::filesystem::path(".")
                                            : std::filesystem::path(file).parent_path());
    oracles::save_instance(file, *h);
    write_file(file + ".json", oracles::instance_metadata(*h, "random_sparse") + "\n");
    out.doc.set("output", "instance", file);
    out.doc.set("output", "metadata", file + ".json");
    out.checks.push_back(regress::at_most("max_row_count_minus_d", double(h->max_row_count()) - double(h->sparsity()), 0));
    return out;
}

Outcome cmd_norms(const InstanceArgs &ia, const Common &c) {
    Outcome out;
    out.module = "numerics";
    auto h = obtain_instance(ia, c.seed, out);
    describe_instance(*h, out);
    auto nb = numerics::compute_norms(h->to_dense());
    double d = static_cast<double>(h->sparsity());
    const char *names[] = {"max", "one_to_two", "spectral", "induced_one", "sqrt_d_one_to_two",
                           "sqrt_d_max_one", "d_max"};
    double chain[] = {nb.max_norm,
                      nb.one_to_two,
                      nb.spectral,
                      nb.induced_one,
                      std::sqrt(d) * nb.one_to_two,
                      std::sqrt(d * nb.max_norm * nb.induced_one),
                      d * nb.max_norm};
    std::ostringstream csv;
    csv << "norm,value\n";
    for (int k = 0; k < 7; k++) {
        out.doc.set("norms", names[k], chain[k]);
        csv << names[k] << ',' << num(chain[k]) << '\n';
    }
    double slack = INFINITY;
    for (int k = 0; k + 1 < 7; k++) {
        slack = std::min(slack, chain[k + 1] - chain[k]);
    }
    out.checks.push_back(regress::at_least("min_chain_slack", slack, -1e-9));
    out.csv = csv.str();
    return out;
}

struct EncodeArgs {
    std::string layout = "compact";
    double lambda = 0;
    double factor = 0;
    double delta = 0;
    std::string profile = "alternating";
    double c_am = 1;
};

Outcome cmd_encode(const InstanceArgs &ia, const Common &c, const EncodeArgs &ea) {
    Outcome out;
    out.module = "blockenc";
    auto h = obtain_instance(ia, c.seed, out);
    describe_instance(*h, out);
    auto o = oracles::OracleSet::build(h);
    auto dense = o.materialize();
    double lambda = ea.lambda > 0 ? ea.lambda : std::max(dense.max_abs(), 1e-300);
    auto layout = ea.layout == "literal" ? blockenc::Layout::literal : blockenc::Layout::compact;
    auto pair = blockenc::build_stateprep(o, lambda, layout);
    auto plain = blockenc::to_encoding(pair);
    double res = blockenc::verify(plain, dense);
    out.doc.set("encoding", "layout", blockenc::layout_name(layout));
    out.doc.set("encoding", "lambda_max", lambda);
    out.doc.set("encoding", "alpha", plain.alpha);
    out.doc.set("encoding", "ancilla_dim", std::to_string(plain.ancilla_dim));
    out.checks.push_back(regress::at_most("residual", res, 1e-9));
    std::ostringstream csv;
    csv << "oracle,count_per_application\n";
    for (const auto &[k, v] : plain.cost) {
        csv << k << ',' << v << '\n';
    }
    if (ea.factor > 0) {
        blockenc::AmplificationSpec spec;
        spec.factor = ea.factor;
        spec.delta = ea.delta;
        spec.profile = ea.profile == "random" ? blockenc::DeltaProfile::random : blockenc::DeltaProfile::alternating;
        spec.seed = c.seed;
        spec.c_am = ea.c_am;
        auto enc = blockenc::amplitude_multiply(pair, spec);
        double err = numerics::spectral_norm(enc.matrix() - dense);
        double hn = numerics::spectral_norm(dense);
        out.doc.set("amplified", "factor", ea.factor);
        out.doc.set("amplified", "delta", ea.delta);
        out.doc.set("amplified", "alpha", enc.alpha);
        out.doc.set("amplified", "pair_applications", std::to_string(blockenc::multiply_queries(spec)));
        double allowed = ea.delta == 0 ? 1e-8 * enc.alpha : hn * (2 * ea.delta + ea.delta * ea.delta) + 1e-12;
        out.checks.push_back(regress::at_most("amplified_error", err, allowed));
    }
    out.csv = csv.str();
    return out;
}

struct GadgetArgs {
    std::vector<int> format{2, 1, 2};
    double lambda_scale = 1;
    std::string dump;
};

Outcome cmd_gadget(const GadgetArgs &ga) {
    Outcome out;
    out.module = "gadgets";
    auto f = to_format(ga.format);
    double lambda = ga.lambda_scale * std::ldexp(1.0, f.m);
    auto rep = gadgets::exhaustive_check(f, lambda);
    auto layout = gadgets::GadgetLayout::make(f);
    out.doc.set("gadget", "qubits", std::to_string(layout.qubits));
    out.doc.set("gadget", "lambda", lambda);
    out.doc.set("gadget", "inputs", std::to_string(rep.inputs));
    out.doc.set("gadget", "multi_qubit_gates", std::to_string(rep.multi_qubit_gates));
    out.checks.push_back(regress::at_most("amplitude_error", rep.amplitude_error, 1e-12));
    out.checks.push_back(regress::at_most("garbage_error", rep.garbage_error, 1e-12));
    out.checks.push_back(regress::at_most("gate_count_mismatch",
                                          std::abs(rep.multi_qubit_gates - gadgets::gate_count(layout)), 0));
    auto circuit = gadgets::build_gadget(layout, lambda);
    std::ostringstream csv;
    csv << "stage,gates,multi_qubit\n";
    for (const auto &[stage, n] : circuit.stage_gates) {
        auto it = circuit.stage_multi_qubit.find(stage);
        csv << stage << ',' << n << ',' << (it == circuit.stage_multi_qubit.end() ? 0 : it->second) << '\n';
    }
    out.csv = csv.str();
    if (!ga.dump.empty()) {
        write_file(ga.dump, circuit.dump());
        out.doc.set("output", "circuit", ga.dump);
    }
    return out;
}

struct DysonArgs {
    size_t dim = 4;
    double tau = 0.25;
    double eps = 1e-6;
    double alpha_a = 1;
    double alpha_b = 1;
    double c_m = 1;
};

Outcome cmd_dyson(const DysonArgs &da, const Common &c) {
    Outcome out;
    out.module = "dyson";
    numerics::SplitMix64 rng(c.seed);
    auto norm = [&](double n) {
        auto h = numerics::random_hermitian(da.dim, rng);
        return h * cplx(n / numerics::spectral_norm(h));
    };
    auto a = norm(da.alpha_a), b = norm(da.alpha_b);
    auto f = dyson::exact_frame(a, b, da.alpha_a, da.alpha_b);
    auto p = dyson::plan(da.tau, da.eps, da.alpha_a, da.alpha_b, da.c_m);
    auto r = dyson::run_dyson(f, p);
    double err = numerics::spectral_norm(r.op - dyson::exact_propagator(a, b, da.tau));
    out.doc.set("plan", "M", std::to_string(p.M));
    out.doc.set("plan", "K", std::to_string(p.K));
    out.doc.set("plan", "alpha_prime", p.alpha_prime);
    out.doc.set("plan", "truncation_bound", p.truncation_bound);
    out.doc.set("result", "error", err);
    std::ostringstream csv;
    csv << "tau,eps,M,K,error\n" << num(da.tau) << ',' << num(da.eps) << ',' << p.M << ',' << p.K << ',' << num(err) << '\n';
    out.csv = csv.str();
    out.checks.push_back(regress::at_most("alpha_b_tau", da.alpha_b * da.tau, 0.5));
    out.checks.push_back(regress::at_most("slice_error", err, da.eps));
    return out;
}

struct SimArgs {
    double t = 1;
    double eps = 1e-4;
    int m = 0;
    bool tighten = false;
    std::string layout = "compact";
    double c_am = 1;
    double c_m = 1;
    double l12 = 0;
};

sparsesim::SparseOptions sim_options(const SimArgs &sa, uint64_t seed) {
    sparsesim::SparseOptions opt;
    opt.m = sa.m;
    opt.tighten = sa.tighten;
    opt.layout = sa.layout == "literal" ? blockenc::Layout::literal : blockenc::Layout::compact;
    opt.c_am = sa.c_am;
    opt.c_m = sa.c_m;
    opt.l12 = sa.l12;
    opt.seed = seed;
    return opt;
}

Outcome cmd_simulate(const InstanceArgs &ia, const Common &c, const SimArgs &sa) {
    Outcome out;
    out.module = "sparsesim";
    auto h = obtain_instance(ia, c.seed, out);
    describe_instance(*h, out);
    auto o = oracles::OracleSet::build(h);
    auto r = sparsesim::simulate_sparse(o, sa.t, sa.eps, sim_options(sa, c.seed));
    out.doc.set("schedule", "m", std::to_string(r.schedule.m));
    out.doc.set("schedule", "l12", r.l12);
    out.doc.set("schedule", "brute_force_m",
                std::to_string(sparsesim::brute_force_m(double(h->sparsity()), sa.t, r.l12, sa.eps)));
    out.doc.set("result", "measured_error", r.sim.measured_error);
    out.doc.set("result", "encoding_error", r.encoding_error);
    out.doc.set("ledger", "O_H", std::to_string(r.o_h));
    out.doc.set("ledger", "O_F", std::to_string(r.o_f));
    for (const auto &[k, v] : r.sim.ledger) {
        out.doc.set("ledger.detail", k, std::to_string(v));
    }
    std::ostringstream csv;
    csv << "level,lo,hi,nonzeros,dropped,one_norm_measured,one_norm_bound,factor,delta,alpha,applications\n";
    for (const auto &tr : r.terms) {
        auto it = r.sim.ledger.find(oracles::names::encoding(tr.label));
        csv << tr.level << ',' << num(tr.lo) << ',' << num(tr.hi) << ',' << tr.nonzeros << ',' << tr.dropped << ','
            << num(tr.measured_one_norm) << ',' << num(tr.bound_one_norm) << ',' << num(tr.factor) << ','
            << num(tr.delta) << ',' << num(tr.alpha) << ',' << (it == r.sim.ledger.end() ? 0 : it->second) << '\n';
    }
    out.csv = csv.str();
    out.checks.push_back(regress::at_most("measured_error", r.sim.measured_error, sa.eps));
    return out;
}

struct SweepArgs {
    std::string param = "d";
    std::vector<double> values{4, 8, 16, 32};
    std::string svg;
};

struct SweepRow {
    double value = 0;
    double error = 0;
    uint64_t o_h = 0;
    uint64_t dense = 0;
    int m = 0;
};

Outcome cmd_sweep(InstanceArgs ia, const Common &c, SimArgs sa, const SweepArgs &sw) {
    Outcome out;
    out.module = "sparsesim";
    if (sw.param != "d" && sw.param != "eps" && sw.param != "t") {
        throw PreconditionError("sweep: --param must be d, eps or t");
    }
    if (!ia.file.empty() && sw.param == "d") {
        throw PreconditionError("sweep: a d sweep needs the generator, not --instance");
    }
    // Independent runs in parallel; results land in their parameter slot.
    std::vector<std::future<SweepRow>> jobs;
    for (double v : sw.values) {
        jobs.push_back(std::async(std::launch::async, [=]() {
            InstanceArgs a = ia;
            SimArgs s = sa;
            if (sw.param == "d") {
                a.sparsity = static_cast<size_t>(v);
            } else if (sw.param == "eps") {
                s.eps = v;
            } else {
                s.t = v;
            }
            Outcome scratch;
            auto h = obtain_instance(a, c.seed, scratch);
            auto o = oracles::OracleSet::build(h);
            auto r = sparsesim::simulate_sparse(o, s.t, s.eps, sim_options(s, c.seed));
            return SweepRow{v, r.sim.measured_error / s.eps, r.o_h, sparsesim::dense_queries(o, s.t, s.eps, r.l12),
                            r.schedule.m};
        }));
    }
    std::ostringstream csv;
    csv << sw.param << ",m,error_over_eps,o_h,dense_o_h\n";
    report::Series sparse{"sparse O_H", {}, {}}, dense{"dense O_H", {}, {}};
    double worst = 0;
    for (auto &j : jobs) {
        auto row = j.get();
        csv << num(row.value) << ',' << row.m << ',' << num(row.error) << ',' << row.o_h << ',' << row.dense << '\n';
        worst = std::max(worst, row.error);
        sparse.x.push_back(row.value);
        sparse.y.push_back(static_cast<double>(row.o_h));
        dense.x.push_back(row.value);
        dense.y.push_back(static_cast<double>(row.dense));
    }
    out.csv = csv.str();
    out.checks.push_back(regress::at_most("error_over_eps", worst, 1));
    if (sw.values.size() >= 2 && sw.param != "eps") {
        out.checks.push_back(regress::info("o_h_exponent", report::loglog_slope(sparse.x, sparse.y)));
    }
    if (!sw.svg.empty()) {
        out.svg = report::svg_line_plot("O_H queries vs " + sw.param, sw.param, "queries", {sparse, dense}, true, true);
        out.doc.set("output", "svg", sw.svg);
    }
    return out;
}

struct LowerArgs {
    int n = 3;
    int m = 2;
    int s = 2;
    std::vector<std::string> x;
};

Outcome cmd_lowerbound(const LowerArgs &la, const Common &c) {
    Outcome out;
    out.module = "instances";
    instances::InstanceParams p;
    p.n = la.n;
    p.m_or = la.m;
    p.s = la.s;
    if (la.x.empty()) {
        numerics::SplitMix64 rng(c.seed);
        for (int j = 0; j < la.n; j++) {
            std::vector<int> row(la.m, 0);
            uint64_t pick = rng.below(la.m + 1);
            if (pick > 0) {
                row[pick - 1] = 1;
            }
            p.x.push_back(row);
        }
    } else {
        for (const auto &bits : la.x) {
            std::vector<int> row;
            for (char ch : bits) {
                if (ch != '0' && ch != '1') {
                    throw PreconditionError("lowerbound: --x rows must be 0/1 strings");
                }
                row.push_back(ch - '0');
            }
            p.x.push_back(row);
        }
    }
    auto h = instances::h_parity_or(p);
    int parity = 0;
    std::string xs;
    for (const auto &row : p.x) {
        int any = 0;
        for (int b : row) {
            any |= b;
            xs += char('0' + b);
        }
        xs += ' ';
        parity ^= any;
    }
    double t = p.n * M_PI / (2 * p.s);
    auto u = numerics::expm_i(h, t);
    auto state = numerics::apply(u, instances::parity_or_state(p, 0, 0));
    auto target = instances::parity_or_state(p, p.n, parity);
    cplx amp = 0;
    for (size_t i = 0; i < state.size(); i++) {
        amp += std::conj(target[i]) * state[i];
    }
    auto nb = numerics::compute_norms(h);
    out.doc.set("instance", "x", xs.substr(0, xs.size() - 1));
    out.doc.set("instance", "dim", std::to_string(h.rows()));
    out.doc.set("result", "parity", std::to_string(parity));
    out.doc.set("result", "time", t);
    out.doc.set("result", "fidelity", std::norm(amp));
    out.doc.set("result", "phase", std::arg(amp));
    out.doc.set("result", "one_to_two_over_sqrt_s", nb.one_to_two / std::sqrt(double(p.s)));
    std::ostringstream csv;
    csv << "n,m_or,s,parity,fidelity,one_to_two\n"
        << p.n << ',' << p.m_or << ',' << p.s << ',' << parity << ',' << num(std::norm(amp)) << ','
        << num(nb.one_to_two) << '\n';
    out.csv = csv.str();
    out.checks.push_back(regress::at_least("fidelity", std::norm(amp), 1 - 1e-9));
    return out;
}

Outcome cmd_dilate(size_t dim, const Common &c) {
    Outcome out;
    out.module = "instances";
    numerics::SplitMix64 rng(c.seed);
    auto h = instances::dilate_unitary(numerics::random_unitary(dim, rng));
    double evo = numerics::spectral_norm(numerics::expm_i(h, M_PI / 2) + h * cplx(0, 1));
    double sq = numerics::spectral_norm(h * h - ComplexMatrix::identity(2 * dim));
    auto nb = numerics::compute_norms(h);
    out.doc.set("dilation", "dim", std::to_string(2 * dim));
    out.doc.set("dilation", "one_to_two", nb.one_to_two);
    std::ostringstream csv;
    csv << "dim,evolution_error,square_error\n" << 2 * dim << ',' << num(evo) << ',' << num(sq) << '\n';
    out.csv = csv.str();
    out.checks.push_back(regress::at_most("evolution_error", evo, 1e-9));
    out.checks.push_back(regress::at_most("square_error", sq, 1e-9));
    return out;
}

struct CostArgs {
    std::string formula = "sparse";
    std::string sweep;
    double t = 1;
    double eps = 1e-3;
    double d = 16;
    double l12 = 1;
    int m = 0;
    double kappa = 1;
    double d_max = 4096;
    std::vector<double> alphas{1};
    std::vector<double> costs{1};
    double nested = 0;
};

Outcome cmd_cost(const CostArgs &ca) {
    Outcome out;
    out.module = "costmodel";
    std::ostringstream csv;
    costmodel::write_csv_header(csv);
    std::vector<costmodel::CostReport> rows;
    if (!ca.sweep.empty()) {
        if (ca.sweep != "d") {
            throw PreconditionError("cost: only --sweep d is supported");
        }
        rows = costmodel::sweep_d(ca.t, ca.l12, ca.eps, ca.d_max);
        std::vector<double> ds, ratio;
        bool monotone = true;
        for (size_t i = 0; i < rows.size(); i++) {
            ds.push_back(rows[i].inputs.at("d"));
            ratio.push_back(rows[i].queries / costmodel::lower_bound(ca.t, ds.back(), ca.l12));
            monotone = monotone && (i == 0 || rows[i].queries > rows[i - 1].queries);
        }
        out.checks.push_back(regress::at_least("monotone", monotone, 1));
        out.checks.push_back(regress::info("ratio_growth_exponent", report::loglog_slope(ds, ratio)));
    } else if (ca.formula == "single") {
        rows.push_back(costmodel::cost_single(ca.t, ca.alphas.at(0), ca.costs.at(0), ca.eps));
    } else if (ca.formula == "interaction") {
        if (ca.alphas.size() < 2 || ca.costs.empty()) {
            throw PreconditionError("cost: interaction needs --alpha A B and --C C_B");
        }
        rows.push_back(costmodel::cost_interaction(ca.t, ca.alphas[0], ca.alphas[1], ca.costs.back(), ca.nested,
                                                   ca.eps));
    } else if (ca.formula == "recursion") {
        for (auto form : {costmodel::RecursionForm::exact, costmodel::RecursionForm::expanded,
                          costmodel::RecursionForm::closed}) {
            rows.push_back(costmodel::cost_recursion(ca.alphas, ca.costs, ca.t, ca.eps, form));
        }
    } else if (ca.formula == "sparse") {
        int m = ca.m > 0 ? ca.m : costmodel::optimal_m(ca.t, ca.d, ca.l12, ca.eps);
        rows.push_back(costmodel::cost_sparse(ca.t, ca.d, ca.l12, ca.eps, m));
        out.doc.set("cost", "lower_bound", costmodel::lower_bound(ca.t, ca.d, ca.l12));
    } else if (ca.formula == "unitary") {
        rows.push_back(costmodel::cost_corollaries(ca.d, ca.eps, ca.kappa));
    } else {
        throw PreconditionError("cost: unknown formula '" + ca.formula + "'");
    }
    for (const auto &r : rows) {
        costmodel::write_csv_row(csv, r);
        out.doc.set("cost", r.formula, r.queries);
    }
    out.doc.set("constants", "all", "1");
    out.doc.set("constants", "log_base", "2");
    out.csv = csv.str();
    return out;
}

Outcome cmd_regress(const std::string &suite, const Common &c) {
    auto r = regress::run_suite(suite, c.seed);
    Outcome out;
    out.module = "regress";
    out.doc = regress::to_document(r);
    out.checks = r.checks;
    out.csv = r.csv;
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"hamsim: sparse Hamiltonian simulation experiments"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "Key-value configuration file with [subcommand] sections");

    Common common;
    const char *env_dir = std::getenv("HAMSIM_OUT_DIR");
    common.out_dir = env_dir && *env_dir ? env_dir : ".";
    app.add_option("--out-dir", common.out_dir, "Directory for results documents and CSV (env HAMSIM_OUT_DIR)");
    app.add_option("--seed", common.seed, "Seed for generators and injected errors");

    // One argument block per subcommand: config sections for other commands
    // still populate their own options during parsing.
    InstanceArgs gen_inst, norms_inst, encode_inst, sim_inst, sweep_inst;
    std::string gen_out;
    auto *gen = app.add_subcommand("gen", "Generate a random d-sparse instance file");
    add_instance_options(gen, gen_inst);
    gen->add_option("--out", gen_out, "Instance path (default <out-dir>/instance.txt)");

    auto *norms = app.add_subcommand("norms", "Norm chain of an instance");
    add_instance_options(norms, norms_inst);

    EncodeArgs enc;
    auto *encode = app.add_subcommand("encode", "Block-encode an instance and verify it");
    add_instance_options(encode, encode_inst);
    encode->add_option("--layout", enc.layout, "compact or literal")->check(CLI::IsMember({"compact", "literal"}));
    encode->add_option("--lambda", enc.lambda, "Entry bound Lambda_max (0 = largest entry)");
    encode->add_option("--amplify", enc.factor, "Amplitude multiplication factor C (0 = none)");
    encode->add_option("--delta", enc.delta, "Injected multiplicative error");
    encode->add_option("--profile", enc.profile, "alternating or random")
        ->check(CLI::IsMember({"alternating", "random"}));
    encode->add_option("--c-am", enc.c_am, "Constant in the multiplication query count");

    GadgetArgs gad;
    auto *gadget = app.add_subcommand("gadget", "Exhaustively check the amplitude converter circuit");
    gadget->add_option("--format", gad.format, "Fixed-point widths p m n")->expected(3);
    gadget->add_option("--lambda-scale", gad.lambda_scale, "Lambda_max as a multiple of 2^m (>= 1)");
    gadget->add_option("--dump", gad.dump, "Write the gate list here");

    DysonArgs dys;
    auto *dyson = app.add_subcommand("dyson", "One truncated Dyson slice on a random frame");
    dyson->add_option("--dim", dys.dim, "Matrix dimension");
    dyson->add_option("--tau", dys.tau, "Slice length");
    dyson->add_option("--eps", dys.eps, "Slice error budget");
    dyson->add_option("--alpha-a", dys.alpha_a, "||A||");
    dyson->add_option("--alpha-b", dys.alpha_b, "||B||");
    dyson->add_option("--c-m", dys.c_m, "Grid constant");

    SimArgs sim, sweep_sim;
    auto add_sim_options = [](CLI::App *a, SimArgs &sim) {
        a->add_option("--t", sim.t, "Evolution time");
        a->add_option("--eps", sim.eps, "Error budget");
        a->add_option("--m", sim.m, "Number of threshold levels (0 = default rule)");
        a->add_flag("--tighten", sim.tighten, "Use measured column sums when tighter");
        a->add_option("--layout", sim.layout, "compact or literal")->check(CLI::IsMember({"compact", "literal"}));
        a->add_option("--c-am", sim.c_am, "Amplitude multiplication constant");
        a->add_option("--c-m", sim.c_m, "Dyson grid constant");
        a->add_option("--l12", sim.l12, "Upper bound on ||H||_{1->2} (0 = measured)");
    };
    auto *simulate = app.add_subcommand("simulate", "Threshold-split sparse simulation with measured error");
    add_instance_options(simulate, sim_inst);
    add_sim_options(simulate, sim);

    SweepArgs sw;
    auto *sweep = app.add_subcommand("sweep", "Run simulate over a parameter list (concurrently)");
    add_instance_options(sweep, sweep_inst);
    add_sim_options(sweep, sweep_sim);
    sweep->add_option("--param", sw.param, "d, eps or t")->check(CLI::IsMember({"d", "eps", "t"}));
    sweep->add_option("--values", sw.values, "Parameter values")->delimiter(',');
    sweep->add_option("--svg", sw.svg, "Write a line plot here");

    LowerArgs low;
    auto *lower = app.add_subcommand("lowerbound", "PARITY of ORs dynamics");
    lower->add_option("--n", low.n, "Number of OR blocks");
    lower->add_option("--m", low.m, "Bits per OR");
    lower->add_option("--s", low.s, "Complete-graph size");
    lower->add_option("--x", low.x, "Rows of x as 0/1 strings (default: seeded promise input)")->delimiter(',');

    size_t dil_dim = 4;
    auto *dilate = app.add_subcommand("dilate", "Dilation of a random unitary");
    dilate->add_option("--dim", dil_dim, "Unitary dimension");

    CostArgs cost;
    auto *costc = app.add_subcommand("cost", "Closed-form query counts (unit constants, log base 2)");
    costc->add_option("--formula", cost.formula, "single, interaction, recursion, sparse or unitary")
        ->check(CLI::IsMember({"single", "interaction", "recursion", "sparse", "unitary"}));
    costc->add_option("--sweep", cost.sweep, "Sweep a parameter (d)");
    costc->add_option("--t", cost.t, "Time");
    costc->add_option("--eps", cost.eps, "Error");
    costc->add_option("--d", cost.d, "Sparsity");
    costc->add_option("--l12", cost.l12, "||H||_{1->2}");
    costc->add_option("--m", cost.m, "Levels (0 = minimizer)");
    costc->add_option("--kappa", cost.kappa, "Number of composed unitaries (unitary formula)");
    costc->add_option("--d-max", cost.d_max, "Largest d in a sweep");
    costc->add_option("--alpha", cost.alphas, "Normalizing constants")->delimiter(',');
    costc->add_option("--C", cost.costs, "Per-term costs")->delimiter(',');
    costc->add_option("--nested", cost.nested, "Nested cost for the interaction formula");

    std::string suite;
    auto *reg = app.add_subcommand("regress", "Run a regression suite");
    reg->add_option("suite", suite, "Suite name")->required();

    CLI11_PARSE(app, argc, argv);

    CLI::App *sub = app.get_subcommands().front();
    try {
        Outcome out;
        std::string svg;
        if (sub == gen) {
            out = cmd_gen(gen_inst, common, gen_out);
        } else if (sub == norms) {
            out = cmd_norms(norms_inst, common);
        } else if (sub == encode) {
            out = cmd_encode(encode_inst, common, enc);
        } else if (sub == gadget) {
            out = cmd_gadget(gad);
        } else if (sub == dyson) {
            out = cmd_dyson(dys, common);
        } else if (sub == simulate) {
            out = cmd_simulate(sim_inst, common, sim);
        } else if (sub == sweep) {
            out = cmd_sweep(sweep_inst, common, sweep_sim, sw);
            svg = sw.svg;
        } else if (sub == lower) {
            out = cmd_lowerbound(low, common);
        } else if (sub == dilate) {
            out = cmd_dilate(dil_dim, common);
        } else if (sub == costc) {
            out = cmd_cost(cost);
        } else {
            out = cmd_regress(suite, common);
        }
        return finish(sub, common, out, svg);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "ERROR module=cli operation=%s message=\"%s\"\n", sub->get_name().c_str(), e.what());
        return 2;
    }
}
