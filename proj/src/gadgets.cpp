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

#include "hamsim/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hamsim::gadgets {

const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::H:
            return "H";
        case GateKind::X:
            return "X";
        case GateKind::RY:
            return "RY";
        case GateKind::CX:
            return "CX";
        case GateKind::CCX:
            return "CCX";
        case GateKind::CPHASE:
            return "CPHASE";
    }
    return "?";
}

Statevector::Statevector(int qubits) : q_(qubits) {
    if (qubits < 0 || qubits > kMaxQubits) {
        throw PreconditionError("statevector: qubit count must lie in 0..24");
    }
    amp_.assign(size_t{1} << qubits, cplx(0));
    amp_[0] = 1;
}

double Statevector::norm() const {
    double s = 0;
    for (const auto &z : amp_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

void apply_gate(Statevector &sv, const Gate &g) {
    const int q = sv.qubits();
    uint64_t used = 0;
    auto claim = [&](int bit) {
        if (bit < 0 || bit >= q) {
            std::ostringstream ss;
            ss << gate_name(g.kind) << ": qubit " << bit << " out of range";
            throw PreconditionError(ss.str());
        }
        if (used >> bit & 1) {
            std::ostringstream ss;
            ss << gate_name(g.kind) << ": qubit " << bit << " used twice";
            throw PreconditionError(ss.str());
        }
        used |= uint64_t{1} << bit;
    };
    claim(g.target);
    uint64_t cmask = 0;
    for (int c : g.controls) {
        claim(c);
        cmask |= uint64_t{1} << c;
    }
    size_t expected_controls = 0;
    switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::RY:
            expected_controls = 0;
            break;
        case GateKind::CX:
        case GateKind::CPHASE:
            expected_controls = 1;
            break;
        case GateKind::CCX:
            expected_controls = 2;
            break;
    }
    if (g.controls.size() != expected_controls) {
        throw PreconditionError(std::string(gate_name(g.kind)) + ": wrong number of controls");
    }

    auto &a = sv.amplitudes();
    const size_t dim = a.size();
    const size_t tmask = size_t{1} << g.target;

    if (g.kind == GateKind::CPHASE) {
        const uint64_t all = cmask | tmask;
        const cplx ph = std::polar(1.0, g.param);
        for (size_t i = 0; i < dim; i++) {
            if ((i & all) == all) {
                a[i] *= ph;
            }
        }
        return;
    }

    // 2x2 matrix [[m00, m01], [m10, m11]] on the target, gated by controls.
    cplx m00, m01, m10, m11;
    bool is_x = false;
    switch (g.kind) {
        case GateKind::H: {
            double s = 1 / std::sqrt(2.0);
            m00 = m01 = m10 = s;
            m11 = -s;
            break;
        }
        case GateKind::RY: {
            double c = std::cos(g.param / 2), s = std::sin(g.param / 2);
            m00 = c;
            m01 = -s;
            m10 = s;
            m11 = c;
            break;
        }
        default:
            is_x = true;
            break;
    }
    for (size_t base = 0; base < dim; base += 2 * tmask) {
        for (size_t off = 0; off < tmask; off++) {
            size_t i = base + off;
            if ((i & cmask) != cmask) {
                continue;
            }
            size_t j = i | tmask;
            if (is_x) {
                std::swap(a[i], a[j]);
            } else {
                cplx x0 = a[i], x1 = a[j];
                a[i] = m00 * x0 + m01 * x1;
                a[j] = m10 * x0 + m11 * x1;
            }
        }
    }
}

GadgetLayout GadgetLayout::make(const oracles::FixedPointFormat &f) {
    f.validate();
    GadgetLayout l;
    l.format = f;
    const int w = f.m + f.n;
    l.phi = 0;
    l.r = f.p;
    l.a = l.r + w + 1;
    l.b = l.a + w;
    l.c = l.b + 1;
    l.carry = l.c + 1;
    l.qubits = l.carry + 1;
    return l;
}

size_t GadgetLayout::index(uint64_t phi_bits, uint64_t r_bits, uint64_t idx, int bb, int cc, int carry_bit) const {
    return (static_cast<size_t>(phi_bits) << phi) | (static_cast<size_t>(r_bits) << r) |
           (static_cast<size_t>(idx) << a) | (static_cast<size_t>(bb) << b) | (static_cast<size_t>(cc) << c) |
           (static_cast<size_t>(carry_bit) << carry);
}

int Circuit::multi_qubit_count() const {
    int n = 0;
    for (const auto &g : gates) {
        n += g.arity() > 1;
    }
    return n;
}

std::string Circuit::dump() const {
    std::ostringstream ss;
    ss.precision(17);
    for (const auto &g : gates) {
        ss << gate_name(g.kind) << " " << g.target << " ";
        if (g.controls.empty()) {
            ss << "-";
        }
        for (size_t i = 0; i < g.controls.size(); i++) {
            ss << (i ? "," : "") << g.controls[i];
        }
        ss << " " << g.param << "\n";
    }
    return ss.str();
}

namespace {

struct Emitter {
    Circuit &c;
    std::string stage;

    void emit(GateKind k, int target, std::vector<int> controls = {}, double param = 0) {
        Gate g{k, target, std::move(controls), param};
        c.stage_gates[stage]++;
        if (g.arity() > 1) {
            c.stage_multi_qubit[stage]++;
        }
        c.gates.push_back(std::move(g));
    }
};

}  // namespace

void append_comparator(Circuit &circ, const GadgetLayout &l) {
    const int w = l.width();
    Emitter e{circ, "compare"};
    // borrow(idx - R) = carry_out(~idx + R) over w+1 bits; bit w of ~idx is 1.
    for (int i = 0; i < w; i++) {
        e.emit(GateKind::X, l.a + i);
    }
    int prev = l.carry;
    for (int i = 0; i < w; i++) {
        int y = l.a + i, z = l.r + i;
        e.emit(GateKind::CX, y, {z});
        e.emit(GateKind::CX, prev, {z});
        e.emit(GateKind::CCX, z, {prev, y});
        prev = z;
    }
    // Top stage with the constant-one bit: carry_out = c_w OR R_w.
    const int top = l.r + w;
    e.emit(GateKind::CX, l.b, {prev});
    e.emit(GateKind::CX, l.b, {top});
    e.emit(GateKind::CCX, l.b, {prev, top});
    for (int i = w - 1; i >= 0; i--) {
        int x = i == 0 ? l.carry : l.r + i - 1;
        int y = l.a + i, z = l.r + i;
        e.emit(GateKind::CCX, z, {x, y});
        e.emit(GateKind::CX, x, {z});
        e.emit(GateKind::CX, y, {z});
    }
    for (int i = 0; i < w; i++) {
        e.emit(GateKind::X, l.a + i);
    }
    // b = NOT borrow = [R <= idx] = [r 2^n < j].
    e.emit(GateKind::X, l.b);
}

Circuit build_gadget(const GadgetLayout &l, double lambda) {
    const auto &f = l.format;
    if (!(lambda >= f.max_magnitude())) {
        std::ostringstream ss;
        ss << "converter needs lambda >= 2^m = " << f.max_magnitude() << ", got " << lambda;
        throw PreconditionError(ss.str());
    }
    Circuit circ;
    Emitter uni{circ, "uniform"};
    for (int i = 0; i < l.width(); i++) {
        uni.emit(GateKind::H, l.a + i);
    }
    append_comparator(circ, l);
    if (f.p > 0) {
        Emitter ph{circ, "phase"};
        // Phase pi 2^{-j} on the b = 0 branch when phi_j = 1; phi_j is bit p-j.
        ph.emit(GateKind::X, l.b);
        for (int j = 1; j <= f.p; j++) {
            ph.emit(GateKind::CPHASE, l.b, {l.phi + f.p - j}, M_PI * std::ldexp(1.0, -j));
        }
        ph.emit(GateKind::X, l.b);
    }
    Emitter rot{circ, "rotate"};
    rot.emit(GateKind::RY, l.c, {}, 2 * std::acos(std::sqrt(f.max_magnitude() / lambda)));
    return circ;
}

int gate_count(const GadgetLayout &l) {
    return build_gadget(l, l.format.max_magnitude()).multi_qubit_count();
}

double run(const Circuit &c, Statevector &sv, bool track_norm) {
    double drift = 0;
    for (const auto &g : c.gates) {
        apply_gate(sv, g);
        if (track_norm) {
            drift = std::max(drift, std::abs(sv.norm() - 1));
        }
    }
    return drift;
}

cplx target_amplitude(const oracles::FixedPointValue &z, const oracles::FixedPointFormat &f, double lambda) {
    return z.sqrt_decode(f) / std::sqrt(lambda);
}

static void check_representable(const oracles::FixedPointValue &z, const oracles::FixedPointFormat &f) {
    if (z.r_bits > (uint64_t{1} << (f.m + f.n)) || (z.phi_bits >> f.p) != 0) {
        throw PreconditionError("converter input not representable in the format");
    }
}

ConversionResult fixed_point_to_amplitude(const oracles::FixedPointValue &z, const oracles::FixedPointFormat &f,
                                          double lambda) {
    check_representable(z, f);
    auto l = GadgetLayout::make(f);
    auto circ = build_gadget(l, lambda);
    Statevector sv(l.qubits);
    sv.amplitudes()[0] = 0;
    sv.amplitudes()[l.index(z.phi_bits, z.r_bits, 0, 0, 0)] = 1;
    ConversionResult res;
    res.max_norm_drift = run(circ, sv, true);
    res.multi_qubit_gates = circ.multi_qubit_count();
    const size_t na = size_t{1} << l.width();
    res.output.assign(4 * na, 0);
    res.projected.assign(na, 0);
    for (size_t idx = 0; idx < na; idx++) {
        for (int bc = 0; bc < 4; bc++) {
            res.output[idx + na * bc] = sv.amplitudes()[l.index(z.phi_bits, z.r_bits, idx, bc & 1, bc >> 1)];
        }
        res.projected[idx] = res.output[idx];
    }
    return res;
}

ExhaustiveReport exhaustive_check(const oracles::FixedPointFormat &f, double lambda) {
    auto l = GadgetLayout::make(f);
    auto circ = build_gadget(l, lambda);
    const uint64_t nphi = uint64_t{1} << f.p;
    const uint64_t nr = (uint64_t{1} << l.width()) + 1;
    const size_t na = size_t{1} << l.width();
    ExhaustiveReport rep;
    rep.format = f;
    rep.lambda = lambda;
    rep.inputs = nphi * nr;
    rep.multi_qubit_gates = circ.multi_qubit_count();

    Statevector sv(l.qubits);
    auto &amp = sv.amplitudes();
    amp[0] = 0;
    const double in_amp = 1 / std::sqrt(static_cast<double>(rep.inputs));
    for (uint64_t ph = 0; ph < nphi; ph++) {
        for (uint64_t r = 0; r < nr; r++) {
            amp[l.index(ph, r, 0, 0, 0)] = in_amp;
        }
    }
    rep.max_norm_drift = run(circ, sv, true);

    const double scale = std::sqrt(static_cast<double>(rep.inputs));
    std::vector<cplx> proj(na);
    for (uint64_t ph = 0; ph < nphi; ph++) {
        for (uint64_t r = 0; r < nr; r++) {
            oracles::FixedPointValue z{r, ph};
            for (size_t idx = 0; idx < na; idx++) {
                proj[idx] = amp[l.index(ph, r, idx, 0, 0)] * scale;
            }
            cplx overlap = 0;
            if (r > 0) {
                double u = 1 / std::sqrt(static_cast<double>(r));
                for (size_t idx = 0; idx < r; idx++) {
                    overlap += u * proj[idx];
                }
            }
            double garbage = 0;
            for (size_t idx = 0; idx < na; idx++) {
                cplx along = (r > 0 && idx < r) ? overlap / std::sqrt(static_cast<double>(r)) : cplx(0);
                garbage += std::norm(proj[idx] - along);
            }
            cplx want = r > 0 ? target_amplitude(z, f, lambda) : cplx(0);
            rep.amplitude_error = std::max(rep.amplitude_error, std::abs(overlap - want));
            rep.garbage_error = std::max(rep.garbage_error, std::sqrt(garbage));
        }
    }
    return rep;
}

}  // namespace hamsim::gadgets
