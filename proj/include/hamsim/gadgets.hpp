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

#ifndef HAMSIM_GADGETS_HPP
#define HAMSIM_GADGETS_HPP

#include <map>
#include <string>
#include <vector>

#include "hamsim/numerics.hpp"
#include "hamsim/oracles.hpp"

namespace hamsim::gadgets {

enum class GateKind { H, X, RY, CX, CCX, CPHASE };

const char *gate_name(GateKind k);

/// Qubit q is bit q of the basis index. For CPHASE the phase e^{i param}
/// applies when every listed qubit is 1.
struct Gate {
    GateKind kind;
    int target;
    std::vector<int> controls;
    double param = 0;

    int arity() const {
        return 1 + static_cast<int>(controls.size());
    }
};

constexpr int kMaxQubits = 24;

class Statevector {
   public:
    /// |0...0> on q qubits.
    explicit Statevector(int qubits);

    int qubits() const {
        return q_;
    }
    std::vector<cplx> &amplitudes() {
        return amp_;
    }
    const std::vector<cplx> &amplitudes() const {
        return amp_;
    }
    double norm() const;

   private:
    int q_;
    std::vector<cplx> amp_;
};

/// Rejects out-of-range or repeated qubit indices.
void apply_gate(Statevector &sv, const Gate &g);

/// Register offsets of the converter: phase p, magnitude m+n+1 (holds r 2^n),
/// index a (m+n), flag b, rotation c, carry line.
struct GadgetLayout {
    oracles::FixedPointFormat format;
    int phi = 0;
    int r = 0;
    int a = 0;
    int b = 0;
    int c = 0;
    int carry = 0;
    int qubits = 0;

    static GadgetLayout make(const oracles::FixedPointFormat &f);
    int width() const {
        return format.m + format.n;
    }
    /// Basis index of |phi>|R>|idx>|b>|c>|carry>.
    size_t index(uint64_t phi_bits, uint64_t r_bits, uint64_t idx, int b, int c, int carry_bit = 0) const;
};

struct Circuit {
    std::vector<Gate> gates;
    /// Gate totals per stage ("uniform", "compare", "phase", "rotate").
    std::map<std::string, int> stage_gates;
    std::map<std::string, int> stage_multi_qubit;

    int multi_qubit_count() const;
    /// Text dump, one "GATE targets controls params" line per gate.
    std::string dump() const;
};

/// Borrow-style comparator: flips b iff r 2^n < idx + 1.
void append_comparator(Circuit &c, const GadgetLayout &l);

/// Full converter circuit for a given upper bound lambda >= 2^m.
Circuit build_gadget(const GadgetLayout &l, double lambda);

/// Number of two- and three-qubit gates in the converter.
int gate_count(const GadgetLayout &l);

/// Runs the circuit; returns the largest per-gate deviation of the norm from 1.
double run(const Circuit &c, Statevector &sv, bool track_norm = false);

struct ConversionResult {
    /// Amplitudes of |j>_a |00>_bc for idx = j - 1 in [0, 2^{m+n}).
    std::vector<cplx> projected;
    /// Full (a, b, c) output block, index idx + 2^{m+n} (b + 2c).
    std::vector<cplx> output;
    int multi_qubit_gates = 0;
    double max_norm_drift = 0;
};

/// Simulates the converter on a single input value.
ConversionResult fixed_point_to_amplitude(const oracles::FixedPointValue &z, const oracles::FixedPointFormat &f,
                                          double lambda);

/// sqrt(r) e^{i pi phi} / sqrt(lambda), the amplitude the converter targets.
cplx target_amplitude(const oracles::FixedPointValue &z, const oracles::FixedPointFormat &f, double lambda);

struct ExhaustiveReport {
    oracles::FixedPointFormat format;
    double lambda = 0;
    size_t inputs = 0;
    /// max over z of |<u_z| P_00 |out> - target|.
    double amplitude_error = 0;
    /// max over z of || P_00 |out> - <u_z|P_00|out> |u_z> ||.
    double garbage_error = 0;
    double max_norm_drift = 0;
    int multi_qubit_gates = 0;
};

/// Runs every representable input of the format in one superposed simulation.
ExhaustiveReport exhaustive_check(const oracles::FixedPointFormat &f, double lambda);

}  // namespace hamsim::gadgets

#endif
