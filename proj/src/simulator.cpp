// Copyright 2026 The qcpcp Authors
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

#include "qcpcp/simulator.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "qcpcp/error.hpp"
#include "qcpcp/seed.hpp"

namespace qcpcp {

namespace {

using Matrix2 = std::array<Amplitude, 4>;  // row-major

Matrix2 matrix_for(const Gate &gate) {
    using namespace std::complex_literals;
    const double r = std::numbers::sqrt2 / 2.0;
    switch (gate.kind) {
        case GateKind::kH:
            return {r, r, r, -r};
        case GateKind::kX:
        case GateKind::kCNOT:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::kZ:
        case GateKind::kCZ:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::kS:
            return {1.0, 0.0, 0.0, 1i};
        case GateKind::kT:
            return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)};
        case GateKind::kRY: {
            const double c = std::cos(gate.theta / 2.0);
            const double s = std::sin(gate.theta / 2.0);
            return {c, -s, s, c};
        }
        default:
            fail("apply_gate: " + std::string(gate_name(gate.kind)) + " is a query and needs a proof");
    }
}

std::string describe(const Gate &gate) { return "gate " + std::string(gate_name(gate.kind)); }

void check_index(const Gate &gate, std::string_view role, int qubit, int num_qubits) {
    if (qubit < 0 || qubit >= num_qubits) {
        fail(describe(gate) + ": " + std::string(role) + " qubit index " + std::to_string(qubit) +
             " out of range for " + std::to_string(num_qubits) + " qubits");
    }
}

std::uint64_t register_value(const Statevector &state, std::uint64_t basis, std::span<const int> qubits) {
    std::uint64_t v = 0;
    for (int q : qubits) {
        v = (v << 1) | ((basis & state.mask(q)) ? 1U : 0U);
    }
    return v;
}

void check_query_register(const Statevector &state, std::span<const int> index_qubits, int target, GateKind kind) {
    Gate g;
    g.kind = kind;
    g.index_qubits.assign(index_qubits.begin(), index_qubits.end());
    g.target = target;
    validate_gate(g, state.num_qubits());
}

}  // namespace

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        fail("Statevector: qubit count " + std::to_string(num_qubits) + " outside [1, " +
             std::to_string(kMaxQubits) + "]");
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

Statevector::Statevector(std::vector<Amplitude> amplitudes) : num_qubits_(0), amps_(std::move(amplitudes)) {
    if (amps_.size() < 2 || !std::has_single_bit(amps_.size())) {
        fail("Statevector: amplitude count must be a power of two >= 2");
    }
    num_qubits_ = std::countr_zero(amps_.size());
    if (num_qubits_ > kMaxQubits) {
        fail("Statevector: too many qubits");
    }
}

Statevector Statevector::basis(int num_qubits, std::uint64_t index) {
    Statevector s(num_qubits);
    if (index >= s.size()) {
        fail("Statevector::basis: index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double Statevector::squared_norm() const noexcept {
    double n = 0.0;
    for (const auto &a : amps_) {
        n += std::norm(a);
    }
    return n;
}

ClassicalProof::ClassicalProof(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        fail("ClassicalProof: proof length must be >= 1");
    }
    for (auto &b : bits_) {
        if (b > 1) {
            fail("ClassicalProof: bits must be 0 or 1");
        }
    }
}

ClassicalProof ClassicalProof::from_string(std::string_view bits) {
    std::vector<std::uint8_t> v;
    v.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            fail("ClassicalProof: expected only '0'/'1' characters, got '" + std::string(bits) + "'");
        }
        v.push_back(c == '1' ? 1 : 0);
    }
    return ClassicalProof(std::move(v));
}

ClassicalProof ClassicalProof::zeros(std::size_t n) { return ClassicalProof(std::vector<std::uint8_t>(n, 0)); }

std::string ClassicalProof::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::kH:
            return "H";
        case GateKind::kX:
            return "X";
        case GateKind::kZ:
            return "Z";
        case GateKind::kS:
            return "S";
        case GateKind::kT:
            return "T";
        case GateKind::kRY:
            return "RY";
        case GateKind::kCNOT:
            return "CNOT";
        case GateKind::kCZ:
            return "CZ";
        case GateKind::kStandardQuery:
            return "std_query";
        case GateKind::kPhaseQuery:
            return "phase_query";
    }
    return "?";
}

bool is_query(GateKind kind) { return kind == GateKind::kStandardQuery || kind == GateKind::kPhaseQuery; }

Gate Gate::single(GateKind kind, int target, std::vector<int> controls) {
    Gate g;
    g.kind = kind;
    g.targets = {target};
    g.controls = std::move(controls);
    return g;
}

Gate Gate::ry(double theta, int target, std::vector<int> controls) {
    Gate g = single(GateKind::kRY, target, std::move(controls));
    g.theta = theta;
    return g;
}

Gate Gate::cnot(int control, int target) { return single(GateKind::kCNOT, target, {control}); }

Gate Gate::cz(int control, int target) { return single(GateKind::kCZ, target, {control}); }

Gate Gate::standard_query(std::vector<int> index_qubits, int target) {
    Gate g;
    g.kind = GateKind::kStandardQuery;
    g.index_qubits = std::move(index_qubits);
    g.target = target;
    return g;
}

Gate Gate::phase_query(std::vector<int> index_qubits) {
    Gate g;
    g.kind = GateKind::kPhaseQuery;
    g.index_qubits = std::move(index_qubits);
    return g;
}

void validate_gate(const Gate &gate, int num_qubits) {
    auto distinct = [&](const std::vector<int> &qs, std::string_view role) {
        for (std::size_t a = 0; a < qs.size(); ++a) {
            check_index(gate, role, qs[a], num_qubits);
            for (std::size_t b = a + 1; b < qs.size(); ++b) {
                if (qs[a] == qs[b]) {
                    fail(describe(gate) + ": " + std::string(role) + " qubit " + std::to_string(qs[a]) +
                         " listed twice");
                }
            }
        }
    };
    if (is_query(gate.kind)) {
        if (!gate.targets.empty() || !gate.controls.empty()) {
            fail(describe(gate) + ": queries take index_qubits/target, not targets/controls");
        }
        if (gate.index_qubits.empty() || gate.index_qubits.size() > 63) {
            fail(describe(gate) + ": index register must hold 1..63 qubits");
        }
        distinct(gate.index_qubits, "index");
        if (gate.kind == GateKind::kStandardQuery) {
            check_index(gate, "target", gate.target, num_qubits);
            if (std::find(gate.index_qubits.begin(), gate.index_qubits.end(), gate.target) !=
                gate.index_qubits.end()) {
                fail(describe(gate) + ": target qubit " + std::to_string(gate.target) +
                     " is also an index qubit");
            }
        }
        return;
    }
    if (gate.targets.size() != 1) {
        fail(describe(gate) + ": expected exactly one target, got " + std::to_string(gate.targets.size()));
    }
    if ((gate.kind == GateKind::kCNOT || gate.kind == GateKind::kCZ) && gate.controls.size() != 1) {
        fail(describe(gate) + ": expected exactly one control, got " + std::to_string(gate.controls.size()));
    }
    check_index(gate, "target", gate.targets[0], num_qubits);
    distinct(gate.controls, "control");
    if (std::find(gate.controls.begin(), gate.controls.end(), gate.targets[0]) != gate.controls.end()) {
        fail(describe(gate) + ": qubit " + std::to_string(gate.targets[0]) + " is both control and target");
    }
}

void apply_gate(Statevector &state, const Gate &gate) {
    validate_gate(gate, state.num_qubits());
    const Matrix2 u = matrix_for(gate);
    const std::uint64_t tmask = state.mask(gate.targets[0]);
    std::uint64_t cmask = 0;
    for (int c : gate.controls) {
        cmask |= state.mask(c);
    }
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & tmask) || (i & cmask) != cmask) {
            continue;
        }
        const Amplitude a0 = amps[i];
        const Amplitude a1 = amps[i | tmask];
        amps[i] = u[0] * a0 + u[1] * a1;
        amps[i | tmask] = u[2] * a0 + u[3] * a1;
    }
}

void apply_standard_query(Statevector &state, const ClassicalProof &proof, std::span<const int> index_qubits,
                          int target_qubit) {
    check_query_register(state, index_qubits, target_qubit, GateKind::kStandardQuery);
    const std::uint64_t tmask = state.mask(target_qubit);
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (!(i & tmask) && proof.at(register_value(state, i, index_qubits))) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

void apply_phase_query(Statevector &state, const ClassicalProof &proof, std::span<const int> index_qubits) {
    check_query_register(state, index_qubits, -1, GateKind::kPhaseQuery);
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (proof.at(register_value(state, i, index_qubits))) {
            amps[i] = -amps[i];
        }
    }
}

void apply(Statevector &state, const Gate &gate, const ClassicalProof &proof) {
    switch (gate.kind) {
        case GateKind::kStandardQuery:
            apply_standard_query(state, proof, gate.index_qubits, gate.target);
            break;
        case GateKind::kPhaseQuery:
            apply_phase_query(state, proof, gate.index_qubits);
            break;
        default:
            apply_gate(state, gate);
    }
}

double acceptance_probability(const Statevector &state, int output_qubit) {
    if (output_qubit < 0 || output_qubit >= state.num_qubits()) {
        fail("acceptance_probability: output qubit " + std::to_string(output_qubit) + " out of range for " +
             std::to_string(state.num_qubits()) + " qubits");
    }
    const std::uint64_t m = state.mask(output_qubit);
    double p = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & m) {
            p += std::norm(amps[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

bool bernoulli_from_seed(double p, std::uint64_t seed) noexcept { return unit_from_seed(seed) < p; }

bool sample_shot(const Statevector &state, int output_qubit, std::uint64_t seed) {
    return bernoulli_from_seed(acceptance_probability(state, output_qubit), seed);
}

std::vector<double> register_distribution(const Statevector &state, std::span<const int> qubits) {
    if (qubits.empty() || qubits.size() > 30) {
        fail("register_distribution: register must hold 1..30 qubits");
    }
    for (int q : qubits) {
        if (q < 0 || q >= state.num_qubits()) {
            fail("register_distribution: qubit index " + std::to_string(q) + " out of range");
        }
    }
    std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        dist[register_value(state, i, qubits)] += std::norm(amps[i]);
    }
    return dist;
}

std::uint64_t sample_register(const Statevector &state, std::span<const int> qubits, std::uint64_t seed) {
    const auto dist = register_distribution(state, qubits);
    double u = unit_from_seed(seed);
    double total = 0.0;
    for (double p : dist) {
        total += p;
    }
    u *= total;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t v = 0; v < dist.size(); ++v) {
        if (dist[v] <= 0.0) {
            continue;
        }
        last_nonzero = v;
        if (u < dist[v]) {
            return v;
        }
        u -= dist[v];
    }
    return last_nonzero;
}

}  // namespace qcpcp
