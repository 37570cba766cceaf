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

#include "qcpcp/circuit.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "qcpcp/error.hpp"

namespace qcpcp {

using nlohmann::json;

namespace {

constexpr GateKind kAllKinds[] = {GateKind::kH,    GateKind::kX,  GateKind::kZ,
                                  GateKind::kS,    GateKind::kT,  GateKind::kRY,
                                  GateKind::kCNOT, GateKind::kCZ, GateKind::kStandardQuery,
                                  GateKind::kPhaseQuery};

/// Index register qubits 1..width, qubit 1 most significant.
std::vector<int> index_register(int width) {
    std::vector<int> qs(width);
    std::iota(qs.begin(), qs.end(), 1);
    return qs;
}

/// Qubit holding bit `bit` (0 = least significant) of a register.
int qubit_for_bit(const std::vector<int> &reg, int bit) { return reg[reg.size() - 1 - bit]; }

void check_proof_index(std::size_t proof_len, std::size_t index, std::string_view who) {
    if (proof_len < 1) {
        fail(std::string(who) + ": proof length must be >= 1");
    }
    if (index < 1 || index > proof_len) {
        fail(std::string(who) + ": index " + std::to_string(index) + " outside 1.." + std::to_string(proof_len));
    }
}

const json &require(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object()) {
        fail_schema(path + ": expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail_schema(path + "." + key + ": missing required field");
    }
    return *it;
}

std::int64_t require_int(const json &obj, const std::string &key, const std::string &path) {
    const json &v = require(obj, key, path);
    if (!v.is_number_integer()) {
        fail_schema(path + "." + key + ": expected an integer");
    }
    return v.get<std::int64_t>();
}

std::vector<int> int_list(const json &obj, const std::string &key, const std::string &path, bool required) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) {
            fail_schema(path + "." + key + ": missing required field");
        }
        return {};
    }
    if (!it->is_array()) {
        fail_schema(path + "." + key + ": expected an array of integers");
    }
    std::vector<int> out;
    for (std::size_t k = 0; k < it->size(); ++k) {
        const json &e = (*it)[k];
        if (!e.is_number_integer()) {
            fail_schema(path + "." + key + "[" + std::to_string(k) + "]: expected an integer");
        }
        out.push_back(e.get<int>());
    }
    return out;
}

Gate parse_gate(const json &op, const std::string &path) {
    const json &name = require(op, "gate", path);
    if (!name.is_string()) {
        fail_schema(path + ".gate: expected a string");
    }
    const auto s = name.get<std::string>();
    Gate g;
    bool found = false;
    for (GateKind k : kAllKinds) {
        if (gate_name(k) == s) {
            g.kind = k;
            found = true;
        }
    }
    if (!found) {
        fail_schema(path + ".gate: unknown gate kind '" + s + "'");
    }
    if (is_query(g.kind)) {
        g.index_qubits = int_list(op, "index_qubits", path, true);
        if (g.kind == GateKind::kStandardQuery) {
            g.target = static_cast<int>(require_int(op, "target", path));
        }
        return g;
    }
    g.targets = int_list(op, "targets", path, true);
    g.controls = int_list(op, "controls", path, false);
    if (g.kind == GateKind::kRY) {
        const json &theta = require(op, "theta", path);
        if (!theta.is_number()) {
            fail_schema(path + ".theta: expected a number");
        }
        g.theta = theta.get<double>();
    }
    return g;
}

}  // namespace

int register_width(std::uint64_t max_value) { return std::max(1, static_cast<int>(std::bit_width(max_value))); }

int VerifierCircuit::query_count() const {
    return static_cast<int>(std::count_if(ops.begin(), ops.end(), [](const Gate &g) { return is_query(g.kind); }));
}

void VerifierCircuit::validate() const {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        fail("circuit '" + label + "': qubit count " + std::to_string(num_qubits) + " outside [1, " +
             std::to_string(kMaxQubits) + "]");
    }
    if (proof_len < 1) {
        fail("circuit '" + label + "': proof_len must be >= 1");
    }
    if (output_qubit < 0 || output_qubit >= num_qubits) {
        fail("circuit '" + label + "': output qubit " + std::to_string(output_qubit) + " out of range");
    }
    for (std::size_t k = 0; k < ops.size(); ++k) {
        try {
            validate_gate(ops[k], num_qubits);
        } catch (const Error &e) {
            fail("circuit '" + label + "' ops[" + std::to_string(k) + "]: " + e.what());
        }
    }
}

Statevector simulate(const VerifierCircuit &circuit, const ClassicalProof &proof) {
    circuit.validate();
    Statevector state(circuit.num_qubits);
    for (const Gate &g : circuit.ops) {
        apply(state, g, proof);
    }
    return state;
}

double acceptance_probability(const VerifierCircuit &circuit, const ClassicalProof &proof) {
    return acceptance_probability(simulate(circuit, proof), circuit.output_qubit);
}

json serialize_circuit(const VerifierCircuit &circuit) {
    json ops = json::array();
    for (const Gate &g : circuit.ops) {
        json op;
        op["gate"] = gate_name(g.kind);
        if (is_query(g.kind)) {
            op["index_qubits"] = g.index_qubits;
            if (g.kind == GateKind::kStandardQuery) {
                op["target"] = g.target;
            }
        } else {
            op["targets"] = g.targets;
            op["controls"] = g.controls;
            if (g.kind == GateKind::kRY) {
                op["theta"] = g.theta;
            }
        }
        ops.push_back(std::move(op));
    }
    return json{{"label", circuit.label},
                {"qubits", circuit.num_qubits},
                {"proof_len", circuit.proof_len},
                {"output_qubit", circuit.output_qubit},
                {"query_count", circuit.query_count()},
                {"ops", std::move(ops)}};
}

VerifierCircuit parse_circuit(const json &doc) {
    const std::string root = "circuit";
    VerifierCircuit c;
    const json &label = require(doc, "label", root);
    if (!label.is_string()) {
        fail_schema("circuit.label: expected a string");
    }
    c.label = label.get<std::string>();
    const auto qubits = require_int(doc, "qubits", root);
    if (qubits < 1 || qubits > kMaxQubits) {
        fail_schema("circuit.qubits: " + std::to_string(qubits) + " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    c.num_qubits = static_cast<int>(qubits);
    const auto proof_len = require_int(doc, "proof_len", root);
    if (proof_len < 1) {
        fail_schema("circuit.proof_len: must be >= 1");
    }
    c.proof_len = static_cast<std::size_t>(proof_len);
    const auto output_qubit = require_int(doc, "output_qubit", root);
    if (output_qubit < 0 || output_qubit >= qubits) {
        fail_schema("circuit.output_qubit: " + std::to_string(output_qubit) + " is not a qubit of the register");
    }
    c.output_qubit = static_cast<int>(output_qubit);
    const json &ops = require(doc, "ops", root);
    if (!ops.is_array()) {
        fail_schema("circuit.ops: expected an array");
    }
    for (std::size_t k = 0; k < ops.size(); ++k) {
        c.ops.push_back(parse_gate(ops[k], "circuit.ops[" + std::to_string(k) + "]"));
    }
    if (doc.contains("query_count")) {
        const auto stored = require_int(doc, "query_count", root);
        if (stored != c.query_count()) {
            fail_schema("circuit.query_count: stored " + std::to_string(stored) + " but ops contain " +
                        std::to_string(c.query_count()) + " queries");
        }
    }
    try {
        c.validate();
    } catch (const Error &e) {
        fail_schema(e.what());
    }
    return c;
}

VerifierCircuit build_bit_reader(std::size_t proof_len, std::size_t index) {
    check_proof_index(proof_len, index, "build_bit_reader");
    const int width = register_width(proof_len);
    const auto reg = index_register(width);
    VerifierCircuit c;
    c.label = "bit_reader(N=" + std::to_string(proof_len) + ",i=" + std::to_string(index) + ")";
    c.num_qubits = width + 1;
    c.proof_len = proof_len;
    c.output_qubit = 0;
    for (int b = 0; b < width; ++b) {
        if ((index >> b) & 1U) {
            c.ops.push_back(Gate::single(GateKind::kX, qubit_for_bit(reg, b)));
        }
    }
    c.ops.push_back(Gate::standard_query(reg, 0));
    return c;
}

VerifierCircuit build_deutsch_parity(std::size_t proof_len, std::size_t i, std::size_t j) {
    check_proof_index(proof_len, i, "build_deutsch_parity");
    check_proof_index(proof_len, j, "build_deutsch_parity");
    if (i == j) {
        fail("build_deutsch_parity: indices must differ");
    }
    const int width = register_width(proof_len);
    const auto reg = index_register(width);
    const std::size_t diff = i ^ j;
    const int pivot_bit = std::bit_width(diff) - 1;
    const int pivot = qubit_for_bit(reg, pivot_bit);

    // |0> -> (|i> + |j>)/sqrt2: the pivot selects the branch, CNOTs copy it onto
    // the other differing bits, and X gates shift the 0-branch onto i.
    std::vector<Gate> prep;
    prep.push_back(Gate::single(GateKind::kH, pivot));
    for (int b = 0; b < width; ++b) {
        if (b != pivot_bit && ((diff >> b) & 1U)) {
            prep.push_back(Gate::cnot(pivot, qubit_for_bit(reg, b)));
        }
    }
    for (int b = 0; b < width; ++b) {
        if ((i >> b) & 1U) {
            prep.push_back(Gate::single(GateKind::kX, qubit_for_bit(reg, b)));
        }
    }

    VerifierCircuit c;
    c.label = "deutsch_parity(N=" + std::to_string(proof_len) + ",i=" + std::to_string(i) +
              ",j=" + std::to_string(j) + ")";
    c.num_qubits = width + 1;
    c.proof_len = proof_len;
    c.output_qubit = 0;
    c.ops = prep;
    c.ops.push_back(Gate::phase_query(reg));
    c.ops.insert(c.ops.end(), prep.rbegin(), prep.rend());
    c.ops.push_back(Gate::cnot(pivot, 0));
    return c;
}

VerifierCircuit build_weighted_reader(std::size_t proof_len, std::size_t index, double weight) {
    check_proof_index(proof_len, index, "build_weighted_reader");
    if (!(weight >= 0.0 && weight <= 1.0)) {
        fail("build_weighted_reader: weight must lie in [0, 1]");
    }
    const int width = register_width(proof_len);
    const auto reg = index_register(width);
    const int pivot_bit = std::bit_width(index) - 1;
    const int pivot = qubit_for_bit(reg, pivot_bit);

    VerifierCircuit c;
    c.label = "weighted_reader(N=" + std::to_string(proof_len) + ",i=" + std::to_string(index) +
              ",w=" + nlohmann::json(weight).dump() + ")";
    c.num_qubits = width + 1;
    c.proof_len = proof_len;
    c.output_qubit = 0;
    // sqrt(1-w)|0> + sqrt(w)|i>; register value 0 reads as y_0 = 0.
    c.ops.push_back(Gate::ry(2.0 * std::asin(std::sqrt(weight)), pivot));
    for (int b = 0; b < pivot_bit; ++b) {
        if ((index >> b) & 1U) {
            c.ops.push_back(Gate::cnot(pivot, qubit_for_bit(reg, b)));
        }
    }
    c.ops.push_back(Gate::standard_query(reg, 0));
    return c;
}

VerifierCircuit build_constant(std::size_t proof_len, double probability) {
    if (proof_len < 1) {
        fail("build_constant: proof length must be >= 1");
    }
    if (!(probability >= 0.0 && probability <= 1.0)) {
        fail("build_constant: probability must lie in [0, 1]");
    }
    const int width = register_width(proof_len);
    const auto reg = index_register(width);
    const int scratch = width + 1;

    VerifierCircuit c;
    c.label = "constant(N=" + std::to_string(proof_len) + ",p=" + nlohmann::json(probability).dump() + ")";
    c.num_qubits = width + 2;
    c.proof_len = proof_len;
    c.output_qubit = 0;
    for (int q : reg) {
        c.ops.push_back(Gate::single(GateKind::kH, q));
    }
    c.ops.push_back(Gate::standard_query(reg, scratch));
    if (probability > 0.0) {
        c.ops.push_back(Gate::ry(2.0 * std::asin(std::sqrt(probability)), 0));
    }
    return c;
}

}  // namespace qcpcp
