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

#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qcpcp/simulator.hpp"

namespace qcpcp {

/// A non-adaptive verifier: fixed gates interleaved with proof queries, run
/// from |0^m>, accepting when `output_qubit` is measured as 1. Any instance
/// input is hardcoded into the gates.
struct VerifierCircuit {
    std::string label;
    int num_qubits = 1;
    std::size_t proof_len = 1;
    int output_qubit = 0;
    std::vector<Gate> ops;

    /// Number of query-kind ops (the verifier's q).
    int query_count() const;

    /// Throws qcpcp::Error if any op or the output qubit is inconsistent with
    /// `num_qubits`, or if `proof_len` is zero.
    void validate() const;

    bool operator==(const VerifierCircuit &) const = default;
};

/// Final state U_q O_y ... O_y U_0 |0^m>.
Statevector simulate(const VerifierCircuit &circuit, const ClassicalProof &proof);

/// ||Pi_1 psi_q(y)||^2 on the circuit's output qubit.
double acceptance_probability(const VerifierCircuit &circuit, const ClassicalProof &proof);

nlohmann::json serialize_circuit(const VerifierCircuit &circuit);

/// Validating parse. Errors are qcpcp::Error(kSchema) with a field path such as
/// "ops[2].gate".
VerifierCircuit parse_circuit(const nlohmann::json &doc);

// Fixture verifiers. All use qubit 0 as the output qubit.

/// q = 1; accepts with probability y_i.
VerifierCircuit build_bit_reader(std::size_t proof_len, std::size_t index);

/// q = 1; accepts with probability y_i xor y_j.
VerifierCircuit build_deutsch_parity(std::size_t proof_len, std::size_t i, std::size_t j);

/// q = 1; accepts with probability `weight * y_i`.
VerifierCircuit build_weighted_reader(std::size_t proof_len, std::size_t index, double weight);

/// q = 1; makes one query into a scratch qubit and accepts with `probability`
/// regardless of the proof.
VerifierCircuit build_constant(std::size_t proof_len, double probability);

/// Number of qubits needed to hold the values 0..max_value.
int register_width(std::uint64_t max_value);

}  // namespace qcpcp
