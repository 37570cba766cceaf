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

#include <cstdint>
#include <random>
#include <vector>

#include "qcpcp/circuit.hpp"
#include "qcpcp/polynomial.hpp"
#include "qcpcp/threshold.hpp"

namespace qcpcp::testing {

struct RandomCircuitSpec {
    int queries = 1;
    std::size_t proof_len = 4;
    int num_qubits = 4;
    int gates_per_layer = 6;
};

/// Random verifier with `queries` query ops (standard or phase) separated by
/// layers of random gates from the full gate set.
VerifierCircuit random_circuit(std::mt19937_64 &rng, const RandomCircuitSpec &spec);

/// Random polynomial with coefficients on the 2^{-denominator_log2} grid.
MultilinearPolynomial random_grid_polynomial(std::mt19937_64 &rng, int n_vars, int degree, int denominator_log2,
                                             int max_units);

/// Independent evaluator: sums monomials in reverse subset order.
double evaluate_reverse(const MultilinearPolynomial &p, std::span<const std::uint8_t> y);

/// Independent threshold oracle: walks {0,1}^N in Gray-code order, updating
/// P(y) by the discrete derivative of the flipped variable.
struct GrayCodeMax {
    std::int64_t max_scaled;
    std::uint64_t argmax_mask;  // bit (i-1) holds y_i
};
GrayCodeMax gray_code_max(const ThresholdInstance &instance);

}  // namespace qcpcp::testing
