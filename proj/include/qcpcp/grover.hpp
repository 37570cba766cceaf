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
#include <optional>
#include <vector>

#include "qcpcp/bv.hpp"
#include "qcpcp/circuit.hpp"

namespace qcpcp {

inline constexpr int kMaxGroverBits = 14;

/// OR over 2^n proof positions with a prefix of the marked position given as
/// advice.
///
/// Search value v in [0, 2^n) addresses proof position v + 1. `marked` is the
/// search value of the single 1 in the proof (absent: all-zero proof). The
/// advice is the top `advice.size()` bits of `marked`; Grover iterates over the
/// remaining 2^{n-a} suffixes, then one standard query checks whether the
/// measured position is marked.
struct GroverOrCircuit {
    VerifierCircuit circuit;
    ClassicalProof proof;
};

GroverOrCircuit build_grover_or(int n, std::optional<std::uint64_t> marked, int iterations, const BitString &advice);

/// Acceptance probability of build_grover_or(n, marked, k, advice) for every
/// k in 0..max_iterations, simulated incrementally from the same gates.
std::vector<double> grover_success_curve(int n, std::optional<std::uint64_t> marked, int max_iterations,
                                         const BitString &advice);

/// sin^2((2k+1) theta) with theta = arcsin(2^{-(n-a)/2}).
double grover_success_closed_form(int free_bits, int iterations);

/// ceil((pi/4) sqrt(2^{free_bits})).
int grover_reference_iterations(int free_bits);

/// Top `advice_bits` bits of the n-bit value `marked`.
BitString advice_prefix(std::uint64_t marked, int n, int advice_bits);

}  // namespace qcpcp
