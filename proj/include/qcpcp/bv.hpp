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
#include <string>
#include <string_view>
#include <vector>

#include "qcpcp/circuit.hpp"

namespace qcpcp {

/// Bit string x_1..x_l stored as 0/1 bytes.
using BitString = std::vector<std::uint8_t>;

BitString parse_bits(std::string_view text);
std::string to_string(const BitString &bits);

/// Largest secret length accepted by the Bernstein-Vazirani encoder.
inline constexpr int kMaxBvSecretBits = 16;

/// Proof of length 2^l encoding a secret x through f(z) = z.x mod 2.
///
/// z is read as a big-endian integer zbar, and f(z) is stored at the 1-based
/// position zbar + 1.
struct BVProof {
    BitString secret;
    ClassicalProof proof;
};

BVProof encode_bv_proof(const BitString &secret);

/// Single-query decoder for secrets of `secret_bits` bits.
///
/// Layout: qubit 0 is an overflow bit, qubits 1..l hold z (qubit 1 is the most
/// significant). The index register is (overflow, z) holding zbar + 1, built
/// by an increment/decrement pair around the one phase query.
struct BVDecoder {
    VerifierCircuit circuit;
    std::vector<int> secret_qubits;
};

BVDecoder build_bv_decoder(int secret_bits);

/// Probability that the decoder's secret register reads `secret` on `proof`.
double bv_secret_probability(const ClassicalProof &proof, const BitString &secret);

/// Runs the decoder on `proof` and measures the secret register once.
BitString bv_decode(const ClassicalProof &proof, int secret_bits, std::uint64_t seed);

struct ConcatDecodeResult {
    BitString decoded;
    int queries_used = 0;
    /// Probability the decoder assigns to each chunk's true secret.
    std::vector<double> chunk_probabilities;
};

/// Splits `secret` into chunks of `chunk_bits`, sends the concatenation of
/// their BV proofs, and decodes every chunk with one query to its own part.
ConcatDecodeResult concat_bv_protocol(const BitString &secret, int chunk_bits, std::uint64_t seed);

/// Appends gates adding 1 (mod 2^r) to the register `qubits` (MSB first).
void append_increment(std::vector<Gate> &ops, const std::vector<int> &qubits);
/// Inverse of append_increment.
void append_decrement(std::vector<Gate> &ops, const std::vector<int> &qubits);

}  // namespace qcpcp
