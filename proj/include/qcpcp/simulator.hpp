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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcpcp {

using Amplitude = std::complex<double>;

/// Largest register the dense simulator accepts.
inline constexpr int kMaxQubits = 24;

/// Dense statevector over `num_qubits` qubits.
///
/// Qubit 0 is the most significant bit of the basis-state index: the basis
/// state |b_0 b_1 ... b_{m-1}> is stored at index sum_k b_k 2^{m-1-k}.
class Statevector {
   public:
    /// |0...0> on `num_qubits` qubits.
    explicit Statevector(int num_qubits);
    /// Takes ownership of explicit amplitudes; the length must be a power of two.
    explicit Statevector(std::vector<Amplitude> amplitudes);

    /// Computational basis state |index>.
    static Statevector basis(int num_qubits, std::uint64_t index);

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    std::span<Amplitude> amplitudes() noexcept { return amps_; }
    const Amplitude &operator[](std::size_t i) const { return amps_[i]; }
    Amplitude &operator[](std::size_t i) { return amps_[i]; }

    /// Bit mask of `qubit` inside a basis index.
    std::uint64_t mask(int qubit) const noexcept { return std::uint64_t{1} << (num_qubits_ - 1 - qubit); }

    double squared_norm() const noexcept;

   private:
    int num_qubits_;
    std::vector<Amplitude> amps_;
};

/// Classical proof string y_1..y_N, addressed 1-based.
///
/// The oracle is total: any index outside 1..N (including 0) reads as 0.
class ClassicalProof {
   public:
    explicit ClassicalProof(std::vector<std::uint8_t> bits);
    /// Parses a string of '0'/'1' characters; the first character is y_1.
    static ClassicalProof from_string(std::string_view bits);
    /// All-zero proof of length n.
    static ClassicalProof zeros(std::size_t n);

    std::size_t size() const noexcept { return bits_.size(); }
    /// y_i for 1-based i; 0 when i == 0 or i > N.
    std::uint8_t at(std::uint64_t i) const noexcept { return (i == 0 || i > bits_.size()) ? 0 : bits_[i - 1]; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::string to_string() const;

    bool operator==(const ClassicalProof &) const = default;

   private:
    std::vector<std::uint8_t> bits_;
};

enum class GateKind { kH, kX, kZ, kS, kT, kRY, kCNOT, kCZ, kStandardQuery, kPhaseQuery };

std::string_view gate_name(GateKind kind);
bool is_query(GateKind kind);

/// One circuit operation.
///
/// Single-qubit kinds (H, X, Z, S, T, RY) act on `targets[0]` and may carry any
/// number of controls; CNOT and CZ require exactly one control. Query kinds
/// read the proof through `index_qubits` (first listed qubit is the most
/// significant bit of the index value); the standard query XORs the bit into
/// `target`.
struct Gate {
    GateKind kind = GateKind::kH;
    std::vector<int> targets;
    std::vector<int> controls;
    double theta = 0.0;
    std::vector<int> index_qubits;
    int target = -1;

    static Gate single(GateKind kind, int target, std::vector<int> controls = {});
    static Gate ry(double theta, int target, std::vector<int> controls = {});
    static Gate cnot(int control, int target);
    static Gate cz(int control, int target);
    static Gate standard_query(std::vector<int> index_qubits, int target);
    static Gate phase_query(std::vector<int> index_qubits);

    bool operator==(const Gate &) const = default;
};

/// Checks the gate's qubit indices against a register of `num_qubits`.
/// Throws qcpcp::Error naming the gate and the offending index.
void validate_gate(const Gate &gate, int num_qubits);

/// Applies a non-query gate. Throws for query kinds (they need a proof).
void apply_gate(Statevector &state, const Gate &gate);

/// |i>|a> -> |i>|a xor y_i>.
void apply_standard_query(Statevector &state, const ClassicalProof &proof, std::span<const int> index_qubits,
                          int target_qubit);

/// |i> -> (-1)^{y_i} |i>.
void apply_phase_query(Statevector &state, const ClassicalProof &proof, std::span<const int> index_qubits);

/// Applies any gate, dispatching queries to `proof`.
void apply(Statevector &state, const Gate &gate, const ClassicalProof &proof);

/// Probability of measuring `output_qubit` in |1>.
double acceptance_probability(const Statevector &state, int output_qubit);

/// Bernoulli(p) draw determined entirely by `seed`.
bool bernoulli_from_seed(double p, std::uint64_t seed) noexcept;

/// Measures `output_qubit` once; deterministic for a fixed seed.
bool sample_shot(const Statevector &state, int output_qubit, std::uint64_t seed);

/// Probability distribution of the value held by `qubits` (first listed is the MSB).
std::vector<double> register_distribution(const Statevector &state, std::span<const int> qubits);

/// Measures the register formed by `qubits` once; deterministic for a fixed seed.
std::uint64_t sample_register(const Statevector &state, std::span<const int> qubits, std::uint64_t seed);

}  // namespace qcpcp
