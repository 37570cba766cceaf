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

#include "qcpcp/bv.hpp"

#include <bit>

#include "qcpcp/error.hpp"
#include "qcpcp/seed.hpp"

namespace qcpcp {

namespace {

std::uint64_t big_endian_value(const BitString &bits) {
    std::uint64_t v = 0;
    for (auto b : bits) {
        v = (v << 1) | b;
    }
    return v;
}

BitString bits_of(std::uint64_t value, int width) {
    BitString out(width);
    for (int k = 0; k < width; ++k) {
        out[k] = static_cast<std::uint8_t>((value >> (width - 1 - k)) & 1U);
    }
    return out;
}

void check_secret_length(std::size_t len, std::string_view who) {
    if (len < 1 || len > static_cast<std::size_t>(kMaxBvSecretBits)) {
        fail(std::string(who) + ": secret length must lie in 1.." + std::to_string(kMaxBvSecretBits) + ", got " +
             std::to_string(len));
    }
}

}  // namespace

BitString parse_bits(std::string_view text) {
    BitString out;
    for (char c : text) {
        if (c != '0' && c != '1') {
            fail("expected a bit string of '0'/'1', got '" + std::string(text) + "'");
        }
        out.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

std::string to_string(const BitString &bits) {
    std::string s;
    for (auto b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

void append_increment(std::vector<Gate> &ops, const std::vector<int> &qubits) {
    // Flip each bit when every less significant bit is 1, most significant first.
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        std::vector<int> controls(qubits.begin() + static_cast<std::ptrdiff_t>(k) + 1, qubits.end());
        ops.push_back(Gate::single(GateKind::kX, qubits[k], std::move(controls)));
    }
}

void append_decrement(std::vector<Gate> &ops, const std::vector<int> &qubits) {
    std::vector<Gate> inc;
    append_increment(inc, qubits);
    ops.insert(ops.end(), inc.rbegin(), inc.rend());
}

BVProof encode_bv_proof(const BitString &secret) {
    check_secret_length(secret.size(), "encode_bv_proof");
    const std::uint64_t x = big_endian_value(secret);
    std::vector<std::uint8_t> y(std::size_t{1} << secret.size());
    for (std::uint64_t z = 0; z < y.size(); ++z) {
        y[z] = static_cast<std::uint8_t>(std::popcount(z & x) & 1);
    }
    return BVProof{secret, ClassicalProof(std::move(y))};
}

BVDecoder build_bv_decoder(int secret_bits) {
    check_secret_length(static_cast<std::size_t>(std::max(secret_bits, 0)), "build_bv_decoder");
    BVDecoder d;
    std::vector<int> reg{0};
    for (int k = 1; k <= secret_bits; ++k) {
        reg.push_back(k);
        d.secret_qubits.push_back(k);
    }
    VerifierCircuit &c = d.circuit;
    c.label = "bv_decoder(l=" + std::to_string(secret_bits) + ")";
    c.num_qubits = secret_bits + 1;
    c.proof_len = std::size_t{1} << secret_bits;
    c.output_qubit = 1;
    for (int q : d.secret_qubits) {
        c.ops.push_back(Gate::single(GateKind::kH, q));
    }
    append_increment(c.ops, reg);
    c.ops.push_back(Gate::phase_query(reg));
    append_decrement(c.ops, reg);
    for (int q : d.secret_qubits) {
        c.ops.push_back(Gate::single(GateKind::kH, q));
    }
    return d;
}

namespace {

Statevector run_decoder(const BVDecoder &d, const ClassicalProof &proof) {
    if (proof.size() != d.circuit.proof_len) {
        fail("bv_decode: proof length " + std::to_string(proof.size()) + " != 2^l = " +
             std::to_string(d.circuit.proof_len));
    }
    return simulate(d.circuit, proof);
}

}  // namespace

double bv_secret_probability(const ClassicalProof &proof, const BitString &secret) {
    const auto d = build_bv_decoder(static_cast<int>(secret.size()));
    const auto dist = register_distribution(run_decoder(d, proof), d.secret_qubits);
    return dist[big_endian_value(secret)];
}

BitString bv_decode(const ClassicalProof &proof, int secret_bits, std::uint64_t seed) {
    const auto d = build_bv_decoder(secret_bits);
    const auto value = sample_register(run_decoder(d, proof), d.secret_qubits, seed);
    return bits_of(value, secret_bits);
}

ConcatDecodeResult concat_bv_protocol(const BitString &secret, int chunk_bits, std::uint64_t seed) {
    if (secret.empty()) {
        fail("concat_bv_protocol: secret must be non-empty");
    }
    check_secret_length(static_cast<std::size_t>(std::max(chunk_bits, 0)), "concat_bv_protocol");
    if (secret.size() % static_cast<std::size_t>(chunk_bits) != 0) {
        fail("concat_bv_protocol: secret length " + std::to_string(secret.size()) +
             " is not divisible by chunk size " + std::to_string(chunk_bits));
    }
    const std::size_t chunks = secret.size() / static_cast<std::size_t>(chunk_bits);
    const std::size_t part_len = std::size_t{1} << chunk_bits;

    // The prover's message: BV proofs of every chunk, back to back.
    std::vector<std::uint8_t> message;
    message.reserve(chunks * part_len);
    for (std::size_t j = 0; j < chunks; ++j) {
        BitString chunk(secret.begin() + static_cast<std::ptrdiff_t>(j * chunk_bits),
                        secret.begin() + static_cast<std::ptrdiff_t>((j + 1) * chunk_bits));
        const auto encoded = encode_bv_proof(chunk);
        message.insert(message.end(), encoded.proof.bits().begin(), encoded.proof.bits().end());
    }

    ConcatDecodeResult out;
    const auto decoder = build_bv_decoder(chunk_bits);
    for (std::size_t j = 0; j < chunks; ++j) {
        ClassicalProof part(std::vector<std::uint8_t>(message.begin() + static_cast<std::ptrdiff_t>(j * part_len),
                                                      message.begin() + static_cast<std::ptrdiff_t>((j + 1) * part_len)));
        const auto state = run_decoder(decoder, part);
        const auto value = sample_register(state, decoder.secret_qubits, derive_seed(seed, {j}));
        const auto bits = bits_of(value, chunk_bits);
        out.decoded.insert(out.decoded.end(), bits.begin(), bits.end());
        BitString chunk(secret.begin() + static_cast<std::ptrdiff_t>(j * chunk_bits),
                        secret.begin() + static_cast<std::ptrdiff_t>((j + 1) * chunk_bits));
        out.chunk_probabilities.push_back(
            register_distribution(state, decoder.secret_qubits)[big_endian_value(chunk)]);
        out.queries_used += decoder.circuit.query_count();
    }
    return out;
}

}  // namespace qcpcp
