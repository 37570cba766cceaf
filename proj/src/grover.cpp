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

#include "qcpcp/grover.hpp"

#include <cmath>
#include <numbers>

#include "qcpcp/error.hpp"

namespace qcpcp {

namespace {

void append_diffusion(std::vector<Gate> &ops, const std::vector<int> &free) {
    if (free.empty()) {
        return;
    }
    for (int q : free) {
        ops.push_back(Gate::single(GateKind::kH, q));
    }
    for (int q : free) {
        ops.push_back(Gate::single(GateKind::kX, q));
    }
    ops.push_back(Gate::single(GateKind::kZ, free.back(), std::vector<int>(free.begin(), free.end() - 1)));
    for (int q : free) {
        ops.push_back(Gate::single(GateKind::kX, q));
    }
    for (int q : free) {
        ops.push_back(Gate::single(GateKind::kH, q));
    }
}

/// Gate blocks of the OR-with-advice search.
///
/// Qubit 0: output. Qubit 1: overflow bit of the index register. Qubits
/// 2..n+1: search value, most significant first. The index register holds
/// v + 1 around every query.
struct GroverBlocks {
    std::vector<Gate> prepare;
    std::vector<Gate> iterate;
    std::vector<Gate> verify;
    ClassicalProof proof;
};

GroverBlocks grover_blocks(int n, std::optional<std::uint64_t> marked, const BitString &advice) {
    if (n < 1 || n > kMaxGroverBits) {
        fail("build_grover_or: n must lie in 1.." + std::to_string(kMaxGroverBits));
    }
    const int a = static_cast<int>(advice.size());
    if (a > n) {
        fail("build_grover_or: " + std::to_string(a) + " advice bits exceed n = " + std::to_string(n));
    }
    const std::uint64_t space = std::uint64_t{1} << n;
    if (marked && *marked >= space) {
        fail("build_grover_or: marked value " + std::to_string(*marked) + " outside [0, 2^n)");
    }
    if (marked && advice_prefix(*marked, n, a) != advice) {
        fail("build_grover_or: advice " + to_string(advice) + " is inconsistent with marked value " +
             std::to_string(*marked));
    }

    std::vector<int> reg;
    for (int q = 1; q <= n + 1; ++q) {
        reg.push_back(q);
    }
    const std::vector<int> search(reg.begin() + 1, reg.end());
    const std::vector<int> free(search.begin() + a, search.end());

    std::vector<std::uint8_t> y(space, 0);
    if (marked) {
        y[*marked] = 1;
    }
    GroverBlocks b{{}, {}, {}, ClassicalProof(std::move(y))};
    for (int k = 0; k < a; ++k) {
        if (advice[k]) {
            b.prepare.push_back(Gate::single(GateKind::kX, search[k]));
        }
    }
    for (int q : free) {
        b.prepare.push_back(Gate::single(GateKind::kH, q));
    }
    append_increment(b.iterate, reg);
    b.iterate.push_back(Gate::phase_query(reg));
    append_decrement(b.iterate, reg);
    append_diffusion(b.iterate, free);
    // Copy y at the measured position into the output qubit.
    append_increment(b.verify, reg);
    b.verify.push_back(Gate::standard_query(reg, 0));
    return b;
}

}  // namespace

BitString advice_prefix(std::uint64_t marked, int n, int advice_bits) {
    BitString out(advice_bits);
    for (int k = 0; k < advice_bits; ++k) {
        out[k] = static_cast<std::uint8_t>((marked >> (n - 1 - k)) & 1U);
    }
    return out;
}

GroverOrCircuit build_grover_or(int n, std::optional<std::uint64_t> marked, int iterations,
                                const BitString &advice) {
    if (iterations < 0) {
        fail("build_grover_or: iteration count must be >= 0");
    }
    GroverBlocks b = grover_blocks(n, marked, advice);
    GroverOrCircuit out{VerifierCircuit{}, b.proof};
    VerifierCircuit &c = out.circuit;
    c.label = "grover_or(n=" + std::to_string(n) + ",a=" + std::to_string(advice.size()) +
              ",k=" + std::to_string(iterations) + ")";
    c.num_qubits = n + 2;
    c.proof_len = b.proof.size();
    c.output_qubit = 0;
    c.ops = b.prepare;
    for (int it = 0; it < iterations; ++it) {
        c.ops.insert(c.ops.end(), b.iterate.begin(), b.iterate.end());
    }
    c.ops.insert(c.ops.end(), b.verify.begin(), b.verify.end());
    return out;
}

std::vector<double> grover_success_curve(int n, std::optional<std::uint64_t> marked, int max_iterations,
                                         const BitString &advice) {
    if (max_iterations < 0) {
        fail("grover_success_curve: iteration count must be >= 0");
    }
    const GroverBlocks b = grover_blocks(n, marked, advice);
    Statevector state(n + 2);
    for (const Gate &g : b.prepare) {
        apply(state, g, b.proof);
    }
    std::vector<double> curve;
    for (int k = 0;; ++k) {
        Statevector measured = state;
        for (const Gate &g : b.verify) {
            apply(measured, g, b.proof);
        }
        curve.push_back(acceptance_probability(measured, 0));
        if (k == max_iterations) {
            break;
        }
        for (const Gate &g : b.iterate) {
            apply(state, g, b.proof);
        }
    }
    return curve;
}

double grover_success_closed_form(int free_bits, int iterations) {
    const double theta = std::asin(std::pow(2.0, -0.5 * free_bits));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

int grover_reference_iterations(int free_bits) {
    return static_cast<int>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(std::ldexp(1.0, free_bits))));
}

}  // namespace qcpcp
