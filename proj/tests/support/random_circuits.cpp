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

#include "random_circuits.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace qcpcp::testing {

namespace {

std::vector<int> pick_distinct(std::mt19937_64 &rng, int num_qubits, int count) {
    std::vector<int> all(num_qubits);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(count);
    return all;
}

Gate random_gate(std::mt19937_64 &rng, int m) {
    static constexpr GateKind kinds[] = {GateKind::kH, GateKind::kX,    GateKind::kZ,  GateKind::kS,
                                         GateKind::kT, GateKind::kRY,   GateKind::kCNOT, GateKind::kCZ};
    const GateKind kind = kinds[std::uniform_int_distribution<int>(0, 7)(rng)];
    if (kind == GateKind::kCNOT || kind == GateKind::kCZ) {
        const auto qs = pick_distinct(rng, m, 2);
        return kind == GateKind::kCNOT ? Gate::cnot(qs[0], qs[1]) : Gate::cz(qs[0], qs[1]);
    }
    const int t = std::uniform_int_distribution<int>(0, m - 1)(rng);
    if (kind == GateKind::kRY) {
        return Gate::ry(std::uniform_real_distribution<double>(-M_PI, M_PI)(rng), t);
    }
    return Gate::single(kind, t);
}

}  // namespace

VerifierCircuit random_circuit(std::mt19937_64 &rng, const RandomCircuitSpec &spec) {
    VerifierCircuit c;
    c.label = "random";
    c.num_qubits = spec.num_qubits;
    c.proof_len = spec.proof_len;
    c.output_qubit = std::uniform_int_distribution<int>(0, spec.num_qubits - 1)(rng);
    const int max_width = std::min(spec.num_qubits - 1, register_width(spec.proof_len));
    for (int layer = 0; layer <= spec.queries; ++layer) {
        for (int g = 0; g < spec.gates_per_layer; ++g) {
            c.ops.push_back(random_gate(rng, spec.num_qubits));
        }
        if (layer == spec.queries) {
            break;
        }
        const int width = std::uniform_int_distribution<int>(1, max_width)(rng);
        auto qs = pick_distinct(rng, spec.num_qubits, width + 1);
        const int target = qs.back();
        qs.pop_back();
        if (std::bernoulli_distribution(0.5)(rng)) {
            c.ops.push_back(Gate::standard_query(qs, target));
        } else {
            c.ops.push_back(Gate::phase_query(qs));
        }
    }
    return c;
}

MultilinearPolynomial random_grid_polynomial(std::mt19937_64 &rng, int n_vars, int degree, int denominator_log2,
                                             int max_units) {
    MultilinearPolynomial p(n_vars, degree);
    std::uniform_int_distribution<int> units(-max_units, max_units);
    std::bernoulli_distribution keep(0.6);
    for (const Subset &s : enumerate_subsets(n_vars, degree)) {
        if (keep(rng)) {
            p.set(s, std::ldexp(static_cast<double>(units(rng)), -denominator_log2));
        }
    }
    return p;
}

double evaluate_reverse(const MultilinearPolynomial &p, std::span<const std::uint8_t> y) {
    double total = 0.0;
    const auto &terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        bool on = true;
        for (int i : it->first) {
            on = on && y[static_cast<std::size_t>(i - 1)];
        }
        if (on) {
            total += it->second;
        }
    }
    return total;
}

GrayCodeMax gray_code_max(const ThresholdInstance &instance) {
    const int n = instance.n_vars;
    std::uint64_t y = 0;
    std::int64_t value = 0;
    for (const auto &[s, c] : instance.terms) {
        if (s.empty()) {
            value += c;
        }
    }
    GrayCodeMax best{value, 0};
    for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
        const int var = std::countr_zero(step) + 1;
        const std::uint64_t bit = std::uint64_t{1} << (var - 1);
        // Discrete derivative of P in y_var at the current point.
        std::int64_t delta = 0;
        for (const auto &[s, c] : instance.terms) {
            if (std::find(s.begin(), s.end(), var) == s.end()) {
                continue;
            }
            const std::uint64_t rest = subset_mask(s) & ~bit;
            if ((y & rest) == rest) {
                delta += c;
            }
        }
        if (y & bit) {
            value -= delta;
        } else {
            value += delta;
        }
        y ^= bit;
        if (value > best.max_scaled) {
            best = {value, y};
        }
    }
    return best;
}

}  // namespace qcpcp::testing
