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
#include <map>
#include <nlohmann/json.hpp>
#include <span>
#include <vector>

#include "qcpcp/circuit.hpp"
#include "qcpcp/error.hpp"
#include "qcpcp/subset.hpp"

namespace qcpcp {

/// Largest variable count for exhaustive passes over {0,1}^N.
inline constexpr int kMaxExhaustiveVars = 20;

/// P(y) = sum_S beta_S prod_{i in S} y_i over y in {0,1}^N, |S| <= degree.
///
/// Coefficients are stored sparsely; an absent subset has coefficient 0.
class MultilinearPolynomial {
   public:
    using Terms = std::map<Subset, double, SubsetOrder>;

    MultilinearPolynomial(int n_vars, int degree);

    int n_vars() const noexcept { return n_vars_; }
    int degree() const noexcept { return degree_; }
    const Terms &terms() const noexcept { return terms_; }

    /// Sets beta_S; a zero value removes the entry. Throws if S is not a valid
    /// subset of [N] or exceeds the degree bound.
    void set(const Subset &s, double coeff);
    double coeff(const Subset &s) const;

    /// Requires |y| == N.
    double evaluate(std::span<const std::uint8_t> y) const;
    double evaluate(const ClassicalProof &y) const { return evaluate(y.bits()); }
    /// y given as a mask with bit (i - 1) holding y_i.
    double evaluate_mask(std::uint64_t y) const;

    double max_abs_coefficient() const;

    bool operator==(const MultilinearPolynomial &) const = default;

   private:
    int n_vars_;
    int degree_;
    Terms terms_;
};

/// P(y) for every y, indexed by mask (bit i - 1 holds y_i). Zeta transform over
/// the subset lattice; N <= kMaxExhaustiveVars.
std::vector<double> all_values(const MultilinearPolynomial &p);

/// max_y |P(y)|.
double uniform_norm(const MultilinearPolynomial &p);

/// Coefficients below this magnitude are dropped by extract_exact.
inline constexpr double kExtractZeroTolerance = 1e-13;

struct ExtractOptions {
    /// Maximum number of fake-proof simulations.
    std::uint64_t max_subsets = 200000;
};

/// Recovers the acceptance polynomial of `circuit` (degree 2q) from its
/// acceptance probabilities on indicator proofs y^S:
/// beta_S = P(y^S) - sum_{S' proper subset of S} beta_{S'}.
///
/// Exact up to double-precision simulation.
MultilinearPolynomial extract_exact(const VerifierCircuit &circuit, const ExtractOptions &options = {});

/// Same recovery with an explicit visiting order. `order` must list every
/// subset of size <= 2q exactly once with children before parents.
MultilinearPolynomial extract_exact(const VerifierCircuit &circuit, std::span<const Subset> order);

/// (1 + (1 + 2^d)^{d-1}) * norm: bound on |beta_S| for a degree-d polynomial.
double coefficient_bound(int degree, double norm);

/// ceil(log2 C(N, d)) + k: bits that represent every value of P(y) exactly
/// when each coefficient carries k bits.
int representation_bits(int n_vars, int degree, int coefficient_bits);

/// f(l) where f(0) = x and f(l) = x + sum_{i<l} a_i f(i), by direct unrolling.
template <typename T>
T solve_recursion(std::span<const T> a, const T &x, int l) {
    if (l < 0 || static_cast<std::size_t>(l) > a.size()) {
        fail("solve_recursion: need 0 <= l <= |a|");
    }
    std::vector<T> f;
    f.reserve(static_cast<std::size_t>(l) + 1);
    f.push_back(x);
    for (int n = 1; n <= l; ++n) {
        T next = x;
        for (int i = 0; i < n; ++i) {
            next += a[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i)];
        }
        f.push_back(next);
    }
    return f.back();
}

nlohmann::json polynomial_to_json(const MultilinearPolynomial &p);
MultilinearPolynomial polynomial_from_json(const nlohmann::json &doc);

}  // namespace qcpcp
