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

#include "qcpcp/polynomial.hpp"

#include <bit>
#include <cmath>
#include <set>

#include "qcpcp/error.hpp"

namespace qcpcp {

using nlohmann::json;

MultilinearPolynomial::MultilinearPolynomial(int n_vars, int degree) : n_vars_(n_vars), degree_(degree) {
    if (n_vars < 1 || n_vars > 63) {
        fail("MultilinearPolynomial: variable count " + std::to_string(n_vars) + " outside 1..63");
    }
    if (degree < 0) {
        fail("MultilinearPolynomial: degree must be >= 0");
    }
}

void MultilinearPolynomial::set(const Subset &s, double coeff) {
    check_subset(s, n_vars_);
    if (static_cast<int>(s.size()) > degree_) {
        fail("MultilinearPolynomial: subset " + subset_to_string(s) + " exceeds degree " + std::to_string(degree_));
    }
    if (!std::isfinite(coeff)) {
        fail("MultilinearPolynomial: coefficient of " + subset_to_string(s) + " is not finite");
    }
    if (coeff == 0.0) {
        terms_.erase(s);
    } else {
        terms_[s] = coeff;
    }
}

double MultilinearPolynomial::coeff(const Subset &s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? 0.0 : it->second;
}

double MultilinearPolynomial::evaluate(std::span<const std::uint8_t> y) const {
    if (y.size() != static_cast<std::size_t>(n_vars_)) {
        fail("evaluate: input length " + std::to_string(y.size()) + " != N = " + std::to_string(n_vars_));
    }
    double total = 0.0;
    for (const auto &[s, beta] : terms_) {
        bool on = true;
        for (int i : s) {
            on = on && y[static_cast<std::size_t>(i - 1)] != 0;
        }
        if (on) {
            total += beta;
        }
    }
    return total;
}

double MultilinearPolynomial::evaluate_mask(std::uint64_t y) const {
    double total = 0.0;
    for (const auto &[s, beta] : terms_) {
        const std::uint64_t m = subset_mask(s);
        if ((y & m) == m) {
            total += beta;
        }
    }
    return total;
}

double MultilinearPolynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto &[s, beta] : terms_) {
        m = std::max(m, std::abs(beta));
    }
    return m;
}

std::vector<double> all_values(const MultilinearPolynomial &p) {
    if (p.n_vars() > kMaxExhaustiveVars) {
        fail_budget("exhaustive evaluation limited to N <= " + std::to_string(kMaxExhaustiveVars) + ", got " +
                    std::to_string(p.n_vars()));
    }
    std::vector<double> f(std::size_t{1} << p.n_vars(), 0.0);
    for (const auto &[s, beta] : p.terms()) {
        f[subset_mask(s)] += beta;
    }
    for (int b = 0; b < p.n_vars(); ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        for (std::uint64_t m = 0; m < f.size(); ++m) {
            if (m & bit) {
                f[m] += f[m ^ bit];
            }
        }
    }
    return f;
}

double uniform_norm(const MultilinearPolynomial &p) {
    double norm = 0.0;
    for (double v : all_values(p)) {
        norm = std::max(norm, std::abs(v));
    }
    return norm;
}

namespace {

MultilinearPolynomial extract_in_order(const VerifierCircuit &circuit, std::span<const Subset> order) {
    circuit.validate();
    const int n = static_cast<int>(circuit.proof_len);
    const int degree = 2 * circuit.query_count();
    std::map<Subset, double, SubsetOrder> beta;
    for (const Subset &s : order) {
        if (beta.count(s)) {
            fail("extract_exact: subset " + subset_to_string(s) + " visited twice");
        }
        double value = acceptance_probability(circuit, indicator_proof(s, n));
        for (const Subset &sub : proper_subsets(s)) {
            auto it = beta.find(sub);
            if (it == beta.end()) {
                fail("extract_exact: subset " + subset_to_string(s) + " visited before its subset " +
                     subset_to_string(sub));
            }
            value -= it->second;
        }
        beta.emplace(s, value);
    }
    if (beta.size() != count_subsets(n, degree)) {
        fail("extract_exact: order covers " + std::to_string(beta.size()) + " subsets, expected " +
             std::to_string(count_subsets(n, degree)));
    }
    MultilinearPolynomial p(n, degree);
    for (const auto &[s, b] : beta) {
        if (std::abs(b) > kExtractZeroTolerance) {
            p.set(s, b);
        }
    }
    return p;
}

void check_extract_budget(const VerifierCircuit &circuit, std::uint64_t max_subsets) {
    const int q = circuit.query_count();
    const int n = static_cast<int>(circuit.proof_len);
    if (circuit.proof_len > static_cast<std::size_t>(kMaxExhaustiveVars)) {
        fail_budget("extract_exact: proof length " + std::to_string(circuit.proof_len) + " exceeds " +
                    std::to_string(kMaxExhaustiveVars));
    }
    if (q > 3) {
        fail_budget("extract_exact: " + std::to_string(q) + " queries exceeds the limit of 3");
    }
    const std::uint64_t needed = count_subsets(n, 2 * q);
    if (needed > max_subsets) {
        fail_budget("extract_exact: " + std::to_string(needed) + " fake proofs exceed the budget of " +
                    std::to_string(max_subsets));
    }
}

}  // namespace

MultilinearPolynomial extract_exact(const VerifierCircuit &circuit, const ExtractOptions &options) {
    check_extract_budget(circuit, options.max_subsets);
    const auto order = enumerate_subsets(static_cast<int>(circuit.proof_len), 2 * circuit.query_count());
    return extract_in_order(circuit, order);
}

MultilinearPolynomial extract_exact(const VerifierCircuit &circuit, std::span<const Subset> order) {
    check_extract_budget(circuit, ExtractOptions{}.max_subsets);
    return extract_in_order(circuit, order);
}

double coefficient_bound(int degree, double norm) {
    if (degree < 1) {
        fail("coefficient_bound: degree must be >= 1");
    }
    if (!(norm >= 0.0)) {
        fail("coefficient_bound: norm must be >= 0");
    }
    return (1.0 + std::pow(1.0 + std::ldexp(1.0, degree), degree - 1)) * norm;
}

int representation_bits(int n_vars, int degree, int coefficient_bits) {
    if (degree < 0 || degree > n_vars) {
        fail("representation_bits: need 0 <= d <= N");
    }
    const std::uint64_t c = binomial(n_vars, degree);
    // ceil(log2 c) for c >= 1.
    const int log_bits = c <= 1 ? 0 : static_cast<int>(std::bit_width(c - 1));
    return log_bits + coefficient_bits;
}

json polynomial_to_json(const MultilinearPolynomial &p) {
    json terms = json::array();
    for (const auto &[s, beta] : p.terms()) {
        terms.push_back(json{{"subset", s}, {"coeff", beta}});
    }
    return json{{"n_vars", p.n_vars()}, {"degree", p.degree()}, {"terms", std::move(terms)}};
}

MultilinearPolynomial polynomial_from_json(const json &doc) {
    if (!doc.is_object()) {
        fail_schema("polynomial: expected an object");
    }
    for (const char *key : {"n_vars", "degree"}) {
        if (!doc.contains(key) || !doc[key].is_number_integer()) {
            fail_schema(std::string("polynomial.") + key + ": missing or not an integer");
        }
    }
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        fail_schema("polynomial.terms: missing or not an array");
    }
    try {
        MultilinearPolynomial p(doc["n_vars"].get<int>(), doc["degree"].get<int>());
        const json &terms = doc["terms"];
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const std::string path = "polynomial.terms[" + std::to_string(k) + "]";
            const json &t = terms[k];
            if (!t.is_object() || !t.contains("subset") || !t["subset"].is_array()) {
                fail_schema(path + ".subset: missing or not an array");
            }
            if (!t.contains("coeff") || !t["coeff"].is_number()) {
                fail_schema(path + ".coeff: missing or not a number");
            }
            Subset s;
            for (const json &e : t["subset"]) {
                if (!e.is_number_integer()) {
                    fail_schema(path + ".subset: expected integers");
                }
                s.push_back(e.get<int>());
            }
            if (p.terms().count(s)) {
                fail_schema(path + ".subset: duplicate subset " + subset_to_string(s));
            }
            p.set(s, t["coeff"].get<double>());
        }
        return p;
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::kSchema) {
            throw;
        }
        fail_schema(std::string("polynomial: ") + e.what());
    }
}

}  // namespace qcpcp
