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

#include "qcpcp/threshold.hpp"

#include <cmath>
#include <limits>

#include "qcpcp/error.hpp"
#include "qcpcp/seed.hpp"

namespace qcpcp {

using nlohmann::json;

namespace {

constexpr std::int64_t kScaledLimit = std::int64_t{1} << 62;

std::int64_t scale_exact(double value, int denominator_log2, const std::string &what) {
    const double v = std::ldexp(value, denominator_log2);
    if (!std::isfinite(v) || v != std::trunc(v)) {
        fail("threshold instance: " + what + " = " + json(value).dump() + " is not on the 2^-" +
             std::to_string(denominator_log2) + " grid");
    }
    if (std::abs(v) >= static_cast<double>(kScaledLimit)) {
        fail_budget("threshold instance: " + what + " overflows the scaled integer range");
    }
    return static_cast<std::int64_t>(v);
}

std::vector<std::uint8_t> bits_from_masks(int n, int high_vars, std::uint64_t high, std::uint64_t low) {
    std::vector<std::uint8_t> y(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const bool bit = i <= high_vars ? ((high >> (high_vars - i)) & 1U) : ((low >> (n - i)) & 1U);
        y[static_cast<std::size_t>(i - 1)] = bit ? 1 : 0;
    }
    return y;
}

}  // namespace

std::int64_t ThresholdInstance::evaluate_scaled(std::uint64_t y) const {
    std::int64_t total = 0;
    for (const auto &[s, c] : terms) {
        const std::uint64_t m = subset_mask(s);
        if ((y & m) == m) {
            total += c;
        }
    }
    return total;
}

ThresholdInstance make_instance(const MultilinearPolynomial &p, double threshold, int denominator_log2) {
    if (denominator_log2 < 0 || denominator_log2 > 62) {
        fail("threshold instance: denominator exponent must lie in 0..62");
    }
    ThresholdInstance inst;
    inst.n_vars = p.n_vars();
    inst.degree = p.degree();
    inst.denominator_log2 = denominator_log2;
    __int128 total = 0;
    for (const auto &[s, beta] : p.terms()) {
        const std::int64_t v = scale_exact(beta, denominator_log2, "coefficient of " + subset_to_string(s));
        total += v < 0 ? -static_cast<__int128>(v) : static_cast<__int128>(v);
        if (total >= kScaledLimit) {
            fail_budget("threshold instance: sum of scaled coefficients overflows 62 bits");
        }
        inst.terms.emplace(s, v);
    }
    inst.threshold_scaled = scale_exact(threshold, denominator_log2, "threshold");
    return inst;
}

ThresholdInstance from_learner_output(const LearnResult &learned) {
    return make_instance(learned.polynomial, learned.threshold, learned.grid_log2);
}

MultilinearPolynomial to_polynomial(const ThresholdInstance &instance) {
    MultilinearPolynomial p(instance.n_vars, instance.degree);
    for (const auto &[s, c] : instance.terms) {
        p.set(s, std::ldexp(static_cast<double>(c), -instance.denominator_log2));
    }
    return p;
}

Decision decide(const ThresholdInstance &instance) {
    const int n = instance.n_vars;
    if (n > kMaxDecideVars) {
        fail_budget("decide: exhaustive search limited to N <= " + std::to_string(kMaxDecideVars) + ", got " +
                    std::to_string(n));
    }
    // Split y into a high block y_1..y_h, enumerated in order, and a low block
    // y_{h+1}..y_N tabulated by a zeta transform. Within each block the first
    // variable is the most significant bit, so increasing (high, low) order is
    // lexicographic order on y.
    const int low_vars = std::min(n, 16);
    const int high_vars = n - low_vars;
    struct SplitTerm {
        std::uint64_t high;
        std::uint64_t low;
        std::int64_t coeff;
    };
    std::vector<SplitTerm> split;
    for (const auto &[s, c] : instance.terms) {
        SplitTerm t{0, 0, c};
        for (int i : s) {
            if (i <= high_vars) {
                t.high |= std::uint64_t{1} << (high_vars - i);
            } else {
                t.low |= std::uint64_t{1} << (n - i);
            }
        }
        split.push_back(t);
    }

    Decision out;
    out.value_scaled = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> table(std::size_t{1} << low_vars);
    for (std::uint64_t high = 0; high < (std::uint64_t{1} << high_vars); ++high) {
        std::fill(table.begin(), table.end(), 0);
        for (const auto &t : split) {
            if ((high & t.high) == t.high) {
                table[t.low] += t.coeff;
            }
        }
        for (int b = 0; b < low_vars; ++b) {
            const std::uint64_t bit = std::uint64_t{1} << b;
            for (std::uint64_t m = 0; m < table.size(); ++m) {
                if (m & bit) {
                    table[m] += table[m ^ bit];
                }
            }
        }
        for (std::uint64_t low = 0; low < table.size(); ++low) {
            if (table[low] >= instance.threshold_scaled) {
                out.yes = true;
                out.witness = bits_from_masks(n, high_vars, high, low);
                out.value_scaled = table[low];
                return out;
            }
            out.value_scaled = std::max(out.value_scaled, table[low]);
        }
    }
    return out;
}

MajorityVote majority_amplify(const std::function<bool(int run)> &decider, int k) {
    if (k < 1 || k % 2 == 0) {
        fail("majority_amplify: k must be a positive odd integer, got " + std::to_string(k));
    }
    MajorityVote vote;
    vote.runs = k;
    for (int r = 0; r < k; ++r) {
        vote.yes_votes += decider(r) ? 1 : 0;
    }
    vote.yes = 2 * vote.yes_votes > k;
    return vote;
}

ReduceResult reduce_and_decide(const VerifierCircuit &circuit, double c, double s, double delta,
                               std::uint64_t master_seed, const ReduceOptions &options) {
    circuit.validate();
    ReduceResult out;
    out.params = derive_params(c, s, circuit.query_count(), static_cast<int>(circuit.proof_len), delta,
                               options.shots_override);
    std::optional<MultilinearPolynomial> exact;
    if (options.certify) {
        try {
            exact = extract_exact(circuit);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::kBudget) {
                throw;
            }
        }
    }
    out.vote = majority_amplify(
        [&](int r) {
            ReductionRun run;
            run.seed = derive_seed(master_seed, {static_cast<std::uint64_t>(r)});
            run.learned = learn_polynomial(circuit, out.params, run.seed, options.learn);
            run.instance = from_learner_output(run.learned);
            run.decision = decide(run.instance);
            if (exact) {
                run.certificate = accuracy_certificate(run.learned.polynomial, *exact, out.params);
            }
            out.runs.push_back(std::move(run));
            return out.runs.back().decision.yes;
        },
        options.amplify_k);
    out.yes = out.vote.yes;
    return out;
}

json instance_to_json(const ThresholdInstance &inst) {
    json terms = json::array();
    for (const auto &[s, c] : inst.terms) {
        terms.push_back(json{{"subset", s}, {"coeff_scaled", c}});
    }
    return json{{"n_vars", inst.n_vars},
                {"degree", inst.degree},
                {"denominator_log2", inst.denominator_log2},
                {"terms", std::move(terms)},
                {"threshold_scaled", inst.threshold_scaled}};
}

ThresholdInstance instance_from_json(const json &doc) {
    if (!doc.is_object()) {
        fail_schema("instance: expected an object");
    }
    for (const char *key : {"n_vars", "degree", "denominator_log2", "threshold_scaled"}) {
        if (!doc.contains(key) || !doc[key].is_number_integer()) {
            fail_schema(std::string("instance.") + key + ": missing or not an integer");
        }
    }
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        fail_schema("instance.terms: missing or not an array");
    }
    ThresholdInstance inst;
    inst.n_vars = doc["n_vars"].get<int>();
    inst.degree = doc["degree"].get<int>();
    inst.denominator_log2 = doc["denominator_log2"].get<int>();
    inst.threshold_scaled = doc["threshold_scaled"].get<std::int64_t>();
    if (inst.n_vars < 1 || inst.n_vars > 63 || inst.degree < 0 || inst.denominator_log2 < 0 ||
        inst.denominator_log2 > 62) {
        fail_schema("instance: n_vars, degree or denominator_log2 out of range");
    }
    const json &terms = doc["terms"];
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string path = "instance.terms[" + std::to_string(k) + "]";
        const json &t = terms[k];
        if (!t.is_object() || !t.contains("subset") || !t["subset"].is_array()) {
            fail_schema(path + ".subset: missing or not an array");
        }
        if (!t.contains("coeff_scaled") || !t["coeff_scaled"].is_number_integer()) {
            fail_schema(path + ".coeff_scaled: missing or not an integer");
        }
        Subset s = t["subset"].get<Subset>();
        try {
            check_subset(s, inst.n_vars);
        } catch (const Error &e) {
            fail_schema(path + ".subset: " + e.what());
        }
        if (static_cast<int>(s.size()) > inst.degree) {
            fail_schema(path + ".subset: exceeds degree");
        }
        inst.terms[s] = t["coeff_scaled"].get<std::int64_t>();
    }
    return inst;
}

json decision_to_json(const Decision &d, const ThresholdInstance &inst) {
    std::string witness;
    if (d.witness) {
        for (auto b : *d.witness) {
            witness.push_back(b ? '1' : '0');
        }
    }
    return json{{"answer", d.yes ? "YES" : "NO"},
                {"witness", d.witness ? json(witness) : json(nullptr)},
                {"value_scaled", d.value_scaled},
                {"value", std::ldexp(static_cast<double>(d.value_scaled), -inst.denominator_log2)},
                {"threshold", inst.threshold()}};
}

json reduce_result_to_json(const ReduceResult &r) {
    json runs = json::array();
    for (const auto &run : r.runs) {
        json j{{"seed", run.seed},
               {"polynomial", polynomial_to_json(run.learned.polynomial)},
               {"instance", instance_to_json(run.instance)},
               {"decision", decision_to_json(run.decision, run.instance)}};
        j["certificate"] = run.certificate ? certificate_to_json(*run.certificate) : json(nullptr);
        runs.push_back(std::move(j));
    }
    return json{{"answer", r.yes ? "YES" : "NO"},
                {"params", params_to_json(r.params)},
                {"vote", {{"yes_votes", r.vote.yes_votes}, {"runs", r.vote.runs}}},
                {"runs", std::move(runs)}};
}

}  // namespace qcpcp
