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
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <vector>

#include "qcpcp/learner.hpp"
#include "qcpcp/polynomial.hpp"
#include "qcpcp/subset.hpp"

namespace qcpcp {

/// Largest variable count `decide` searches exhaustively.
inline constexpr int kMaxDecideVars = 24;

/// Multilinear polynomial threshold instance in exact integer form.
///
/// Every coefficient and the threshold are integers over the common
/// denominator 2^L, so every value P(y) is a point of the lattice 2^{-L} Z and
/// comparisons against a are exact. The grid D is G_{2^L}.
struct ThresholdInstance {
    int n_vars = 1;
    int degree = 0;
    int denominator_log2 = 0;
    std::map<Subset, std::int64_t, SubsetOrder> terms;
    std::int64_t threshold_scaled = 0;

    /// Scaled P(y) with y as a mask, bit (i - 1) holding y_i.
    std::int64_t evaluate_scaled(std::uint64_t y) const;
    double threshold() const { return std::ldexp(static_cast<double>(threshold_scaled), -denominator_log2); }

    bool operator==(const ThresholdInstance &) const = default;
};

/// Scales a polynomial whose coefficients lie on the 2^{-L} lattice. Throws if
/// a coefficient or the threshold is off-grid, or the scaled values could
/// overflow 64-bit sums.
ThresholdInstance make_instance(const MultilinearPolynomial &p, double threshold, int denominator_log2);

/// Instance for a learner output: P_hat, a and D = G_{2^{grid_log2}}.
ThresholdInstance from_learner_output(const LearnResult &learned);

/// Unscaled polynomial of an instance.
MultilinearPolynomial to_polynomial(const ThresholdInstance &instance);

struct Decision {
    bool yes = false;
    /// Lexicographically smallest y (y_1 first) with P(y) >= a, on YES.
    std::optional<std::vector<std::uint8_t>> witness;
    /// P(witness) on YES; max_y P(y) (< a) on NO. Scaled by 2^L.
    std::int64_t value_scaled = 0;
};

/// Exhaustive exact decision of "exists y with P(y) >= a". N <= kMaxDecideVars.
Decision decide(const ThresholdInstance &instance);

struct MajorityVote {
    bool yes = false;
    int yes_votes = 0;
    int runs = 0;
};

/// Majority of `k` (odd) runs; run r receives its index r.
MajorityVote majority_amplify(const std::function<bool(int run)> &decider, int k);

struct ReduceOptions {
    std::optional<std::uint64_t> shots_override;
    int amplify_k = 1;
    LearnOptions learn;
    /// Attach an accuracy certificate when the exact polynomial is extractable.
    bool certify = true;
};

struct ReductionRun {
    std::uint64_t seed = 0;
    LearnResult learned;
    ThresholdInstance instance;
    Decision decision;
    std::optional<AccuracyCertificate> certificate;
};

struct ReduceResult {
    bool yes = false;
    LearnerParams params;
    std::vector<ReductionRun> runs;
    MajorityVote vote;
};

/// derive_params -> learn_polynomial -> from_learner_output -> decide, repeated
/// amplify_k times with run seeds derive_seed(master_seed, {r}) and combined by
/// majority.
ReduceResult reduce_and_decide(const VerifierCircuit &circuit, double c, double s, double delta,
                               std::uint64_t master_seed, const ReduceOptions &options = {});

nlohmann::json instance_to_json(const ThresholdInstance &instance);
ThresholdInstance instance_from_json(const nlohmann::json &doc);
nlohmann::json decision_to_json(const Decision &decision, const ThresholdInstance &instance);
nlohmann::json reduce_result_to_json(const ReduceResult &result);

}  // namespace qcpcp
