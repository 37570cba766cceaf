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
#include <optional>
#include <vector>

#include "qcpcp/circuit.hpp"
#include "qcpcp/polynomial.hpp"
#include "qcpcp/subset.hpp"

namespace qcpcp {

/// Parameter schedule of the sampling learner.
///
/// The precision chain is eps1 = (c - s) / (4 p^{2q}),
/// eps2 = eps1 / (1 + 2^{2q-1} (p^{2q})^{2q}), eps = eps2 / 4, with per-estimate
/// failure probability delta' = delta / ((2q + 1) p^{2q}). Shots T satisfy
/// T >= ln(1/delta') / (2 eps^2) and T + 1 = 2^k. Each estimate keeps
/// l = ceil(log2(1/(2 eps2) + 1)) bits. The output grid is D = G_{2^{2l}} and
/// the threshold a is the point of D closest to (c + s) / 2.
struct LearnerParams {
    double c = 0.0;
    double s = 0.0;
    int q = 1;
    int p = 1;
    double delta = 0.0;

    double eps1 = 0.0;
    double eps2 = 0.0;
    double eps = 0.0;
    double delta_prime = 0.0;

    /// ln(1/delta') / (2 eps^2) before rounding.
    double hoeffding_real = 0.0;
    /// T from the schedule (T + 1 a power of two); unset when it overflows 64 bits.
    std::optional<std::uint64_t> scheduled_shots;
    /// Shots actually taken per subset.
    std::uint64_t shots = 0;
    bool shots_overridden = false;
    /// k with shots + 1 = 2^k.
    int shot_bits = 0;
    /// l from the schedule.
    int scheduled_bits = 0;
    /// Retained bits per estimate: min(l, k).
    int bits = 0;
    /// D = G_{2^{grid_log2}}.
    int grid_log2 = 0;
    std::int64_t threshold_scaled = 0;
    double threshold = 0.0;
    /// Hoeffding precision the effective T guarantees at delta'.
    double effective_eps = 0.0;

    double grid_spacing() const { return std::ldexp(1.0, -grid_log2); }
    /// True when the effective T meets the schedule's precision eps.
    bool meets_schedule() const { return effective_eps <= eps * (1.0 + 1e-12); }
};

/// ceil(ln(1/delta') / (2 eps^2)).
std::uint64_t hoeffding_shots(double eps, double delta_prime);

/// Smallest 2^k - 1 >= t.
std::uint64_t round_up_to_mersenne(std::uint64_t t);

/// Builds the schedule. `shots_override`, when set, must be of the form 2^k - 1
/// and replaces T; l is then capped at k.
LearnerParams derive_params(double c, double s, int q, int p, double delta,
                            std::optional<std::uint64_t> shots_override = std::nullopt);

/// Indicator proof y^S: y_i = 1 iff i in S.
ClassicalProof fake_proof(const Subset &s, int n);

struct ShotEstimate {
    Subset subset;
    std::uint64_t shots = 0;
    std::uint64_t ones = 0;
    double raw_mean = 0.0;
    /// floor(raw_mean * 2^l), i.e. the first l bits of the estimate.
    std::int64_t truncated_units = 0;
    int bits = 0;

    double truncated() const { return std::ldexp(static_cast<double>(truncated_units), -bits); }
};

/// T shots of `circuit` on y^S. Shot t uses seed derive_seed(seed, {t}).
ShotEstimate estimate_acceptance(const VerifierCircuit &circuit, const Subset &s, const LearnerParams &params,
                                 std::uint64_t seed);

struct LearnOptions {
    std::uint64_t max_total_shots = 1'000'000'000ULL;
};

struct LearnResult {
    MultilinearPolynomial polynomial{1, 0};
    /// beta_S in units of 2^{-l}.
    std::map<Subset, std::int64_t, SubsetOrder> coefficient_units;
    std::vector<ShotEstimate> estimates;
    double threshold = 0.0;
    std::int64_t threshold_scaled = 0;
    int grid_log2 = 0;
    int bits = 0;
    std::uint64_t master_seed = 0;
};

/// Learns every beta_S, |S| <= 2q, in cardinality order. Subset of rank r
/// (position in SubsetOrder) draws its shots from derive_seed(master_seed, {r}).
LearnResult learn_polynomial(const VerifierCircuit &circuit, const LearnerParams &params,
                             std::uint64_t master_seed, const LearnOptions &options = {});

struct AccuracyCertificate {
    double max_coefficient_error = 0.0;
    double sup_error = 0.0;
    double tolerance = 0.0;
    bool coefficients_within_eps1 = false;
    bool pass = false;
};

/// Compares a learned polynomial against the exact one; passes when
/// ||P_hat - P||_inf <= (c - s) / 4.
AccuracyCertificate accuracy_certificate(const MultilinearPolynomial &learned, const MultilinearPolynomial &exact,
                                         const LearnerParams &params);

nlohmann::json params_to_json(const LearnerParams &params);
nlohmann::json learn_result_to_json(const LearnResult &result);
nlohmann::json certificate_to_json(const AccuracyCertificate &cert);

}  // namespace qcpcp
