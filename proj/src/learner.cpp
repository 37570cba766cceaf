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

#include "qcpcp/learner.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "qcpcp/error.hpp"
#include "qcpcp/seed.hpp"

namespace qcpcp {

using nlohmann::json;

namespace {

constexpr double kTwo62 = 4611686018427387904.0;

std::string shots_hint() { return "; pass a shots override (--shots-override 2^k-1) to bound the run time"; }

}  // namespace

std::uint64_t hoeffding_shots(double eps, double delta_prime) {
    if (!(eps > 0.0)) {
        fail("hoeffding_shots: eps must be > 0");
    }
    if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
        fail("hoeffding_shots: delta' must lie in (0, 1)");
    }
    const double t = std::log(1.0 / delta_prime) / (2.0 * eps * eps);
    if (!(t < kTwo62)) {
        fail_budget("hoeffding_shots: required shot count overflows" + shots_hint());
    }
    return static_cast<std::uint64_t>(std::ceil(t));
}

std::uint64_t round_up_to_mersenne(std::uint64_t t) {
    const int k = std::max(1, static_cast<int>(std::bit_width(t)));
    if (k >= 64) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return (std::uint64_t{1} << k) - 1;
}

LearnerParams derive_params(double c, double s, int q, int p, double delta,
                            std::optional<std::uint64_t> shots_override) {
    if (!std::isfinite(c) || !std::isfinite(s) || s < 0.0 || c > 1.0) {
        fail("derive_params: need 0 <= s < c <= 1");
    }
    if (c <= s) {
        fail("derive_params: completeness c = " + json(c).dump() + " must exceed soundness s = " + json(s).dump());
    }
    if (!(delta > 0.0 && delta < 0.5)) {
        fail("derive_params: delta must lie in (0, 1/2), got " + json(delta).dump());
    }
    if (q < 1) {
        fail("derive_params: query count q must be >= 1");
    }
    if (p < 1) {
        fail("derive_params: proof length p must be >= 1");
    }

    LearnerParams out;
    out.c = c;
    out.s = s;
    out.q = q;
    out.p = p;
    out.delta = delta;

    const double p2q = std::pow(static_cast<double>(p), 2.0 * q);
    out.eps1 = (c - s) / (4.0 * p2q);
    out.eps2 = out.eps1 / (1.0 + std::ldexp(std::pow(p2q, 2.0 * q), 2 * q - 1));
    out.eps = out.eps2 / 4.0;
    out.delta_prime = delta / ((2.0 * q + 1.0) * p2q);
    if (!(out.eps2 > 0.0) || !std::isfinite(out.eps2)) {
        fail_budget("derive_params: precision underflows double at q = " + std::to_string(q) + ", p = " +
                    std::to_string(p));
    }

    out.hoeffding_real = std::log(1.0 / out.delta_prime) / (2.0 * out.eps * out.eps);
    if (out.hoeffding_real < kTwo62) {
        out.scheduled_shots = round_up_to_mersenne(static_cast<std::uint64_t>(std::ceil(out.hoeffding_real)));
    }
    out.scheduled_bits = static_cast<int>(std::ceil(std::log2(1.0 / (2.0 * out.eps2) + 1.0)));

    if (shots_override) {
        const std::uint64_t t = *shots_override;
        if (t == 0 || t == std::numeric_limits<std::uint64_t>::max() || !std::has_single_bit(t + 1)) {
            fail("derive_params: shots override must be of the form 2^k - 1, got " + std::to_string(t));
        }
        out.shots = t;
        out.shots_overridden = true;
    } else {
        if (!out.scheduled_shots) {
            fail_budget("derive_params: scheduled shot count overflows 64 bits" + shots_hint());
        }
        out.shots = *out.scheduled_shots;
    }
    out.shot_bits = std::countr_zero(out.shots + 1);
    out.bits = std::min(out.scheduled_bits, out.shot_bits);
    out.grid_log2 = 2 * out.bits;
    if (out.grid_log2 > 62) {
        fail_budget("derive_params: grid G_{2^" + std::to_string(out.grid_log2) + "} exceeds 64-bit integers" +
                    shots_hint());
    }

    const double mid = std::ldexp((c + s) / 2.0, out.grid_log2);
    const double lo = std::floor(mid);
    const double chosen = (mid - lo <= (lo + 1.0) - mid) ? lo : lo + 1.0;
    out.threshold_scaled = static_cast<std::int64_t>(chosen);
    out.threshold = std::ldexp(chosen, -out.grid_log2);
    if (!(s < out.threshold && out.threshold < c)) {
        fail("derive_params: grid spacing 2^-" + std::to_string(out.grid_log2) +
             " too coarse to place a threshold strictly between s and c");
    }
    out.effective_eps = std::sqrt(std::log(1.0 / out.delta_prime) / (2.0 * static_cast<double>(out.shots)));
    return out;
}

ClassicalProof fake_proof(const Subset &s, int n) { return indicator_proof(s, n); }

ShotEstimate estimate_acceptance(const VerifierCircuit &circuit, const Subset &s, const LearnerParams &params,
                                 std::uint64_t seed) {
    if (params.shots == 0) {
        fail("estimate_acceptance: params carry no shot count");
    }
    const double p = acceptance_probability(circuit, fake_proof(s, static_cast<int>(circuit.proof_len)));
    ShotEstimate est;
    est.subset = s;
    est.shots = params.shots;
    est.bits = params.bits;
    // Preparing psi_q(y^S) afresh per shot yields i.i.d. Bernoulli(p) outcomes;
    // the state is identical every time, so it is simulated once.
    for (std::uint64_t t = 0; t < params.shots; ++t) {
        est.ones += bernoulli_from_seed(p, derive_seed(seed, {t})) ? 1 : 0;
    }
    est.raw_mean = static_cast<double>(est.ones) / static_cast<double>(est.shots);
    const unsigned __int128 scaled = static_cast<unsigned __int128>(est.ones) << params.bits;
    est.truncated_units = static_cast<std::int64_t>(scaled / est.shots);
    return est;
}

LearnResult learn_polynomial(const VerifierCircuit &circuit, const LearnerParams &params, std::uint64_t master_seed,
                             const LearnOptions &options) {
    circuit.validate();
    const int q = circuit.query_count();
    const int n = static_cast<int>(circuit.proof_len);
    if (params.q != q) {
        fail("learn_polynomial: params were derived for q = " + std::to_string(params.q) + " but the circuit makes " +
             std::to_string(q) + " queries");
    }
    if (params.p != n) {
        fail("learn_polynomial: params were derived for p = " + std::to_string(params.p) +
             " but the circuit's proof length is " + std::to_string(n));
    }
    const std::uint64_t subsets = count_subsets(n, 2 * q);
    if (subsets > options.max_total_shots / params.shots) {
        fail_budget("learn_polynomial: " + std::to_string(subsets) + " subsets x " + std::to_string(params.shots) +
                    " shots exceeds the budget of " + std::to_string(options.max_total_shots) + " shots" +
                    shots_hint());
    }

    LearnResult out;
    out.polynomial = MultilinearPolynomial(n, 2 * q);
    out.threshold = params.threshold;
    out.threshold_scaled = params.threshold_scaled;
    out.grid_log2 = params.grid_log2;
    out.bits = params.bits;
    out.master_seed = master_seed;

    const auto order = enumerate_subsets(n, 2 * q);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const Subset &s = order[rank];
        ShotEstimate est = estimate_acceptance(circuit, s, params, derive_seed(master_seed, {rank}));
        std::int64_t units = est.truncated_units;
        for (const Subset &sub : proper_subsets(s)) {
            units -= out.coefficient_units.at(sub);
        }
        out.coefficient_units.emplace(s, units);
        if (units != 0) {
            out.polynomial.set(s, std::ldexp(static_cast<double>(units), -params.bits));
        }
        out.estimates.push_back(std::move(est));
    }
    return out;
}

AccuracyCertificate accuracy_certificate(const MultilinearPolynomial &learned, const MultilinearPolynomial &exact,
                                         const LearnerParams &params) {
    if (learned.n_vars() != exact.n_vars()) {
        fail("accuracy_certificate: variable counts differ");
    }
    MultilinearPolynomial diff(learned.n_vars(), std::max(learned.degree(), exact.degree()));
    for (const auto &[s, b] : learned.terms()) {
        diff.set(s, b);
    }
    for (const auto &[s, b] : exact.terms()) {
        diff.set(s, diff.coeff(s) - b);
    }
    AccuracyCertificate cert;
    cert.max_coefficient_error = diff.max_abs_coefficient();
    cert.sup_error = uniform_norm(diff);
    cert.tolerance = (params.c - params.s) / 4.0;
    cert.coefficients_within_eps1 = cert.max_coefficient_error <= params.eps1;
    cert.pass = cert.sup_error <= cert.tolerance;
    return cert;
}

json params_to_json(const LearnerParams &p) {
    json j{{"c", p.c},
           {"s", p.s},
           {"q", p.q},
           {"p", p.p},
           {"delta", p.delta},
           {"eps1", p.eps1},
           {"eps2", p.eps2},
           {"eps", p.eps},
           {"delta_prime", p.delta_prime},
           {"hoeffding_real", p.hoeffding_real},
           {"scheduled_shots", p.scheduled_shots ? json(*p.scheduled_shots) : json(nullptr)},
           {"shots", p.shots},
           {"shots_overridden", p.shots_overridden},
           {"shot_bits", p.shot_bits},
           {"scheduled_bits", p.scheduled_bits},
           {"bits", p.bits},
           {"grid_log2", p.grid_log2},
           {"grid_spacing", p.grid_spacing()},
           {"threshold", p.threshold},
           {"threshold_scaled", p.threshold_scaled},
           {"effective_eps", p.effective_eps},
           {"guarantee", p.meets_schedule() ? "schedule" : "override"}};
    return j;
}

json learn_result_to_json(const LearnResult &r) {
    json estimates = json::array();
    for (const auto &e : r.estimates) {
        estimates.push_back(json{{"subset", e.subset},
                                 {"shots", e.shots},
                                 {"ones", e.ones},
                                 {"raw_mean", e.raw_mean},
                                 {"truncated", e.truncated()},
                                 {"truncated_units", e.truncated_units}});
    }
    return json{{"seed", r.master_seed},
                {"estimates", std::move(estimates)},
                {"polynomial", polynomial_to_json(r.polynomial)},
                {"threshold", r.threshold},
                {"grid_log2", r.grid_log2},
                {"grid_spacing", std::ldexp(1.0, -r.grid_log2)}};
}

json certificate_to_json(const AccuracyCertificate &c) {
    return json{{"max_coefficient_error", c.max_coefficient_error},
                {"sup_error", c.sup_error},
                {"tolerance", c.tolerance},
                {"coefficients_within_eps1", c.coefficients_within_eps1},
                {"pass", c.pass}};
}

}  // namespace qcpcp
