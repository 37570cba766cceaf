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

#include "qcpcp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "qcpcp/bv.hpp"
#include "qcpcp/circuit.hpp"
#include "qcpcp/error.hpp"
#include "qcpcp/grover.hpp"
#include "qcpcp/learner.hpp"
#include "qcpcp/polynomial.hpp"
#include "qcpcp/seed.hpp"
#include "qcpcp/threshold.hpp"

namespace qcpcp {

using nlohmann::json;

namespace {

struct Options {
    std::string circuit;
    double c = 0.0;
    double s = 0.0;
    double delta = 0.1;
    std::uint64_t seed = 0;
    std::uint64_t shots_override = 0;
    int amplify_k = 1;
    int seeds = 1;
    int n = 8;
    std::vector<int> advice{0};
    int max_iterations = -1;
    int trials = 1;
    std::string secret;
    int chunk_bits = 0;
    std::vector<std::string> paths;
    std::string out;
    std::string format = "json";
    bool timing = false;
};

/// A command's result: the JSON report, an optional CSV rendering, and
/// whether its built-in checks held.
struct Outcome {
    json report;
    std::optional<std::string> csv;
    bool checks_pass = true;
};

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        fail_schema("'" + path + "' is not valid JSON: " + e.what());
    }
}

VerifierCircuit load_circuit(const std::string &path) {
    if (path.empty()) {
        fail("--circuit is required");
    }
    try {
        return parse_circuit(read_json_file(path));
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::kSchema) {
            fail_schema("'" + path + "': " + e.what());
        }
        throw;
    }
}

std::string csv_number(double v) { return json(v).dump(); }

std::optional<MultilinearPolynomial> try_extract(const VerifierCircuit &circuit) {
    try {
        return extract_exact(circuit);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::kBudget) {
            throw;
        }
        return std::nullopt;
    }
}

Outcome cmd_extract(const Options &o) {
    const auto circuit = load_circuit(o.circuit);
    return {polynomial_to_json(extract_exact(circuit)), std::nullopt, true};
}

Outcome cmd_learn(const Options &o, bool override_given) {
    if (o.seeds < 1) {
        fail("--seeds must be >= 1");
    }
    const auto circuit = load_circuit(o.circuit);
    const auto params =
        derive_params(o.c, o.s, circuit.query_count(), static_cast<int>(circuit.proof_len), o.delta,
                      override_given ? std::optional<std::uint64_t>(o.shots_override) : std::nullopt);
    const auto exact = try_extract(circuit);

    json runs = json::array();
    std::ostringstream csv;
    csv << "seed,pass,sup_error,max_coefficient_error\n";
    int passes = 0;
    for (int r = 0; r < o.seeds; ++r) {
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(r);
        const auto learned = learn_polynomial(circuit, params, seed);
        json run = learn_result_to_json(learned);
        if (exact) {
            const auto cert = accuracy_certificate(learned.polynomial, *exact, params);
            passes += cert.pass ? 1 : 0;
            run["certificate"] = certificate_to_json(cert);
            csv << seed << "," << (cert.pass ? "true" : "false") << "," << csv_number(cert.sup_error) << ","
                << csv_number(cert.max_coefficient_error) << "\n";
        } else {
            run["certificate"] = nullptr;
            csv << seed << ",,,\n";
        }
        runs.push_back(std::move(run));
    }
    json summary{{"runs", o.seeds}, {"certified", exact.has_value()}};
    if (exact) {
        summary["certificate_passes"] = passes;
        summary["pass_rate"] = static_cast<double>(passes) / o.seeds;
        csv << "summary,pass_rate," << csv_number(static_cast<double>(passes) / o.seeds) << "," << passes << "\n";
    }
    json report{{"command", "learn"},
                {"circuit", o.circuit},
                {"label", circuit.label},
                {"seed", o.seed},
                {"params", params_to_json(params)},
                {"runs", std::move(runs)},
                {"summary", std::move(summary)}};
    if (exact) {
        report["exact_polynomial"] = polynomial_to_json(*exact);
    }
    return {std::move(report), csv.str(), true};
}

Outcome cmd_reduce(const Options &o, bool override_given) {
    const auto circuit = load_circuit(o.circuit);
    ReduceOptions options;
    if (override_given) {
        options.shots_override = o.shots_override;
    }
    options.amplify_k = o.amplify_k;
    const auto result = reduce_and_decide(circuit, o.c, o.s, o.delta, o.seed, options);
    json report = reduce_result_to_json(result);
    report["command"] = "reduce";
    report["circuit"] = o.circuit;
    report["label"] = circuit.label;
    report["seed"] = o.seed;
    report["witness"] = nullptr;
    for (const auto &run : result.runs) {
        if (result.yes && run.decision.witness) {
            report["witness"] = decision_to_json(run.decision, run.instance)["witness"];
            break;
        }
    }
    std::ostringstream csv;
    csv << "run,seed,answer,value,certificate_pass\n";
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
        const auto &run = result.runs[r];
        csv << r << "," << run.seed << "," << (run.decision.yes ? "YES" : "NO") << ","
            << csv_number(std::ldexp(static_cast<double>(run.decision.value_scaled), -run.instance.denominator_log2))
            << "," << (run.certificate ? (run.certificate->pass ? "true" : "false") : "") << "\n";
    }
    return {std::move(report), csv.str(), true};
}

BitString require_secret(const std::string &text) {
    if (text.empty()) {
        fail("--secret must be a non-empty bit string");
    }
    return parse_bits(text);
}

Outcome cmd_bv(const Options &o) {
    const BitString secret = require_secret(o.secret);
    const auto encoded = encode_bv_proof(secret);
    const int l = static_cast<int>(secret.size());
    const BitString decoded = bv_decode(encoded.proof, l, o.seed);
    json report{{"command", "bv"},
                {"seed", o.seed},
                {"secret", to_string(secret)},
                {"proof_len", encoded.proof.size()},
                {"decoded", to_string(decoded)},
                {"queries", build_bv_decoder(l).circuit.query_count()},
                {"success_probability", bv_secret_probability(encoded.proof, secret)},
                {"match", decoded == secret}};
    const bool ok = decoded == secret;
    return {std::move(report), std::nullopt, ok};
}

Outcome cmd_bv_concat(const Options &o) {
    const BitString secret = require_secret(o.secret);
    const auto result = concat_bv_protocol(secret, o.chunk_bits, o.seed);
    json report{{"command", "bv-concat"},
                {"seed", o.seed},
                {"secret", to_string(secret)},
                {"chunk_bits", o.chunk_bits},
                {"chunks", secret.size() / static_cast<std::size_t>(o.chunk_bits)},
                {"decoded", to_string(result.decoded)},
                {"queries", result.queries_used},
                {"chunk_probabilities", result.chunk_probabilities},
                {"match", result.decoded == secret}};
    const bool ok = result.decoded == secret;
    return {std::move(report), std::nullopt, ok};
}

Outcome cmd_or_experiment(const Options &o) {
    if (o.n < 1 || o.n > kMaxGroverBits) {
        fail_budget("--n must lie in 1.." + std::to_string(kMaxGroverBits));
    }
    if (o.trials < 1) {
        fail("--trials must be >= 1");
    }
    std::vector<int> levels = o.advice;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (int a : levels) {
        if (a < 0 || a > o.n) {
            fail("--advice values must lie in 0..n");
        }
    }
    const int max_k = o.max_iterations >= 0 ? o.max_iterations : 2 * grover_reference_iterations(o.n);

    json rows = json::array();
    json levels_out = json::array();
    std::ostringstream csv;
    csv << "advice,k,simulated,closed_form,abs_diff\n";
    std::ostringstream summary_csv;
    summary_csv << "advice,free_bits,k_star,reference,within_factor_2\n";
    bool all_pass = true;
    double max_diff = 0.0;
    std::optional<int> previous_k_star;
    bool monotone = true;
    for (int a : levels) {
        const int free_bits = o.n - a;
        std::vector<double> mean(static_cast<std::size_t>(max_k) + 1, 0.0);
        for (int t = 0; t < o.trials; ++t) {
            const std::uint64_t marked =
                mix64(derive_seed(o.seed, {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(t)})) &
                ((std::uint64_t{1} << o.n) - 1);
            const auto curve = grover_success_curve(o.n, marked, max_k, advice_prefix(marked, o.n, a));
            for (std::size_t k = 0; k < curve.size(); ++k) {
                mean[k] += curve[k] / o.trials;
            }
        }
        std::optional<int> k_star;
        for (int k = 0; k <= max_k; ++k) {
            const double closed = grover_success_closed_form(free_bits, k);
            const double diff = std::abs(mean[static_cast<std::size_t>(k)] - closed);
            max_diff = std::max(max_diff, diff);
            rows.push_back(json{{"advice", a},
                                {"k", k},
                                {"simulated", mean[static_cast<std::size_t>(k)]},
                                {"closed_form", closed},
                                {"abs_diff", diff}});
            csv << a << "," << k << "," << csv_number(mean[static_cast<std::size_t>(k)]) << ","
                << csv_number(closed) << "," << csv_number(diff) << "\n";
            if (!k_star && mean[static_cast<std::size_t>(k)] >= 2.0 / 3.0) {
                k_star = k;
            }
        }
        const int reference = grover_reference_iterations(free_bits);
        json level{{"advice", a}, {"free_bits", free_bits}, {"reference", reference}};
        level["k_star"] = k_star ? json(*k_star) : json(nullptr);
        // With fewer than two free bits there is no sqrt scaling to compare.
        if (free_bits >= 2) {
            const bool within = k_star && 2 * *k_star >= reference && *k_star <= 2 * reference;
            level["within_factor_2"] = within;
            all_pass = all_pass && within;
        } else {
            level["within_factor_2"] = nullptr;
        }
        if (k_star) {
            if (previous_k_star && *k_star > *previous_k_star) {
                monotone = false;
            }
            previous_k_star = k_star;
        }
        summary_csv << a << "," << free_bits << "," << (k_star ? std::to_string(*k_star) : "") << "," << reference
                    << "," << (free_bits >= 2 ? (level["within_factor_2"].get<bool>() ? "true" : "false") : "")
                    << "\n";
        levels_out.push_back(std::move(level));
    }
    const bool closed_ok = max_diff <= 1e-6;
    all_pass = all_pass && closed_ok && monotone;
    json report{{"command", "experiment-or"},
                {"seed", o.seed},
                {"n", o.n},
                {"trials", o.trials},
                {"max_iterations", max_k},
                {"table", std::move(rows)},
                {"levels", std::move(levels_out)},
                {"max_abs_diff", max_diff},
                {"closed_form_within_1e-6", closed_ok},
                {"k_star_monotone", monotone},
                {"pass", all_pass}};
    return {std::move(report), csv.str() + "\n" + summary_csv.str(), all_pass};
}

Outcome cmd_report(const Options &o) {
    if (o.paths.empty()) {
        fail("report: at least one report path is required");
    }
    json reports = json::array();
    std::set<std::string> seen;
    auto add = [&](const json &r) {
        if (seen.insert(r.dump()).second) {
            reports.push_back(r);
        }
    };
    for (const auto &path : o.paths) {
        const json doc = read_json_file(path);
        if (!doc.is_object()) {
            fail_schema("'" + path + "': a report must be a JSON object");
        }
        if (doc.value("merged", false) && doc.contains("reports") && doc["reports"].is_array()) {
            for (const auto &r : doc["reports"]) {
                add(r);
            }
        } else {
            add(doc);
        }
    }
    json seeds = json::array();
    std::set<std::string> seen_seeds;
    for (const auto &r : reports) {
        if (r.contains("seed") && seen_seeds.insert(r["seed"].dump()).second) {
            seeds.push_back(r["seed"]);
        }
    }
    json report{{"command", "report"},
                {"merged", true},
                {"count", reports.size()},
                {"seeds", std::move(seeds)},
                {"reports", std::move(reports)}};
    return {std::move(report), std::nullopt, true};
}

int exit_code_for(const Error &e) { return e.kind() == ErrorKind::kBudget ? kExitBudget : kExitUsage; }

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Polynomial-method reduction toolkit for quantum-query verifiers", "qcpcp"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--seed", o.seed, "Master seed (64-bit)");
        cmd->add_option("--out", o.out, "Write the report to this path instead of stdout");
        cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--timing", o.timing, "Add wall-clock seconds to the report (breaks byte-determinism)");
    };
    auto add_promise = [&](CLI::App *cmd) {
        cmd->add_option("--circuit", o.circuit, "Circuit JSON document")->required();
        cmd->add_option("--c", o.c, "Completeness")->required();
        cmd->add_option("--s", o.s, "Soundness")->required();
        cmd->add_option("--delta", o.delta, "Failure probability in (0, 1/2)");
        return cmd->add_option("--shots-override", o.shots_override, "Shots per subset, of the form 2^k - 1");
    };

    auto *extract = app.add_subcommand("extract", "Exact acceptance polynomial of a circuit");
    extract->add_option("--circuit", o.circuit, "Circuit JSON document")->required();
    add_common(extract);

    auto *learn = app.add_subcommand("learn", "Sampling learner for the acceptance polynomial");
    auto *learn_override = add_promise(learn);
    learn->add_option("--seeds", o.seeds, "Number of consecutive master seeds to sweep");
    add_common(learn);

    auto *reduce = app.add_subcommand("reduce", "Reduce to a threshold instance and decide it");
    auto *reduce_override = add_promise(reduce);
    reduce->add_option("--amplify-k", o.amplify_k, "Odd number of runs combined by majority");
    add_common(reduce);

    auto *bv = app.add_subcommand("bv", "Single-query Bernstein-Vazirani proof decoding");
    bv->add_option("--secret", o.secret, "Secret bit string")->required();
    add_common(bv);

    auto *bv_concat = app.add_subcommand("bv-concat", "Concatenated BV proofs, one query per chunk");
    bv_concat->add_option("--secret", o.secret, "Secret bit string")->required();
    bv_concat->add_option("--chunk-bits", o.chunk_bits, "Bits per chunk")->required();
    add_common(bv_concat);

    auto *orx = app.add_subcommand("experiment-or", "OR-with-advice Grover scaling table");
    orx->add_option("--n", o.n, "Index bits (proof length 2^n)");
    orx->add_option("--advice", o.advice, "Advice bit counts (repeatable)");
    orx->add_option("--max-iterations", o.max_iterations, "Largest Grover iteration count");
    orx->add_option("--trials", o.trials, "Random marked positions per advice level");
    add_common(orx);

    auto *report = app.add_subcommand("report", "Merge report files");
    report->add_option("paths", o.paths, "Report files");
    add_common(report);

    const auto start = std::chrono::steady_clock::now();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Outcome outcome;
        if (extract->parsed()) {
            outcome = cmd_extract(o);
        } else if (learn->parsed()) {
            outcome = cmd_learn(o, learn_override->count() > 0);
        } else if (reduce->parsed()) {
            outcome = cmd_reduce(o, reduce_override->count() > 0);
        } else if (bv->parsed()) {
            outcome = cmd_bv(o);
        } else if (bv_concat->parsed()) {
            outcome = cmd_bv_concat(o);
        } else if (orx->parsed()) {
            outcome = cmd_or_experiment(o);
        } else {
            outcome = cmd_report(o);
        }
        if (o.timing) {
            outcome.report["wall_clock_seconds"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        std::string text;
        if (o.format == "csv") {
            if (!outcome.csv) {
                fail("--format csv is only available for commands that produce tables");
            }
            text = *outcome.csv;
        } else {
            text = outcome.report.dump(2) + "\n";
        }
        if (o.out.empty()) {
            out << text;
        } else {
            std::ofstream file(o.out, std::ios::binary);
            if (!file || !(file << text)) {
                fail("cannot write '" + o.out + "'");
            }
        }
        return outcome.checks_pass ? kExitOk : kExitCheckFailed;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const json::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace qcpcp
