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

#include "qcpcp/circuit.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "qcpcp/error.hpp"
#include "support/random_circuits.hpp"

using namespace qcpcp;

namespace {

nlohmann::json load_fixture(const std::string &name) {
    std::ifstream in(std::filesystem::path(QCPCP_FIXTURE_DIR) / name);
    if (!in) {
        throw std::runtime_error("missing fixture " + name);
    }
    return nlohmann::json::parse(in);
}

std::string schema_error(const nlohmann::json &doc) {
    try {
        parse_circuit(doc);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kSchema);
        return e.what();
    }
    ADD_FAILURE() << "parse accepted " << doc.dump();
    return {};
}

ClassicalProof proof_from_mask(std::uint32_t mask, std::size_t n) {
    std::vector<std::uint8_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = (mask >> i) & 1U;
    }
    return ClassicalProof(y);
}

}  // namespace

TEST(Circuit, bit_reader_accepts_with_y_i) {
    const auto c = build_bit_reader(4, 3);
    EXPECT_EQ(c.query_count(), 1);
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        const auto y = proof_from_mask(mask, 4);
        EXPECT_NEAR(acceptance_probability(c, y), y.at(3), 1e-12) << y.to_string();
    }
}

TEST(Circuit, deutsch_parity_accepts_with_xor) {
    for (std::size_t i = 1; i <= 5; ++i) {
        for (std::size_t j = i + 1; j <= 5; ++j) {
            const auto c = build_deutsch_parity(5, i, j);
            EXPECT_EQ(c.query_count(), 1);
            for (std::uint32_t mask = 0; mask < 32; ++mask) {
                const auto y = proof_from_mask(mask, 5);
                EXPECT_NEAR(acceptance_probability(c, y), y.at(i) ^ y.at(j), 1e-12);
            }
        }
    }
}

TEST(Circuit, weighted_reader_and_constant) {
    const auto w = build_weighted_reader(3, 2, 0.6);
    const auto c = build_constant(3, 0.5);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        const auto y = proof_from_mask(mask, 3);
        EXPECT_NEAR(acceptance_probability(w, y), 0.6 * y.at(2), 1e-12);
        EXPECT_NEAR(acceptance_probability(c, y), 0.5, 1e-12);
    }
}

TEST(Circuit, serialize_parse_round_trip_on_builders) {
    for (const auto &c : {build_bit_reader(4, 3), build_deutsch_parity(4, 1, 2), build_weighted_reader(6, 5, 0.3),
                          build_constant(4, 0.0)}) {
        const auto doc = serialize_circuit(c);
        const auto back = parse_circuit(doc);
        EXPECT_EQ(back, c);
        EXPECT_EQ(serialize_circuit(back), doc);
        EXPECT_EQ(doc.at("query_count"), c.query_count());
    }
}

TEST(Circuit, serialize_parse_round_trip_on_random_circuits) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto c = qcpcp::testing::random_circuit(rng, {1 + static_cast<int>(i % 3), 1 + static_cast<std::size_t>(i % 8),
                                                     4 + i % 4, 3});
        const auto text = serialize_circuit(c).dump();
        const auto back = parse_circuit(nlohmann::json::parse(text));
        EXPECT_EQ(back, c);
        EXPECT_EQ(serialize_circuit(back).dump(), text);
    }
}

TEST(Circuit, fixtures_parse_and_behave) {
    const auto reader = parse_circuit(load_fixture("bit_reader.json"));
    const auto parity = parse_circuit(load_fixture("parity.json"));
    const auto reject = parse_circuit(load_fixture("constant_reject.json"));
    EXPECT_EQ(reader, build_bit_reader(4, 3));
    EXPECT_EQ(parity, build_deutsch_parity(4, 1, 2));
    EXPECT_EQ(reject, build_constant(4, 0.0));
    for (const auto &c : {reader, parity, reject}) {
        EXPECT_EQ(serialize_circuit(parse_circuit(serialize_circuit(c))), serialize_circuit(c));
    }
}

TEST(Circuit, malformed_fixture_is_rejected) {
    const std::string msg = schema_error(load_fixture("malformed.json"));
    EXPECT_NE(msg.find("ops"), std::string::npos) << msg;
}

TEST(CircuitSchema, unknown_gate_names_the_op) {
    auto doc = serialize_circuit(build_bit_reader(4, 3));
    doc["ops"][0]["gate"] = "SWAP";
    const std::string msg = schema_error(doc);
    EXPECT_NE(msg.find("ops[0].gate"), std::string::npos) << msg;
    EXPECT_NE(msg.find("SWAP"), std::string::npos) << msg;
}

TEST(CircuitSchema, field_errors) {
    const auto good = serialize_circuit(build_deutsch_parity(4, 1, 2));

    auto missing = good;
    missing.erase("qubits");
    EXPECT_NE(schema_error(missing).find("qubits"), std::string::npos);

    auto bad_type = good;
    bad_type["proof_len"] = "four";
    EXPECT_NE(schema_error(bad_type).find("proof_len"), std::string::npos);

    auto zero_len = good;
    zero_len["proof_len"] = 0;
    schema_error(zero_len);

    auto out_of_range = good;
    out_of_range["output_qubit"] = 99;
    EXPECT_NE(schema_error(out_of_range).find("output_qubit"), std::string::npos);

    auto bad_count = good;
    bad_count["query_count"] = 3;
    EXPECT_NE(schema_error(bad_count).find("query_count"), std::string::npos);

    auto bad_target = good;
    for (auto &op : bad_target["ops"]) {
        if (op.contains("targets")) {
            op["targets"] = nlohmann::json::array({42});
            break;
        }
    }
    EXPECT_NE(schema_error(bad_target).find("ops["), std::string::npos);

    EXPECT_FALSE(schema_error(nlohmann::json::array()).empty());
}

TEST(CircuitSchema, query_count_is_optional) {
    auto doc = serialize_circuit(build_bit_reader(4, 3));
    doc.erase("query_count");
    EXPECT_EQ(parse_circuit(doc), build_bit_reader(4, 3));
}

TEST(Circuit, builder_arguments_are_checked) {
    EXPECT_THROW(build_bit_reader(4, 0), Error);
    EXPECT_THROW(build_bit_reader(4, 5), Error);
    EXPECT_THROW(build_deutsch_parity(4, 2, 2), Error);
    EXPECT_THROW(build_weighted_reader(4, 1, 1.5), Error);
    EXPECT_THROW(build_constant(4, -0.1), Error);
}

TEST(Circuit, register_width_examples) {
    EXPECT_EQ(register_width(1), 1);
    EXPECT_EQ(register_width(2), 2);
    EXPECT_EQ(register_width(3), 2);
    EXPECT_EQ(register_width(4), 3);
    EXPECT_EQ(register_width(255), 8);
    EXPECT_EQ(register_width(256), 9);
}
