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
#include <span>
#include <string>
#include <vector>

#include "qcpcp/simulator.hpp"

namespace qcpcp {

/// Strictly increasing 1-based variable indices.
using Subset = std::vector<int>;

/// Cardinality first, then lexicographic. Every proper subset of S sorts
/// before S under this order.
struct SubsetOrder {
    bool operator()(const Subset &a, const Subset &b) const {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    }
};

/// All S subset of [n] with |S| <= max_size, in SubsetOrder.
std::vector<Subset> enumerate_subsets(int n, int max_size);

/// sum_{k <= max_size} C(n, k), saturating at UINT64_MAX.
std::uint64_t count_subsets(int n, int max_size);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// Throws unless `s` is strictly increasing within 1..n.
void check_subset(const Subset &s, int n);

/// Bit mask with bit (i - 1) set for every i in s.
std::uint64_t subset_mask(const Subset &s);

/// Indicator string y^S: y_i = 1 iff i in S.
ClassicalProof indicator_proof(const Subset &s, int n);

/// Every proper subset of `s` (2^{|s|} - 1 of them, at most 31 elements).
std::vector<Subset> proper_subsets(const Subset &s);

std::string subset_to_string(const Subset &s);

}  // namespace qcpcp
