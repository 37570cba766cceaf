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

#include "qcpcp/subset.hpp"

#include <limits>

#include "qcpcp/error.hpp"

namespace qcpcp {

namespace {

void extend(std::vector<Subset> &out, Subset &current, int next, int n, int remaining) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int i = next; i <= n - remaining + 1; ++i) {
        current.push_back(i);
        extend(out, current, i + 1, n, remaining - 1);
        current.pop_back();
    }
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > std::numeric_limits<std::uint64_t>::max()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t count_subsets(int n, int max_size) {
    std::uint64_t total = 0;
    for (int k = 0; k <= std::min(n, max_size); ++k) {
        const std::uint64_t b = binomial(n, k);
        if (b > std::numeric_limits<std::uint64_t>::max() - total) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total += b;
    }
    return total;
}

std::vector<Subset> enumerate_subsets(int n, int max_size) {
    std::vector<Subset> out;
    Subset current;
    for (int k = 0; k <= std::min(n, max_size); ++k) {
        extend(out, current, 1, n, k);
    }
    return out;
}

void check_subset(const Subset &s, int n) {
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] < 1 || s[k] > n) {
            fail("subset " + subset_to_string(s) + ": index " + std::to_string(s[k]) + " outside 1.." +
                 std::to_string(n));
        }
        if (k > 0 && s[k] <= s[k - 1]) {
            fail("subset " + subset_to_string(s) + ": indices must be strictly increasing");
        }
    }
}

std::uint64_t subset_mask(const Subset &s) {
    std::uint64_t m = 0;
    for (int i : s) {
        m |= std::uint64_t{1} << (i - 1);
    }
    return m;
}

ClassicalProof indicator_proof(const Subset &s, int n) {
    check_subset(s, n);
    std::vector<std::uint8_t> y(static_cast<std::size_t>(n), 0);
    for (int i : s) {
        y[static_cast<std::size_t>(i - 1)] = 1;
    }
    return ClassicalProof(std::move(y));
}

std::vector<Subset> proper_subsets(const Subset &s) {
    std::vector<Subset> out;
    const std::uint32_t full = (1U << s.size()) - 1;
    for (std::uint32_t m = 0; m < full; ++m) {
        Subset sub;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (m & (1U << k)) {
                sub.push_back(s[k]);
            }
        }
        out.push_back(std::move(sub));
    }
    return out;
}

std::string subset_to_string(const Subset &s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
        out += (k ? "," : "") + std::to_string(s[k]);
    }
    return out + "}";
}

}  // namespace qcpcp
