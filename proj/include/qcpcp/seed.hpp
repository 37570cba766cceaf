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
#include <initializer_list>

namespace qcpcp {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives a child seed from a parent seed and a path of identifiers.
///
/// Every inner seed in the project (per run, per subset, per shot) comes from
/// this function, so results depend only on the master seed and the
/// identifiers, never on execution order.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = mix64(parent);
    for (std::uint64_t id : path) {
        s = mix64(s ^ mix64(id + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

/// Uniform double in [0, 1) with 53 random bits taken from the seed.
constexpr double unit_from_seed(std::uint64_t seed) noexcept {
    return static_cast<double>(mix64(seed) >> 11) * 0x1.0p-53;
}

}  // namespace qcpcp
