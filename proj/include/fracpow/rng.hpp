// Copyright 2026 The fracpow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>

namespace fracpow {

/**
 * Counter-based SplitMix64 generator.
 *
 * Output i of stream (seed, stream) is splitmix64_mix(key + (i + 1) * golden)
 * where key = splitmix64_mix(seed ^ splitmix64_mix(stream)). Normals use the
 * Box-Muller transform on two consecutive uniforms. No platform-defined
 * distribution is involved, so sequences are identical across standard
 * libraries.
 */
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal.
    double normal();
    /// Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

} // namespace fracpow
