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

/**
 * @file
 * Ready-made spectral fixtures and the JSON fixture file format:
 *
 *   {"dim": 2, "eigvecs": [[re, im], ...], "eigphases": [0.0, 0.5], "gap": 0.5}
 *
 * eigvecs lists the dim x dim eigenvector matrix row-major (columns are the
 * eigenvectors); gap is optional and defaults to the natural gap.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "fracpow/qcore.hpp"

namespace fracpow {

/// lambda_k = (k mod 2^m) / 2^m, Haar eigenbasis.
SpectralFixture dyadic_fixture(std::size_t dim, int m, std::uint64_t seed);
/// lambda_k = (k mod 2) / 3, Haar eigenbasis.
SpectralFixture third_fixture(std::size_t dim, std::uint64_t seed);
/// The n-qubit QFT, whose eigenphases lie in {0, 1/4, 1/2, 3/4}.
SpectralFixture qft_fixture(int n, const Limits &limits = {});

SpectralFixture fixture_from_json(const std::string &text);
std::string fixture_to_json(const SpectralFixture &f);
SpectralFixture load_fixture(const std::filesystem::path &path);

} // namespace fracpow
