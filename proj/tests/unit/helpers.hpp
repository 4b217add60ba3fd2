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

#include <cmath>
#include <cstdint>
#include <vector>

#include "fracpow/qcore.hpp"
#include "fracpow/rng.hpp"

namespace fracpow::testing {

inline StateVector random_target(std::size_t dim, std::uint64_t seed) {
    CounterRng rng(seed, 77);
    return StateVector::on_register(haar_vector(dim, rng));
}

/// Matrix power by repeated multiplication, independent of any eigendecomposition.
inline CMatrix matrix_power(const CMatrix &u, int e) {
    CMatrix out = CMatrix::Identity(u.rows(), u.cols());
    for (int i = 0; i < e; ++i) {
        out = out * u;
    }
    return out;
}

/// Naive Kronecker product.
inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// 2 sqrt(1 - |<u|v>|^2) straight from the definition (for moderate distances).
inline double naive_trace_distance(const CVector &u, const CVector &v) {
    const double ov = std::abs(u.normalized().dot(v.normalized()));
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - ov * ov));
}

} // namespace fracpow::testing
