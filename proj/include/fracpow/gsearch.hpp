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
 * Amplitude amplification toward an unknown subspace from a maximally
 * entangled start, estimation of the subspace dimension, and the
 * error-magnification experiment for repeated approximate square roots.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "fracpow/phasest.hpp"
#include "fracpow/power.hpp"
#include "fracpow/qcore.hpp"

namespace fracpow {

/// Phase flip on the span of the given orthonormal columns.
class FlagOracle {
  public:
    /// Columns must be orthonormal; 1 <= d <= N.
    explicit FlagOracle(CMatrix flagged);
    /// Eigenvectors `indices` of the fixture.
    static FlagOracle from_fixture(const SpectralFixture &f, const std::vector<std::size_t> &indices);

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(flagged_.rows()); }
    [[nodiscard]] std::size_t flagged_dim() const { return static_cast<std::size_t>(flagged_.cols()); }
    [[nodiscard]] const CMatrix &flagged() const { return flagged_; }
    /// Projector onto the flagged span.
    [[nodiscard]] CMatrix projector() const { return flagged_ * flagged_.adjoint(); }
    /// I - 2 projector().
    [[nodiscard]] DenseUnitary unitary() const;

  private:
    CMatrix flagged_;
};

/**
 * Q = -A U_0 A^-1 O with U_0 = I - 2|0><0|. When A acts on N^2 dimensions the
 * oracle is extended as O (x) I.
 */
DenseUnitary search_iterate(const DenseUnitary &a, const FlagOracle &oracle, const Limits &limits = {});

/// |x>|0> -> sum_x |x>|x> / sqrt(N) after Hadamards: H^n on the first register, then CNOTs.
DenseUnitary max_entangler(int qubits, const Limits &limits = {});

struct SearchRun {
    int k = 0;
    double theta = 0.0;        ///< arcsin(sqrt(d / N))
    double success_prob = 0.0; ///< |<target|Q^k A|0>|^2
    double predicted = 0.0;    ///< sin^2((2k + 1) theta)
    StateVector out_state;     ///< N^2-dimensional, registers "sys" and "copy"
};

/**
 * k iterates of Q = -A U_0 A^-1 (O (x) I) on the maximally entangled state,
 * evaluated on the N x N amplitude matrix (O (x) I acts as left
 * multiplication, A U_0 A^-1 = I - 2|Phi><Phi|). Target state:
 * sum_{j<d} |phi_j>|phi_j^*> / sqrt(d).
 */
SearchRun entangled_search(const FlagOracle &oracle, int k);
SearchRun entangled_search(const SpectralFixture &f, const std::vector<std::size_t> &flagged, int k);

struct DimensionEstimate {
    int estimate = 0;               ///< most likely round(N sin^2(pi l / 2^p))
    double prob_within_one = 0.0;   ///< measured probability that |estimate - d| <= 1
    std::vector<double> outcome_distribution; ///< over the 2^p estimation outcomes
};

/**
 * Phase estimation with `bits` bits of Q on the entangled start state (Q built
 * with the maximal entangler). Simulated densely on bits + 2 log2(N) qubits.
 */
DimensionEstimate estimate_subspace_dim(const FlagOracle &oracle, int bits, const Limits &limits = {});

/// dim 2^m, eigenvalue exp(2 pi i j / 2^m) once each, Haar eigenbasis.
SpectralFixture roots_of_unity_fixture(int m, std::uint64_t seed);

struct MagnifyConfig {
    int m = 5;
    int r = 0;           ///< 0 means 2m + 1
    int ell = 0;         ///< theta = 2 pi ell / 2^m - epsilon
    double epsilon = -1; ///< radians; negative means 1 / 2^(m+1)
    bool exact_root = false;
    std::uint64_t seed = 1;
};

struct MagnifyRow {
    int k = 0;
    double error_prob = 0.0;
    double predicted = 0.0;        ///< sin^2((2k + 1) theta_d) for the flagged count
    std::size_t flagged = 0;       ///< eigenvectors of U_1 U_2 within the window of -1
    double discarded_weight = 0.0; ///< largest ancilla weight dropped when forming U_2
};

/**
 * U_1 = exact (e^{i theta} U)^(-1/2), U_2 = the estimated square root
 * projected onto the ancilla-zero branch and renormalized per eigenvector.
 * Eigenvectors of U_1 U_2 whose phase is within pi / 2^(m-1) of pi are
 * flagged and searched for from the entangled start; error_prob is the
 * flagged success probability after k iterates.
 */
std::vector<MagnifyRow> magnification_experiment(const MagnifyConfig &cfg, const std::vector<int> &k_list);

} // namespace fracpow
