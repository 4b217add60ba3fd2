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
 * QFT-based eigenvalue estimation: the single-register estimator, the
 * coherent majority-vote estimator over r repetitions, and their exact
 * uncomputation.
 *
 * Register names used by the circuits: "est0" .. "est{r-1}" for the
 * repetitions, "mode" for the reversibly computed majority value. Both are
 * prepended in front of the caller's registers.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracpow/blackbox.hpp"
#include "fracpow/qcore.hpp"

namespace fracpow {

struct AncillaConfig {
    int m = 1; ///< bits of precision
    int r = 1; ///< repetitions, odd

    /// r = 2m + 1.
    static AncillaConfig with_default_r(int m) { return {m, 2 * m + 1}; }

    void validate() const;
    /// m * r estimation qubits plus the m-qubit mode register.
    [[nodiscard]] int ancilla_qubits() const { return m * (r + 1); }
    [[nodiscard]] std::uint64_t grid() const { return std::uint64_t{1} << m; }
};

enum class Uncompute {
    inverse,     ///< exact inverse of the estimation, uses c-U^-1
    inverse_free ///< c-U^(N-j) = U . X c-U^j X; leaves U^N per repetition
};

std::string est_register(int i);
inline constexpr const char *kModeRegister = "mode";

/// QFT on m qubits: entries exp(2 pi i jk / 2^m) / sqrt(2^m).
DenseUnitary qft(int m, const Limits &limits = {});

/// Most frequent entry; ties go to the smallest value.
int mode_of_tuple(std::span<const int> y);

/// |c_l|^2 = |2^-m sum_j exp(2 pi i j (lambda - l/2^m))|^2 for l in [0, 2^m).
std::vector<double> single_estimate_distribution(double lambda, int m);

/// Distribution of mode_of_tuple over r independent draws from `single`.
std::vector<double> mode_distribution(std::span<const double> single, int r);

/// Mass on estimates l with circular distance |l/2^m - lambda| > 1/2^m.
double failure_weight(std::span<const double> estimate_dist, double lambda, int m);

/// Product-form estimation statistics for one eigenphase.
struct EstimationOutcome {
    std::vector<double> per_repetition; ///< each of the r registers, independently
    std::vector<double> mode;           ///< distribution of the mode register
    int mode_value = 0;                 ///< most likely mode
    double est_phase = 0.0;             ///< mode_value / 2^m
    double failure = 0.0;               ///< failure_weight of `mode`
};
EstimationOutcome estimation_outcome(double lambda, const AncillaConfig &cfg);

/**
 * Stage I with one m-bit register: QFT, c-U^j via controlled powers
 * 2^0 .. 2^(m-1), inverse QFT. Charges 2^m - 1 controlled units. The result
 * has register "est0" prepended to s's layout.
 */
StateVector estimate_standard(const ControlledRoute &route, const StateVector &s, int m,
                              std::string_view target = "target", const Limits &limits = {});
StateVector estimate_standard(BlackBox &bb, const StateVector &s, int m, std::string_view target = "target",
                              const Limits &limits = {});

/**
 * r standard estimations into est0..est{r-1} followed by |y>|0> -> |y>|mode(y)>.
 * Charges r (2^m - 1) controlled units.
 */
StateVector estimate_majority(const ControlledRoute &route, const StateVector &s, const AncillaConfig &cfg,
                              std::string_view target = "target", const Limits &limits = {});
StateVector estimate_majority(BlackBox &bb, const StateVector &s, const AncillaConfig &cfg,
                              std::string_view target = "target", const Limits &limits = {});

/// XORs mode(est0..est{r-1}) into the mode register; its own inverse.
void apply_mode_computation(StateVector &s, const AncillaConfig &cfg);

/**
 * Stage III: undoes estimate_majority. With Uncompute::inverse this is the
 * exact inverse (charging r (2^m - 1) to calls_cuinv). With
 * Uncompute::inverse_free each repetition is undone up to a factor U^(2^m) on
 * the target, charging r (2^m - 1) to calls_cu and r to calls_u.
 */
StateVector uncompute_estimation(const ControlledRoute &route, const StateVector &state,
                                 const AncillaConfig &cfg, Uncompute kind = Uncompute::inverse,
                                 std::string_view target = "target", const Limits &limits = {});
StateVector uncompute_estimation(BlackBox &bb, const StateVector &state, const AncillaConfig &cfg,
                                 Uncompute kind = Uncompute::inverse, std::string_view target = "target",
                                 const Limits &limits = {});

/// Total squared amplitude on basis states where any estimation/mode register is non-zero.
double ancilla_weight(const StateVector &state, const AncillaConfig &cfg);

} // namespace fracpow
