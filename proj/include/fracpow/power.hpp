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
 * Real powers U^t of a black-box unitary by estimate / phase / uncompute,
 * its f(lambda) generalization, the inverse-free variant, gap validation and
 * error measurement against the exact spectral oracle.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracpow/blackbox.hpp"
#include "fracpow/phasest.hpp"
#include "fracpow/qcore.hpp"
#include "fracpow/record.hpp"

namespace fracpow {

enum class PowerMode { standard, inverse_free, exact_rational };

std::string to_string(PowerMode mode);
/// Accepts "standard", "inverse-free" / "inverse_free", "exact-rational" / "exact_rational".
PowerMode parse_power_mode(std::string_view text);

/// Which simulator evaluates the sandwich. Both are exact; `dense` tracks every
/// ancilla qubit, `factored` works per eigenvector of the hidden unitary and so
/// scales to large m * r.
enum class Engine { automatic, dense, factored };

struct RunOptions {
    Engine engine = Engine::automatic;
    /// automatic picks dense up to this many simulated qubits.
    int auto_dense_max_qubits = 18;
    Limits limits;
    /// Build controlled powers from plain U with this reference (forces dense).
    const KitaevControlled *kitaev = nullptr;
};

struct RunResult {
    StateVector out_state;                ///< ancilla-zero branch, renormalized
    QueryLedger ledger;                   ///< calls made by this run only
    double residual_ancilla_weight = 0.0; ///< 1 - |ancilla-zero branch|^2
    double err_vs_oracle = 0.0;           ///< pure trace distance of out_state to oracle * input
};

/// Turns as a function of the eigenphase.
using PhaseFunction = std::function<double(double)>;

/// U^t for t in [0, 1] (t = 1 is accepted for convenience).
RunResult fractional_apply(BlackBox &bb, const StateVector &s, double t, const AncillaConfig &cfg,
                           const RunOptions &opts = {});

/// U applied floor(t) times, then fractional_apply on the remainder.
RunResult power_apply(BlackBox &bb, const StateVector &s, double t, const AncillaConfig &cfg,
                      const RunOptions &opts = {});

/// Stage II phase exp(2 pi i f(l / 2^m)) on mode value l.
RunResult function_apply(BlackBox &bb, const StateVector &s, const PhaseFunction &f, const AncillaConfig &cfg,
                         const RunOptions &opts = {});

/**
 * U^t without any inverse query. Every repetition is uncomputed with
 * c-U^(2^m - j), which leaves U^(2^m) behind, so the r repetitions absorb
 * r 2^m of the integer part: needs floor(t) >= r 2^m.
 */
RunResult inverse_free_apply(BlackBox &bb, const StateVector &s, double t, const AncillaConfig &cfg,
                             const RunOptions &opts = {});

struct GapViolation {
    std::size_t index = 0;
    double lambda = 0.0;
};

struct GapReport {
    bool ok = true;
    std::vector<GapViolation> violations; ///< eigenphases above 1 - g
    bool resolution_ok = true;            ///< g >= 1 / 2^m
    int suggested_m = 0;                  ///< smallest m' >= m with 2^m' >= 1/g
    std::string message;
};

GapReport gap_check(const SpectralFixture &f, double g_claimed, int m);

struct PowerRequest {
    double t = 0.5;
    AncillaConfig cfg = AncillaConfig::with_default_r(4);
    PowerMode mode = PowerMode::standard;
    /// Replaces t * lambda in standard mode when set.
    PhaseFunction phase_fn;
    /// exact_rational: decimal exponent of any size; empty means use t.
    std::string exact_t;
};

/**
 * Runs `req` on n_samples Haar-random inputs drawn from `seed` and records
 * the max / mean error against the oracle, the worst residual ancilla weight
 * and the per-run ledger (identical across samples). exact_rational needs a
 * fixture whose phases are small-denominator fractions.
 */
ExperimentRecord measure_error(const SpectralFixture &f, const PowerRequest &req, int n_samples,
                               std::uint64_t seed, const RunOptions &opts = {});

} // namespace fracpow
