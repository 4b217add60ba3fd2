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

#include <algorithm>
#include <chrono>
#include <memory>

#include "fracpow/power.hpp"
#include "fracpow/ratspec.hpp"
#include "fracpow/rng.hpp"

namespace fracpow {

namespace {

// Smallest b whose primes cover every denominator of the fixture.
int primes_needed(const SpectralFixture &f) {
    const std::vector<std::int64_t> primes = first_primes(12);
    std::int64_t largest = 1;
    for (const Fraction &frac : fractions_of(f, primes.back())) {
        largest = std::max(largest, frac.den);
    }
    // The first prime >= largest denominator sets p_max.
    const auto covering = std::lower_bound(primes.begin(), primes.end(), largest);
    return static_cast<int>(covering - primes.begin()) + 1;
}

} // namespace

ExperimentRecord measure_error(const SpectralFixture &f, const PowerRequest &req, int n_samples,
                               std::uint64_t seed, const RunOptions &opts) {
    if (n_samples < 1) {
        throw ValidationError("n_samples must be positive");
    }
    const auto start = std::chrono::steady_clock::now();
    Capabilities caps;
    if (req.mode == PowerMode::inverse_free) {
        caps.inverse = false;
    }
    auto hidden = std::make_shared<const SpectralFixture>(f);

    ExperimentRecord rec;
    rec.m = req.cfg.m;
    rec.r = req.cfg.r;
    rec.dim = f.dim();
    rec.gap = f.gap();
    rec.mode = to_string(req.mode);
    rec.seed = seed;

    Exponent exact;
    int b = 0;
    if (req.mode == PowerMode::exact_rational) {
        exact = req.exact_t.empty() ? Exponent::from_double(req.t) : Exponent::parse(req.exact_t);
        rec.t = exact.str();
        b = primes_needed(f);
    } else {
        rec.t = format_real(req.t);
    }

    CounterRng rng(seed, 0x11);
    const RegisterLayout layout{{"target", f.qubits()}};
    double sum = 0.0;
    std::optional<QueryLedger> ledger;
    for (int i = 0; i < n_samples; ++i) {
        const StateVector s = haar_state(layout, rng);
        BlackBox bb(hidden, caps);
        RunResult res = [&] {
            switch (req.mode) {
            case PowerMode::inverse_free:
                return inverse_free_apply(bb, s, req.t, req.cfg, opts);
            case PowerMode::exact_rational:
                return exact_power_apply(bb, b, s, exact, req.cfg, opts);
            case PowerMode::standard:
                break;
            }
            if (req.phase_fn) {
                return function_apply(bb, s, req.phase_fn, req.cfg, opts);
            }
            return power_apply(bb, s, req.t, req.cfg, opts);
        }();
        rec.max_err = std::max(rec.max_err, res.err_vs_oracle);
        rec.residual_ancilla = std::max(rec.residual_ancilla, res.residual_ancilla_weight);
        sum += res.err_vs_oracle;
        if (ledger && !(*ledger == res.ledger)) {
            throw Error("query ledger differs between samples");
        }
        ledger = res.ledger;
    }
    rec.mean_err = sum / n_samples;
    rec.calls_u = ledger->calls_u;
    rec.calls_cu = ledger->calls_cu;
    rec.calls_uinv = ledger->calls_uinv;
    rec.calls_cuinv = ledger->calls_cuinv;
    rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                      .count();
    return rec;
}

} // namespace fracpow
