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

#include "fracpow/power.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "engine.hpp"

namespace fracpow {

namespace {

using detail::SimulatorAccess;

// Above this many direct calls the integer part is applied as one exact power
// (still charged call by call to the ledger).
constexpr std::uint64_t kDirectCallLoop = 4096;

void check_exponent(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw ValidationError("exponent must be finite and non-negative");
    }
}

// U^count on the target, charged as `count` plain calls.
void apply_direct(BlackBox &bb, StateVector &s, std::uint64_t count) {
    if (count <= kDirectCallLoop) {
        for (std::uint64_t i = 0; i < count; ++i) {
            bb.apply_in_place(s, "target");
        }
        return;
    }
    SimulatorAccess::charge(bb, SimulatorAccess::Query::u, count);
    const SpectralFixture &hidden = SimulatorAccess::hidden(bb);
    const double c = static_cast<double>(count);
    std::vector<double> turns(hidden.dim());
    for (std::size_t k = 0; k < turns.size(); ++k) {
        turns[k] = wrap_unit(hidden.eigphases()[k] * c);
    }
    s = apply(spectral_function(hidden, turns), s);
}

std::vector<double> phase_table(const PhaseFunction &f, const AncillaConfig &cfg) {
    std::vector<double> table(cfg.grid());
    const double n = static_cast<double>(cfg.grid());
    for (std::size_t l = 0; l < table.size(); ++l) {
        table[l] = f(static_cast<double>(l) / n);
        if (!std::isfinite(table[l])) {
            throw ValidationError("phase function returned a non-finite value");
        }
    }
    return table;
}

DenseUnitary oracle_for(const BlackBox &bb, const PhaseFunction &f) {
    const SpectralFixture &hidden = SimulatorAccess::hidden(bb);
    std::vector<double> turns(hidden.dim());
    for (std::size_t k = 0; k < turns.size(); ++k) {
        turns[k] = f(hidden.eigphases()[k]);
    }
    return spectral_function(hidden, turns);
}

} // namespace

std::string to_string(PowerMode mode) {
    switch (mode) {
    case PowerMode::standard:
        return "standard";
    case PowerMode::inverse_free:
        return "inverse-free";
    case PowerMode::exact_rational:
        return "exact-rational";
    }
    return "standard";
}

PowerMode parse_power_mode(std::string_view text) {
    if (text == "standard") {
        return PowerMode::standard;
    }
    if (text == "inverse-free" || text == "inverse_free") {
        return PowerMode::inverse_free;
    }
    if (text == "exact-rational" || text == "exact_rational") {
        return PowerMode::exact_rational;
    }
    throw ValidationError("unknown mode '" + std::string(text) + "'");
}

RunResult function_apply(BlackBox &bb, const StateVector &s, const PhaseFunction &f, const AncillaConfig &cfg,
                         const RunOptions &opts) {
    if (!f) {
        throw ValidationError("phase function is empty");
    }
    cfg.validate();
    const StateVector target = engine::as_target(bb, s);
    const QueryLedger before = bb.ledger();
    engine::SandwichProgram program{cfg, phase_table(f, cfg), Uncompute::inverse};
    engine::SandwichResult res = engine::run(bb, target, program, opts);
    return engine::finish(bb, s, std::move(res.projected), res.residual, oracle_for(bb, f), before);
}

RunResult fractional_apply(BlackBox &bb, const StateVector &s, double t, const AncillaConfig &cfg,
                           const RunOptions &opts) {
    check_exponent(t);
    if (t > 1.0) {
        throw ValidationError("fractional_apply needs t in [0, 1]; use power_apply");
    }
    return function_apply(bb, s, [t](double lambda) { return t * lambda; }, cfg, opts);
}

RunResult power_apply(BlackBox &bb, const StateVector &s, double t, const AncillaConfig &cfg,
                      const RunOptions &opts) {
    check_exponent(t);
    const double whole_d = std::floor(t);
    if (whole_d > 9.0e15) {
        throw ValidationError("integer part of t is too large for a double exponent; use exact-rational mode");
    }
    const auto whole = static_cast<std::uint64_t>(whole_d);
    const double frac = t - whole_d;
    const QueryLedger before = bb.ledger();
    StateVector work = engine::as_target(bb, s);
    apply_direct(bb, work, whole);

    const SpectralFixture &hidden = SimulatorAccess::hidden(bb);
    std::vector<double> turns(hidden.dim());
    for (std::size_t k = 0; k < turns.size(); ++k) {
        const double lambda = hidden.eigphases()[k];
        turns[k] = wrap_unit(lambda * whole_d) + frac * lambda;
    }
    const DenseUnitary oracle = spectral_function(hidden, turns);

    if (frac == 0.0) {
        return engine::finish(bb, s, work.amplitudes(), 0.0, oracle, before);
    }
    cfg.validate();
    engine::SandwichProgram program{cfg, phase_table([frac](double lambda) { return frac * lambda; }, cfg),
                                    Uncompute::inverse};
    engine::SandwichResult res = engine::run(bb, work, program, opts);
    return engine::finish(bb, s, std::move(res.projected), res.residual, oracle, before);
}

RunResult inverse_free_apply(BlackBox &bb, const StateVector &s, double t, const AncillaConfig &cfg,
                             const RunOptions &opts) {
    check_exponent(t);
    cfg.validate();
    const double whole_d = std::floor(t);
    const double absorbed = static_cast<double>(cfg.r) * static_cast<double>(cfg.grid());
    if (whole_d < absorbed) {
        std::ostringstream msg;
        msg << "inverse-free mode needs floor(t) >= r * 2^m = " << absorbed << " (got t = " << t << ")";
        throw ValidationError(msg.str());
    }
    if (whole_d > 9.0e15) {
        throw ValidationError("integer part of t is too large for a double exponent");
    }
    const double frac = t - whole_d;
    const QueryLedger before = bb.ledger();
    StateVector work = engine::as_target(bb, s);
    // U commutes with the whole sandwich, so the direct calls go first.
    apply_direct(bb, work, static_cast<std::uint64_t>(whole_d - absorbed));

    engine::SandwichProgram program{cfg, phase_table([frac](double lambda) { return frac * lambda; }, cfg),
                                    Uncompute::inverse_free};
    engine::SandwichResult res = engine::run(bb, work, program, opts);

    const SpectralFixture &hidden = SimulatorAccess::hidden(bb);
    std::vector<double> turns(hidden.dim());
    for (std::size_t k = 0; k < turns.size(); ++k) {
        const double lambda = hidden.eigphases()[k];
        turns[k] = wrap_unit(lambda * whole_d) + frac * lambda;
    }
    RunResult out = engine::finish(bb, s, std::move(res.projected), res.residual, spectral_function(hidden, turns), before);
    if (out.ledger.calls_uinv != 0 || out.ledger.calls_cuinv != 0) {
        throw Error("inverse-free run made an inverse query");
    }
    return out;
}

GapReport gap_check(const SpectralFixture &f, double g_claimed, int m) {
    GapReport rep;
    if (!(g_claimed > 0.0) || g_claimed > 1.0) {
        rep.ok = false;
        rep.resolution_ok = false;
        rep.message = "claimed gap must lie in (0, 1]";
        rep.suggested_m = m;
        return rep;
    }
    for (std::size_t k = 0; k < f.dim(); ++k) {
        const double lambda = f.eigphases()[k];
        if (lambda > 1.0 - g_claimed + 1e-12) {
            rep.violations.push_back({k, lambda});
        }
    }
    rep.resolution_ok = std::ldexp(g_claimed, m) >= 1.0 - 1e-12;
    rep.suggested_m = m;
    while (std::ldexp(g_claimed, rep.suggested_m) < 1.0 - 1e-12) {
        ++rep.suggested_m;
    }
    rep.ok = rep.violations.empty() && rep.resolution_ok;
    std::ostringstream msg;
    if (!rep.violations.empty()) {
        msg << rep.violations.size() << " eigenphase(s) exceed 1 - g = " << 1.0 - g_claimed << " (first: lambda["
            << rep.violations.front().index << "] = " << rep.violations.front().lambda << ")";
    }
    if (!rep.resolution_ok) {
        if (!rep.violations.empty()) {
            msg << "; ";
        }
        msg << "g = " << g_claimed << " is below 1/2^" << m << "; use m >= " << rep.suggested_m;
    }
    rep.message = msg.str();
    return rep;
}

} // namespace fracpow
