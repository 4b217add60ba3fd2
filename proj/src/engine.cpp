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

#include "engine.hpp"

#include <cmath>
#include <algorithm>
#include <map>

namespace fracpow::engine {

namespace {

void check_program(const SandwichProgram &program) {
    program.cfg.validate();
    if (program.phase_turns.size() != program.cfg.grid()) {
        throw DimensionError("phase table must have 2^m entries");
    }
}

} // namespace

SandwichResult run_dense(const ControlledRoute &route, const StateVector &s, const SandwichProgram &program,
                         const Limits &limits) {
    check_program(program);
    BlackBox &bb = route.box();
    if (s.dim() != bb.dim()) {
        throw DimensionError("input state does not have the hidden dimension");
    }
    const int n = bb.qubits();
    StateVector work = s.relabel(RegisterLayout{{"target", n}});
    const KitaevControlled *kitaev = route.kitaev();
    if (kitaev != nullptr) {
        work = kitaev->attach(work, route.reference_register());
    }
    const int tail_qubits = work.layout().total_qubits();
    if (tail_qubits + program.cfg.ancilla_qubits() > limits.max_state_qubits) {
        throw ResourceLimitError("dense sandwich needs " +
                                 std::to_string(tail_qubits + program.cfg.ancilla_qubits()) +
                                 " qubits; limit is " + std::to_string(limits.max_state_qubits));
    }

    StateVector full = estimate_majority(route, work, program.cfg, "target", limits);
    full.apply_phase_table(kModeRegister, program.phase_turns);
    full = uncompute_estimation(route, full, program.cfg, program.uncompute, "target", limits);

    // Ancilla registers are the high bits, so the all-zero branch is the head.
    const auto d = static_cast<Eigen::Index>(bb.dim());
    const CVector &amps = full.amplitudes();
    CVector projected(d);
    if (kitaev == nullptr) {
        projected = amps.head(d);
    } else {
        const CVector &ref = kitaev->reference_state();
        for (Eigen::Index x = 0; x < d; ++x) {
            projected(x) = ref.dot(amps.segment(x * d, d));
        }
    }
    const double kept = projected.squaredNorm();
    return {std::move(projected), std::max(0.0, 1.0 - kept)};
}

Complex sector_amplitude(double lambda, const SandwichProgram &program) {
    const std::vector<double> single = single_estimate_distribution(lambda, program.cfg.m);
    const std::vector<double> modes = mode_distribution(single, program.cfg.r);
    Complex a = 0.0;
    for (std::size_t v = 0; v < modes.size(); ++v) {
        a += modes[v] * phase_turns(program.phase_turns[v]);
    }
    if (program.uncompute == Uncompute::inverse_free) {
        const double grid = static_cast<double>(program.cfg.grid());
        a *= phase_turns(wrap_unit(lambda * grid) * program.cfg.r);
    }
    return a;
}

SandwichResult run_factored(BlackBox &bb, const StateVector &s, const SandwichProgram &program) {
    check_program(program);
    if (s.dim() != bb.dim()) {
        throw DimensionError("input state does not have the hidden dimension");
    }
    using detail::SimulatorAccess;
    const std::uint64_t per_stage = static_cast<std::uint64_t>(program.cfg.r) * (program.cfg.grid() - 1);
    SimulatorAccess::charge(bb, SimulatorAccess::Query::cu, per_stage);
    if (program.uncompute == Uncompute::inverse) {
        SimulatorAccess::charge(bb, SimulatorAccess::Query::cuinv, per_stage);
    } else {
        SimulatorAccess::charge(bb, SimulatorAccess::Query::cu, per_stage);
        SimulatorAccess::charge(bb, SimulatorAccess::Query::u, static_cast<std::uint64_t>(program.cfg.r));
    }

    const SpectralFixture &hidden = SimulatorAccess::hidden(bb);
    const CMatrix &p = hidden.eigvecs().matrix();
    CVector coeffs = p.adjoint() * s.amplitudes();
    std::map<double, Complex> cache;
    for (std::size_t k = 0; k < hidden.dim(); ++k) {
        const double lambda = hidden.eigphases()[k];
        auto it = cache.find(lambda);
        if (it == cache.end()) {
            it = cache.emplace(lambda, sector_amplitude(lambda, program)).first;
        }
        coeffs(static_cast<Eigen::Index>(k)) *= it->second;
    }
    CVector projected = p * coeffs;
    const double kept = projected.squaredNorm();
    return {std::move(projected), std::max(0.0, 1.0 - kept)};
}

StateVector as_target(const BlackBox &bb, const StateVector &s) {
    if (s.dim() != bb.dim()) {
        throw DimensionError("input state does not have the hidden dimension");
    }
    return s.relabel(RegisterLayout{{"target", bb.qubits()}});
}

SandwichResult run(BlackBox &bb, const StateVector &target, const SandwichProgram &program,
                                    const RunOptions &opts) {
    program.cfg.validate();
    const bool needs_inverse = program.uncompute == Uncompute::inverse;
    if (opts.kitaev == nullptr) {
        if (!bb.capabilities().controlled) {
            throw CapabilityError("controlled queries are disabled and no controlled-SWAP reference was given");
        }
        if (needs_inverse && !bb.capabilities().inverse) {
            throw CapabilityError("uncomputation needs the inverse capability or the inverse-free mode");
        }
    } else if (&opts.kitaev->box() != &bb) {
        throw ValidationError("controlled-SWAP reference belongs to a different black box");
    }

    const int tail = bb.qubits() * (opts.kitaev != nullptr ? 2 : 1);
    const int width = program.cfg.ancilla_qubits() + tail;
    Engine engine = opts.engine;
    if (engine == Engine::automatic) {
        engine = (opts.kitaev != nullptr || width <= opts.auto_dense_max_qubits) ? Engine::dense : Engine::factored;
    }
    if (engine == Engine::factored) {
        if (opts.kitaev != nullptr) {
            throw ValidationError("the factored engine cannot simulate a controlled-SWAP reference");
        }
        return run_factored(bb, target, program);
    }
    if (opts.kitaev != nullptr) {
        return run_dense(ControlledRoute(bb, *opts.kitaev), target, program, opts.limits);
    }
    return run_dense(ControlledRoute(bb), target, program, opts.limits);
}

RunResult finish(const BlackBox &bb, const StateVector &input, CVector projected, double residual,
                 const DenseUnitary &oracle, const QueryLedger &before) {
    const double kept = projected.squaredNorm();
    if (!(kept > 1e-300)) {
        throw Error("the ancilla-zero branch vanished");
    }
    const CVector ideal = oracle.matrix() * input.amplitudes();
    const double err = trace_distance(ideal, projected);
    StateVector out = StateVector::normalized(std::move(projected), input.layout());
    return RunResult{std::move(out), bb.ledger() - before, std::clamp(residual, 0.0, 1.0),
                     std::clamp(err, 0.0, 2.0)};
}

} // namespace fracpow::engine
