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

// Internal: two exact evaluators of the estimate / phase / uncompute sandwich.
//
// run_dense simulates every register. run_factored uses the fact that all
// three stages act block-diagonally in the eigenbasis of the hidden unitary:
// on eigenvector k the ancilla-zero amplitude after the sandwich is
//   A_k = sum_v P_k(mode = v) exp(2 pi i phase[v])
// (times exp(2 pi i r 2^m lambda_k) for the inverse-free uncompute), where
// P_k is the exact distribution of the coherent majority vote. Both charge
// the ledger identically.

#include <span>
#include <vector>

#include "fracpow/blackbox.hpp"
#include "fracpow/phasest.hpp"
#include "fracpow/power.hpp"
#include "fracpow/qcore.hpp"

namespace fracpow::engine {

struct SandwichProgram {
    AncillaConfig cfg;
    std::vector<double> phase_turns; ///< Stage II phase per mode value, length 2^m
    Uncompute uncompute = Uncompute::inverse;
};

struct SandwichResult {
    CVector projected; ///< target amplitudes on the all-zero ancilla branch (unnormalized)
    double residual = 0.0;
};

/// `s` must be a single-register state of the hidden dimension.
SandwichResult run_dense(const ControlledRoute &route, const StateVector &s, const SandwichProgram &program,
                         const Limits &limits);

SandwichResult run_factored(BlackBox &bb, const StateVector &s, const SandwichProgram &program);

/// A_k for one eigenphase.
Complex sector_amplitude(double lambda, const SandwichProgram &program);

/// Checks capabilities, picks the engine from opts and runs the program.
SandwichResult run(BlackBox &bb, const StateVector &target, const SandwichProgram &program, const RunOptions &opts);

/// `s` relabelled to the single register "target".
StateVector as_target(const BlackBox &bb, const StateVector &s);

/// RunResult from a projected branch: error against oracle * input, ledger since `before`.
RunResult finish(const BlackBox &bb, const StateVector &input, CVector projected, double residual,
                 const DenseUnitary &oracle, const QueryLedger &before);

} // namespace fracpow::engine
