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
 * Query-counted black box over a hidden unitary, plus the controlled-SWAP
 * construction of a controlled black box from an uncontrolled one.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "fracpow/qcore.hpp"

namespace fracpow {

/// Oracle invocations, in units of one application of U (or U^-1).
struct QueryLedger {
    std::uint64_t calls_u = 0;
    std::uint64_t calls_cu = 0;
    std::uint64_t calls_uinv = 0;
    std::uint64_t calls_cuinv = 0;

    /// calls_cu + calls_cuinv.
    [[nodiscard]] std::uint64_t controlled_units() const { return calls_cu + calls_cuinv; }
    [[nodiscard]] std::uint64_t total() const { return calls_u + calls_cu + calls_uinv + calls_cuinv; }

    friend bool operator==(const QueryLedger &, const QueryLedger &) = default;
    friend QueryLedger operator-(const QueryLedger &a, const QueryLedger &b);
};

struct Capabilities {
    bool plain = true;
    bool controlled = true;
    bool inverse = true;
};

class BlackBox;

namespace detail {
/// Simulator-side access to the hidden unitary. Algorithm code never uses
/// this; the exact evaluators and error measurement do.
struct SimulatorAccess {
    static const SpectralFixture &hidden(const BlackBox &bb);
    enum class Query { u, cu, uinv, cuinv };
    /// Charges the ledger with the same capability checks as a real call.
    static void charge(BlackBox &bb, Query q, std::uint64_t units);
};
} // namespace detail

/**
 * Wraps a hidden SpectralFixture. Every apply variant increments exactly its
 * own ledger counter; a disabled capability makes its operations throw
 * CapabilityError.
 *
 * Not thread-safe: a BlackBox and its ledger belong to one run.
 */
class BlackBox {
  public:
    explicit BlackBox(SpectralFixture hidden, Capabilities caps = {});
    explicit BlackBox(std::shared_ptr<const SpectralFixture> hidden, Capabilities caps = {});

    [[nodiscard]] std::size_t dim() const { return hidden_->dim(); }
    [[nodiscard]] int qubits() const { return hidden_->qubits(); }
    [[nodiscard]] const QueryLedger &ledger() const { return ledger_; }
    void reset_ledger() { ledger_ = {}; }
    [[nodiscard]] const Capabilities &capabilities() const { return caps_; }

    /// U on `target`; calls_u += 1.
    [[nodiscard]] StateVector apply(const StateVector &s, std::string_view target);
    /// U^-1 on `target`; calls_uinv += 1.
    [[nodiscard]] StateVector inverse_apply(const StateVector &s, std::string_view target);
    /// c-U^j with a single control qubit; calls_cu += j.
    [[nodiscard]] StateVector controlled_power(std::uint64_t j, const StateVector &s,
                                               const QubitRef &control, std::string_view target);
    /// c-U^-j; calls_cuinv += j.
    [[nodiscard]] StateVector controlled_inverse_power(std::uint64_t j, const StateVector &s,
                                                       const QubitRef &control, std::string_view target);

    void apply_in_place(StateVector &s, std::string_view target);
    void inverse_apply_in_place(StateVector &s, std::string_view target);
    void controlled_power_in_place(std::uint64_t j, StateVector &s, const QubitRef &control,
                                   std::string_view target);
    void controlled_inverse_power_in_place(std::uint64_t j, StateVector &s, const QubitRef &control,
                                           std::string_view target);

  private:
    friend struct detail::SimulatorAccess;

    void require(bool enabled, const char *what) const;
    void check_target(const StateVector &s, std::string_view target) const;
    /// U^e for integer e (negative for inverses), cached.
    const DenseUnitary &power(std::int64_t e);

    std::shared_ptr<const SpectralFixture> hidden_;
    Capabilities caps_;
    QueryLedger ledger_;
    std::map<std::int64_t, DenseUnitary> powers_;
};

/// Reference register contents for the controlled-SWAP construction.
struct KitaevReference {
    /// A known state of the hidden dimension (typically an eigenvector).
    static KitaevReference pure(CVector state) { return {std::move(state), std::nullopt}; }
    /// Maximally mixed reference, purified by sampling one eigenvector.
    static KitaevReference mixed(std::uint64_t seed) { return {CVector(), seed}; }

    CVector state;
    std::optional<std::uint64_t> mixed_seed;
};

/**
 * Controlled U built from plain U and a retained reference register:
 * c-SWAP(target, reference), U on reference, c-SWAP(target, reference).
 * With an eigenvector reference of phase lambda this acts as
 *   |0>|x>|psi> -> exp(2 pi i lambda) |0>|x>|psi>,   |1>|x>|psi> -> |1>(U|x>)|psi>,
 * i.e. exp(2 pi i lambda) c-(exp(-2 pi i lambda) U). The reference register is
 * kept for the whole computation so every use shares one phase.
 */
class KitaevControlled {
  public:
    KitaevControlled(BlackBox &bb, KitaevReference reference);

    [[nodiscard]] BlackBox &box() const { return *bb_; }
    [[nodiscard]] const CVector &reference_state() const { return reference_; }
    /// Index of the sampled eigenvector for a mixed reference.
    [[nodiscard]] std::optional<std::size_t> sampled_index() const { return sampled_; }

    /// |s> (x) |reference>, with the reference stored in register `ref_reg`.
    [[nodiscard]] StateVector attach(const StateVector &s, std::string_view ref_reg = "reference") const;
    /// One sandwich: calls_u += 1 (or calls_uinv += 1 when inverse).
    void apply(StateVector &s, const QubitRef &control, std::string_view target,
               std::string_view ref_reg = "reference", bool inverse = false) const;
    /// Effective operator on control (1 qubit) (x) target, read off by running
    /// the sandwich on every basis input and contracting with the reference.
    /// Leakage out of the reference state is returned through `leakage`.
    [[nodiscard]] CMatrix effective_operator(int uses = 1, double *leakage = nullptr) const;

  private:
    BlackBox *bb_;
    CVector reference_;
    std::optional<std::size_t> sampled_;
};

/// How the estimation circuits obtain controlled powers of U.
class ControlledRoute {
  public:
    explicit ControlledRoute(BlackBox &bb) : bb_(&bb) {}
    ControlledRoute(BlackBox &bb, const KitaevControlled &kitaev, std::string ref_reg = "reference")
        : bb_(&bb), kitaev_(&kitaev), ref_reg_(std::move(ref_reg)) {}

    [[nodiscard]] BlackBox &box() const { return *bb_; }
    [[nodiscard]] const KitaevControlled *kitaev() const { return kitaev_; }
    [[nodiscard]] const std::string &reference_register() const { return ref_reg_; }

    void power(StateVector &s, const QubitRef &control, std::string_view target, std::uint64_t j) const;
    void inverse_power(StateVector &s, const QubitRef &control, std::string_view target,
                       std::uint64_t j) const;

  private:
    BlackBox *bb_;
    const KitaevControlled *kitaev_ = nullptr;
    std::string ref_reg_;
};

} // namespace fracpow
