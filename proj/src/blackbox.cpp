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

#include "fracpow/blackbox.hpp"

#include <cmath>

#include "fracpow/rng.hpp"

namespace fracpow {

QueryLedger operator-(const QueryLedger &a, const QueryLedger &b) {
    return {a.calls_u - b.calls_u, a.calls_cu - b.calls_cu, a.calls_uinv - b.calls_uinv,
            a.calls_cuinv - b.calls_cuinv};
}

namespace detail {

const SpectralFixture &SimulatorAccess::hidden(const BlackBox &bb) {
    return *bb.hidden_;
}

void SimulatorAccess::charge(BlackBox &bb, Query q, std::uint64_t units) {
    switch (q) {
    case Query::u:
        bb.require(bb.caps_.plain, "plain");
        bb.ledger_.calls_u += units;
        break;
    case Query::cu:
        bb.require(bb.caps_.controlled, "controlled");
        bb.ledger_.calls_cu += units;
        break;
    case Query::uinv:
        bb.require(bb.caps_.inverse, "inverse");
        bb.ledger_.calls_uinv += units;
        break;
    case Query::cuinv:
        bb.require(bb.caps_.controlled && bb.caps_.inverse, "controlled inverse");
        bb.ledger_.calls_cuinv += units;
        break;
    }
}

} // namespace detail

BlackBox::BlackBox(SpectralFixture hidden, Capabilities caps)
    : BlackBox(std::make_shared<const SpectralFixture>(std::move(hidden)), caps) {}

BlackBox::BlackBox(std::shared_ptr<const SpectralFixture> hidden, Capabilities caps)
    : hidden_(std::move(hidden)), caps_(caps) {
    if (!hidden_) {
        throw ValidationError("black box needs a hidden unitary");
    }
}

void BlackBox::require(bool enabled, const char *what) const {
    if (!enabled) {
        throw CapabilityError(std::string("black box capability '") + what + "' is disabled");
    }
}

void BlackBox::check_target(const StateVector &s, std::string_view target) const {
    if (s.layout().width(target) != qubits()) {
        throw DimensionError("register '" + std::string(target) + "' does not match the hidden dimension");
    }
}

const DenseUnitary &BlackBox::power(std::int64_t e) {
    auto it = powers_.find(e);
    if (it == powers_.end()) {
        it = powers_.emplace(e, spectral_power(*hidden_, static_cast<double>(e))).first;
    }
    return it->second;
}

void BlackBox::apply_in_place(StateVector &s, std::string_view target) {
    require(caps_.plain, "plain");
    check_target(s, target);
    s.apply_on(target, power(1));
    ledger_.calls_u += 1;
}

void BlackBox::inverse_apply_in_place(StateVector &s, std::string_view target) {
    require(caps_.inverse, "inverse");
    check_target(s, target);
    s.apply_on(target, power(-1));
    ledger_.calls_uinv += 1;
}

void BlackBox::controlled_power_in_place(std::uint64_t j, StateVector &s, const QubitRef &control,
                                         std::string_view target) {
    require(caps_.controlled, "controlled");
    check_target(s, target);
    if (j == 0) {
        return;
    }
    s.apply_controlled(control, target, power(static_cast<std::int64_t>(j)));
    ledger_.calls_cu += j;
}

void BlackBox::controlled_inverse_power_in_place(std::uint64_t j, StateVector &s, const QubitRef &control,
                                                 std::string_view target) {
    require(caps_.controlled && caps_.inverse, "controlled inverse");
    check_target(s, target);
    if (j == 0) {
        return;
    }
    s.apply_controlled(control, target, power(-static_cast<std::int64_t>(j)));
    ledger_.calls_cuinv += j;
}

StateVector BlackBox::apply(const StateVector &s, std::string_view target) {
    StateVector out = s;
    apply_in_place(out, target);
    return out;
}

StateVector BlackBox::inverse_apply(const StateVector &s, std::string_view target) {
    StateVector out = s;
    inverse_apply_in_place(out, target);
    return out;
}

StateVector BlackBox::controlled_power(std::uint64_t j, const StateVector &s, const QubitRef &control,
                                       std::string_view target) {
    StateVector out = s;
    controlled_power_in_place(j, out, control, target);
    return out;
}

StateVector BlackBox::controlled_inverse_power(std::uint64_t j, const StateVector &s,
                                               const QubitRef &control, std::string_view target) {
    StateVector out = s;
    controlled_inverse_power_in_place(j, out, control, target);
    return out;
}

// ---------------------------------------------------------------- Kitaev

KitaevControlled::KitaevControlled(BlackBox &bb, KitaevReference reference) : bb_(&bb) {
    if (reference.mixed_seed) {
        const SpectralFixture &hidden = detail::SimulatorAccess::hidden(bb);
        CounterRng rng(*reference.mixed_seed, 0x4B);
        sampled_ = static_cast<std::size_t>(rng.below(hidden.dim()));
        reference_ = hidden.eigenvector(*sampled_);
    } else {
        if (static_cast<std::size_t>(reference.state.size()) != bb.dim()) {
            throw DimensionError("reference state does not have the hidden dimension");
        }
        const double n = reference.state.norm();
        if (std::abs(n - 1.0) > 1e-10) {
            throw ValidationError("reference state is not normalized");
        }
        reference_ = std::move(reference.state);
    }
}

StateVector KitaevControlled::attach(const StateVector &s, std::string_view ref_reg) const {
    return s.tensor(StateVector::on_register(reference_, std::string(ref_reg)));
}

void KitaevControlled::apply(StateVector &s, const QubitRef &control, std::string_view target,
                             std::string_view ref_reg, bool inverse) const {
    s.controlled_swap(control, target, ref_reg);
    if (inverse) {
        bb_->inverse_apply_in_place(s, ref_reg);
    } else {
        bb_->apply_in_place(s, ref_reg);
    }
    s.controlled_swap(control, target, ref_reg);
}

CMatrix KitaevControlled::effective_operator(int uses, double *leakage) const {
    const int n = bb_->qubits();
    const std::size_t d = bb_->dim();
    const RegisterLayout io{{"control", 1}, {"target", n}};
    const auto out_dim = static_cast<Eigen::Index>(2 * d);
    CMatrix op = CMatrix::Zero(out_dim, out_dim);
    double worst = 0.0;
    for (std::uint64_t col = 0; col < 2 * d; ++col) {
        StateVector s = attach(StateVector::basis(io, col));
        for (int u = 0; u < uses; ++u) {
            apply(s, {"control", 0}, "target");
        }
        // Contract the reference register with <reference|.
        const CVector &a = s.amplitudes();
        CVector contracted(out_dim);
        for (Eigen::Index row = 0; row < out_dim; ++row) {
            contracted(row) = reference_.dot(a.segment(row * static_cast<Eigen::Index>(d),
                                                       static_cast<Eigen::Index>(d)));
        }
        op.col(static_cast<Eigen::Index>(col)) = contracted;
        worst = std::max(worst, 1.0 - contracted.squaredNorm());
    }
    if (leakage != nullptr) {
        *leakage = worst;
    }
    return op;
}

// ---------------------------------------------------------------- route

void ControlledRoute::power(StateVector &s, const QubitRef &control, std::string_view target,
                            std::uint64_t j) const {
    if (kitaev_ == nullptr) {
        bb_->controlled_power_in_place(j, s, control, target);
        return;
    }
    for (std::uint64_t i = 0; i < j; ++i) {
        kitaev_->apply(s, control, target, ref_reg_, false);
    }
}

void ControlledRoute::inverse_power(StateVector &s, const QubitRef &control, std::string_view target,
                                    std::uint64_t j) const {
    if (kitaev_ == nullptr) {
        bb_->controlled_inverse_power_in_place(j, s, control, target);
        return;
    }
    for (std::uint64_t i = 0; i < j; ++i) {
        kitaev_->apply(s, control, target, ref_reg_, true);
    }
}

} // namespace fracpow
