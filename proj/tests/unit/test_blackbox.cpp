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

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fracpow/blackbox.hpp"
#include "fracpow/fixtures.hpp"
#include "helpers.hpp"

using namespace fracpow;
using fracpow::testing::kron;
using fracpow::testing::matrix_power;
using fracpow::testing::random_target;

namespace {

/// c-(e^{-2 pi i lambda} U) scaled by e^{2 pi i lambda}, on control (x) target.
CMatrix expected_kitaev(const CMatrix &u, double lambda) {
    const auto d = u.rows();
    CMatrix out = CMatrix::Zero(2 * d, 2 * d);
    out.topLeftCorner(d, d) = std::polar(1.0, 2 * std::numbers::pi * lambda) * CMatrix::Identity(d, d);
    out.bottomRightCorner(d, d) = u;
    return out;
}

/// The sandwich as one explicit matrix on control (x) target (x) reference,
/// contracted with the reference state.
CMatrix brute_sandwich(const CMatrix &u, const CVector &ref) {
    const auto d = u.rows();
    const auto full = 2 * d * d;
    CMatrix cswap = CMatrix::Zero(full, full);
    for (Eigen::Index c = 0; c < 2; ++c) {
        for (Eigen::Index x = 0; x < d; ++x) {
            for (Eigen::Index y = 0; y < d; ++y) {
                const auto in = (c * d + x) * d + y;
                const auto out = c == 1 ? (c * d + y) * d + x : in;
                cswap(out, in) = 1.0;
            }
        }
    }
    const CMatrix on_ref = kron(CMatrix::Identity(2 * d, 2 * d), u);
    const CMatrix total = cswap * on_ref * cswap;
    CMatrix op(2 * d, 2 * d);
    for (Eigen::Index col = 0; col < 2 * d; ++col) {
        CVector in = CVector::Zero(full);
        in.segment(col * d, d) = ref;
        const CVector out = total * in;
        for (Eigen::Index row = 0; row < 2 * d; ++row) {
            op(row, col) = ref.dot(out.segment(row * d, d));
        }
    }
    return op;
}

} // namespace

TEST_CASE("each apply variant charges only its own counter") {
    BlackBox bb(third_fixture(2, 1));
    const StateVector s = random_target(2, 1);
    (void)bb.apply(s, "target");
    CHECK(bb.ledger() == QueryLedger{1, 0, 0, 0});
    (void)bb.inverse_apply(s, "target");
    CHECK(bb.ledger() == QueryLedger{1, 0, 1, 0});
    const StateVector c = StateVector::zero(RegisterLayout{{"c", 1}}).tensor(s);
    (void)bb.controlled_power(5, c, {"c", 0}, "target");
    CHECK(bb.ledger() == QueryLedger{1, 5, 1, 0});
    (void)bb.controlled_inverse_power(3, c, {"c", 0}, "target");
    CHECK(bb.ledger() == QueryLedger{1, 5, 1, 3});
    (void)bb.controlled_power(0, c, {"c", 0}, "target");
    CHECK(bb.ledger().total() == 10);
    bb.reset_ledger();
    CHECK(bb.ledger().total() == 0);
}

TEST_CASE("disabled capabilities throw") {
    const StateVector s = random_target(2, 2);
    const StateVector c = StateVector::zero(RegisterLayout{{"c", 1}}).tensor(s);
    BlackBox no_inverse(third_fixture(2, 1), Capabilities{true, true, false});
    CHECK_THROWS_AS((void)no_inverse.inverse_apply(s, "target"), CapabilityError);
    CHECK_THROWS_AS((void)no_inverse.controlled_inverse_power(1, c, {"c", 0}, "target"), CapabilityError);
    BlackBox no_control(third_fixture(2, 1), Capabilities{true, false, true});
    CHECK_THROWS_AS((void)no_control.controlled_power(1, c, {"c", 0}, "target"), CapabilityError);
    BlackBox no_plain(third_fixture(2, 1), Capabilities{false, true, true});
    CHECK_THROWS_AS((void)no_plain.apply(s, "target"), CapabilityError);
    CHECK(no_plain.ledger().total() == 0);
}

TEST_CASE("controlled powers match the explicit block operator") {
    const SpectralFixture f = SpectralFixture::haar({0.1, 0.3, 0.55, 0.8}, 3);
    BlackBox bb(f);
    const CMatrix u = f.assembled().matrix();
    CounterRng rng(4);
    const RegisterLayout layout{{"c", 1}, {"target", 2}};
    const CVector amps = haar_vector(8, rng);
    for (int j : {1, 2, 5}) {
        const StateVector out = bb.controlled_power(j, StateVector(amps, layout), {"c", 0}, "target");
        CMatrix full = CMatrix::Zero(8, 8);
        full.topLeftCorner(4, 4).setIdentity();
        full.bottomRightCorner(4, 4) = matrix_power(u, j);
        CHECK((out.amplitudes() - full * amps).cwiseAbs().maxCoeff() < 1e-12);
        const StateVector back = bb.controlled_inverse_power(j, out, {"c", 0}, "target");
        CHECK((back.amplitudes() - amps).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("controlled-SWAP sandwich equals c-(e^{-2 pi i lambda} U) for every eigenvector") {
    for (std::size_t dim : {2, 4, 8}) {
        const SpectralFixture f = SpectralFixture::haar(
            [&] {
                std::vector<double> p(dim);
                for (std::size_t k = 0; k < dim; ++k) {
                    p[k] = 0.9 * double(k) / double(dim) + 0.013;
                }
                return p;
            }(),
            dim);
        BlackBox bb(f);
        const CMatrix u = f.assembled().matrix();
        for (std::size_t k = 0; k < dim; ++k) {
            KitaevControlled kc(bb, KitaevReference::pure(f.eigenvector(k)));
            double leakage = 1.0;
            const CMatrix op = kc.effective_operator(1, &leakage);
            const CMatrix expect = expected_kitaev(u, f.eigphases()[k]);
            CHECK(max_entry_diff(op, expect) <= 1e-12);
            CHECK(max_entry_diff(op, brute_sandwich(u, f.eigenvector(k))) <= 1e-12);
            CHECK(leakage <= 1e-12);
        }
    }
}

TEST_CASE("mixed reference keeps one phase across uses") {
    const SpectralFixture f = SpectralFixture::haar({0.05, 0.25, 0.4, 0.7}, 9);
    BlackBox bb(f);
    const CMatrix u = f.assembled().matrix();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        KitaevControlled kc(bb, KitaevReference::mixed(seed));
        REQUIRE(kc.sampled_index().has_value());
        const double lambda = f.eigphases()[*kc.sampled_index()];
        const CMatrix once = kc.effective_operator(1);
        const CMatrix twice = kc.effective_operator(2);
        CHECK(max_entry_diff(once, expected_kitaev(u, lambda)) <= 1e-12);
        CHECK(max_entry_diff(twice, once * once) <= 1e-12);
        CHECK(max_entry_diff(twice, expected_kitaev(u, lambda) * expected_kitaev(u, lambda)) <= 1e-12);
        KitaevControlled again(bb, KitaevReference::mixed(seed));
        CHECK(again.sampled_index() == kc.sampled_index());
    }
}

TEST_CASE("the sandwich charges plain calls only") {
    BlackBox bb(third_fixture(2, 1));
    KitaevControlled kc(bb, KitaevReference::pure(CVector::Unit(2, 0)));
    StateVector s = kc.attach(StateVector::zero(RegisterLayout{{"c", 1}}).tensor(random_target(2, 3)));
    kc.apply(s, {"c", 0}, "target");
    kc.apply(s, {"c", 0}, "target");
    CHECK(bb.ledger() == QueryLedger{2, 0, 0, 0});
}
