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

#include "fracpow/fixtures.hpp"
#include "fracpow/qcore.hpp"
#include "fracpow/rng.hpp"
#include "helpers.hpp"

using namespace fracpow;
using fracpow::testing::kron;
using fracpow::testing::matrix_power;
using fracpow::testing::naive_trace_distance;

TEST_CASE("register layout is big-endian") {
    RegisterLayout layout{{"a", 2}, {"b", 3}};
    CHECK(layout.total_qubits() == 5);
    CHECK(layout.shift("a") == 3);
    CHECK(layout.shift("b") == 0);
    const std::uint64_t index = 2 * 8 + 5;
    CHECK(layout.value(index, "a") == 2);
    CHECK(layout.value(index, "b") == 5);
    CHECK(layout.with_value(index, "a", 1) == 8 + 5);
    CHECK_THROWS_AS((void)layout.width("c"), Error);
}

TEST_CASE("tensor matches a naive Kronecker product") {
    CounterRng rng(1);
    const DenseUnitary a = haar_unitary(2, rng);
    const DenseUnitary b = haar_unitary(4, rng);
    CHECK(max_entry_diff(tensor(a, b).matrix(), kron(a.matrix(), b.matrix())) < 1e-14);
    CHECK(max_entry_diff(tensor(DenseUnitary::identity(2), DenseUnitary::identity(2)).matrix(),
                         CMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("tensor respects the width limit") {
    Limits limits;
    limits.max_unitary_qubits = 2;
    CHECK_THROWS_AS(tensor(DenseUnitary::identity(4), DenseUnitary::identity(2), limits), ResourceLimitError);
}

TEST_CASE("Hadamard on the first register sets the high bit") {
    RegisterLayout layout{{"a", 1}, {"b", 1}};
    StateVector s = StateVector::zero(layout);
    s.apply_on("a", gates::hadamard());
    CHECK(std::abs(s[0] - Complex(M_SQRT1_2, 0)) < 1e-15);
    CHECK(std::abs(s[2] - Complex(M_SQRT1_2, 0)) < 1e-15);
    CHECK(std::abs(s[1]) == 0.0);
}

TEST_CASE("apply_on equals the full Kronecker operator") {
    CounterRng rng(2);
    RegisterLayout layout{{"x", 1}, {"y", 2}, {"z", 1}};
    const CVector amps = haar_vector(layout.dim(), rng);
    StateVector s(amps, layout);
    const DenseUnitary u = haar_unitary(4, rng);
    s.apply_on("y", u);
    const CMatrix full = kron(kron(CMatrix::Identity(2, 2), u.matrix()), CMatrix::Identity(2, 2));
    CHECK((s.amplitudes() - full * amps).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("apply_controlled equals the block-diagonal operator") {
    CounterRng rng(3);
    RegisterLayout layout{{"c", 1}, {"t", 2}};
    const CVector amps = haar_vector(layout.dim(), rng);
    StateVector s(amps, layout);
    const DenseUnitary u = haar_unitary(4, rng);
    s.apply_controlled({"c", 0}, "t", u);
    CMatrix full = CMatrix::Zero(8, 8);
    full.topLeftCorner(4, 4).setIdentity();
    full.bottomRightCorner(4, 4) = u.matrix();
    CHECK((s.amplitudes() - full * amps).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("controlled_swap permutes basis states") {
    RegisterLayout layout{{"c", 1}, {"a", 2}, {"b", 2}};
    for (std::uint64_t i = 0; i < layout.dim(); ++i) {
        StateVector s = StateVector::basis(layout, i);
        s.controlled_swap({"c", 0}, "a", "b");
        const auto c = layout.value(i, "c");
        const auto a = layout.value(i, "a");
        const auto b = layout.value(i, "b");
        std::uint64_t expect = i;
        if (c == 1) {
            expect = layout.with_value(layout.with_value(i, "a", b), "b", a);
        }
        CHECK(std::abs(s[expect] - Complex(1, 0)) < 1e-15);
    }
}

TEST_CASE("phase table and flip") {
    RegisterLayout layout{{"r", 2}};
    CounterRng rng(4);
    const CVector amps = haar_vector(4, rng);
    StateVector s(amps, layout);
    const std::vector<double> turns{0.0, 0.25, 0.5, 0.125};
    s.apply_phase_table("r", turns);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(s[i] - amps(i) * std::polar(1.0, 2 * std::numbers::pi * turns[i])) < 1e-15);
    }
    StateVector f(amps, layout);
    f.flip_register("r");
    for (int i = 0; i < 4; ++i) {
        CHECK(f[3 - i] == amps(i));
    }
}

TEST_CASE("validation of states and unitaries") {
    CHECK_THROWS_AS(StateVector(CVector::Ones(2), RegisterLayout{{"t", 1}}), ValidationError);
    CHECK_THROWS_AS(StateVector(CVector::Ones(3).normalized(), RegisterLayout{{"t", 1}}), Error);
    CHECK_THROWS_AS(DenseUnitary(CMatrix::Ones(2, 2)), ValidationError);
    StateVector s = StateVector::zero(RegisterLayout{{"t", 1}});
    CHECK_THROWS_AS(s.apply_on("t", DenseUnitary::identity(4)), DimensionError);
}

TEST_CASE("spectral fixture validates the gap") {
    CHECK_NOTHROW(SpectralFixture(DenseUnitary::identity(2), {0.0, 0.5}, 0.5));
    CHECK_THROWS_AS(SpectralFixture(DenseUnitary::identity(2), {0.0, 0.75}, 0.5), ValidationError);
    CHECK(SpectralFixture::natural_gap(std::vector<double>{0.1, 0.6}) == doctest::Approx(0.4));
}

TEST_CASE("spectral_power agrees with repeated multiplication") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SpectralFixture f = SpectralFixture::haar({0.1, 0.37, 0.5, 0.91}, seed);
        const CMatrix u = f.assembled().matrix();
        for (int e = 0; e <= 4; ++e) {
            CHECK(max_entry_diff(spectral_power(f, e).matrix(), matrix_power(u, e)) < 1e-12);
        }
        const CMatrix half = spectral_power(f, 0.5).matrix();
        CHECK(max_entry_diff(half * half, u) < 1e-12);
    }
}

TEST_CASE("spectral_power group law on the primitive branch") {
    CounterRng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> phases(4);
        for (double &p : phases) {
            p = 0.9 * rng.uniform();
        }
        const SpectralFixture f = SpectralFixture::haar(phases, 100 + trial);
        const double a = rng.uniform();
        const double b = rng.uniform();
        const CMatrix lhs = spectral_power(f, a).matrix() * spectral_power(f, b).matrix();
        CHECK(max_entry_diff(lhs, spectral_power(f, a + b).matrix()) < 1e-12);
        CHECK(spectral_power(f, a).unitarity_defect() < 1e-12);
    }
}

TEST_CASE("trace distance") {
    CounterRng rng(8);
    const CVector u = haar_vector(4, rng);
    const CVector w = haar_vector(4, rng);
    CHECK(trace_distance(u, u) < 1e-15);
    CHECK(trace_distance(u, Complex(0, 1) * u) < 1e-15);
    CHECK(trace_distance(CVector::Unit(2, 0), CVector::Unit(2, 1)) == doctest::Approx(2.0));
    CHECK(trace_distance(u, w) == doctest::Approx(naive_trace_distance(u, w)).epsilon(1e-10));
    // Resolves distances far below the cancellation floor of the overlap formula.
    CVector v = u;
    v += 1e-12 * w;
    const CVector perp = w - u * u.dot(w);
    CHECK(trace_distance(u, v) == doctest::Approx(2e-12 * perp.norm()).epsilon(1e-3));
    CHECK(trace_distance(u, 3.0 * u) < 1e-15);
}

TEST_CASE("Haar unitaries are unitary and seeded") {
    CounterRng a(11);
    CounterRng b(11);
    const DenseUnitary ua = haar_unitary(8, a);
    const DenseUnitary ub = haar_unitary(8, b);
    CHECK(ua.unitarity_defect() < 1e-13);
    CHECK(max_entry_diff(ua.matrix(), ub.matrix()) == 0.0);
}

TEST_CASE("qft fixture reproduces the Fourier matrix") {
    for (int n = 1; n <= 3; ++n) {
        const SpectralFixture f = qft_fixture(n);
        const std::size_t dim = f.dim();
        CMatrix expect(dim, dim);
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t k = 0; k < dim; ++k) {
                expect(j, k) = std::polar(1.0 / std::sqrt(double(dim)),
                                          2 * std::numbers::pi * double(j * k) / double(dim));
            }
        }
        CHECK(max_entry_diff(f.assembled().matrix(), expect) < 1e-10);
        for (double lam : f.eigphases()) {
            const double quarter = lam * 4.0;
            CHECK(std::abs(quarter - std::round(quarter)) < 1e-12);
        }
    }
}

TEST_CASE("fixture JSON round trip") {
    const SpectralFixture f = third_fixture(4, 3);
    const SpectralFixture g = fixture_from_json(fixture_to_json(f));
    CHECK(max_entry_diff(f.eigvecs().matrix(), g.eigvecs().matrix()) == 0.0);
    CHECK(std::vector<double>(f.eigphases().begin(), f.eigphases().end()) ==
          std::vector<double>(g.eigphases().begin(), g.eigphases().end()));
    CHECK(f.gap() == g.gap());
    CHECK_THROWS_AS(fixture_from_json(R"({"dim": 1, "eigvecs": [[1,0]], "eigphases": [0], "bogus": 1})"),
                    ValidationError);
}
