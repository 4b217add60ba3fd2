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

#include "fracpow/gsearch.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

namespace fracpow {

FlagOracle::FlagOracle(CMatrix flagged) : flagged_(std::move(flagged)) {
    const auto n = flagged_.rows();
    const auto d = flagged_.cols();
    if (n < 1 || !is_power_of_two(static_cast<std::size_t>(n))) {
        throw DimensionError("oracle dimension must be a power of two");
    }
    if (d < 1 || d > n) {
        throw ValidationError("flagged dimension must lie in [1, N]");
    }
    const CMatrix gram = flagged_.adjoint() * flagged_;
    if (max_entry_diff(gram, CMatrix::Identity(d, d)) > 1e-10) {
        throw ValidationError("flagged vectors are not orthonormal");
    }
}

FlagOracle FlagOracle::from_fixture(const SpectralFixture &f, const std::vector<std::size_t> &indices) {
    CMatrix cols(static_cast<Eigen::Index>(f.dim()), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= f.dim()) {
            throw DimensionError("flagged index out of range");
        }
        cols.col(static_cast<Eigen::Index>(i)) = f.eigenvector(indices[i]);
    }
    return FlagOracle(std::move(cols));
}

DenseUnitary FlagOracle::unitary() const {
    const auto n = flagged_.rows();
    return DenseUnitary(CMatrix::Identity(n, n) - 2.0 * projector(), DenseUnitary::Check::trust);
}

DenseUnitary search_iterate(const DenseUnitary &a, const FlagOracle &oracle, const Limits &limits) {
    const std::size_t n = oracle.dim();
    DenseUnitary o = oracle.unitary();
    if (a.dim() == n * n) {
        o = tensor(o, DenseUnitary::identity(n), limits);
    } else if (a.dim() != n) {
        throw DimensionError("A must act on N or N^2 dimensions");
    }
    const auto dim = static_cast<Eigen::Index>(a.dim());
    CMatrix u0 = CMatrix::Identity(dim, dim);
    u0(0, 0) = -1.0;
    CMatrix q = -(a.matrix() * u0 * a.matrix().adjoint() * o.matrix());
    return DenseUnitary(std::move(q), DenseUnitary::Check::trust);
}

DenseUnitary max_entangler(int qubits, const Limits &limits) {
    if (qubits < 1 || 2 * qubits > limits.max_unitary_qubits) {
        throw ResourceLimitError("entangler width out of range");
    }
    const std::size_t n = std::size_t{1} << qubits;
    const auto dim = static_cast<Eigen::Index>(n * n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    // Column (x, y) of (H^n (x) I): sum_z H[z][x] |z>|y>, then |z>|y> -> |z>|y ^ z>.
    CMatrix out = CMatrix::Zero(dim, dim);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const auto col = static_cast<Eigen::Index>(x * n + y);
            for (std::size_t z = 0; z < n; ++z) {
                const int sign = (std::popcount(x & z) % 2 == 0) ? 1 : -1;
                out(static_cast<Eigen::Index>(z * n + (y ^ z)), col) = sign * scale;
            }
        }
    }
    return DenseUnitary(std::move(out), DenseUnitary::Check::trust);
}

SearchRun entangled_search(const FlagOracle &oracle, int k) {
    if (k < 0) {
        throw ValidationError("k must be non-negative");
    }
    const auto n = static_cast<Eigen::Index>(oracle.dim());
    const double nd = static_cast<double>(n);
    const CMatrix proj = oracle.projector();
    CMatrix psi = CMatrix::Identity(n, n) / std::sqrt(nd);
    for (int i = 0; i < k; ++i) {
        psi -= 2.0 * (proj * psi);
        const Complex tr = psi.trace();
        psi = -psi;
        psi.diagonal().array() += 2.0 * tr / nd;
    }
    const double d = static_cast<double>(oracle.flagged_dim());
    const CMatrix target = proj / std::sqrt(d);
    const Complex overlap = (target.conjugate().array() * psi.array()).sum();

    const double theta = std::asin(std::sqrt(d / nd));
    const double s = std::sin((2.0 * k + 1.0) * theta);
    CVector amps(n * n);
    for (Eigen::Index x = 0; x < n; ++x) {
        for (Eigen::Index y = 0; y < n; ++y) {
            amps(x * n + y) = psi(x, y);
        }
    }
    const int q = log2_exact(static_cast<std::size_t>(n));
    return SearchRun{k, theta, std::min(1.0, std::norm(overlap)), s * s,
                     StateVector::normalized(std::move(amps), RegisterLayout{{"sys", q}, {"copy", q}})};
}

SearchRun entangled_search(const SpectralFixture &f, const std::vector<std::size_t> &flagged, int k) {
    return entangled_search(FlagOracle::from_fixture(f, flagged), k);
}

DimensionEstimate estimate_subspace_dim(const FlagOracle &oracle, int bits, const Limits &limits) {
    if (bits < 1) {
        throw ValidationError("precision bits must be positive");
    }
    const std::size_t n = oracle.dim();
    const int q = log2_exact(n);
    if (bits + 2 * q > limits.max_state_qubits) {
        throw ResourceLimitError("dimension estimation needs " + std::to_string(bits + 2 * q) + " qubits");
    }
    const DenseUnitary a = max_entangler(q, limits);
    const DenseUnitary iterate = search_iterate(a, oracle, limits);

    const RegisterLayout layout{{"est", bits}, {"sys", 2 * q}};
    CVector start = CVector::Zero(static_cast<Eigen::Index>(layout.dim()));
    start.head(static_cast<Eigen::Index>(n * n)) = a.matrix().col(0);
    StateVector s(std::move(start), layout);
    const DenseUnitary f = qft(bits, limits);
    s.apply_on("est", f);
    DenseUnitary power = iterate;
    for (int b = 0; b < bits; ++b) {
        s.apply_controlled({"est", b}, "sys", power);
        power = DenseUnitary(power.matrix() * power.matrix(), DenseUnitary::Check::trust);
    }
    s.apply_on("est", f.adjoint());

    DimensionEstimate out;
    const std::size_t grid = std::size_t{1} << bits;
    out.outcome_distribution.assign(grid, 0.0);
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        out.outcome_distribution[layout.value(i, "est")] += std::norm(s[i]);
    }
    const int d = static_cast<int>(oracle.flagged_dim());
    std::map<int, double> by_estimate;
    for (std::size_t l = 0; l < grid; ++l) {
        const double sn = std::sin(std::numbers::pi * static_cast<double>(l) / static_cast<double>(grid));
        const int est = static_cast<int>(std::lround(static_cast<double>(n) * sn * sn));
        by_estimate[est] += out.outcome_distribution[l];
        if (std::abs(est - d) <= 1) {
            out.prob_within_one += out.outcome_distribution[l];
        }
    }
    double best = -1.0;
    for (const auto &[est, p] : by_estimate) {
        if (p > best) {
            best = p;
            out.estimate = est;
        }
    }
    return out;
}

SpectralFixture roots_of_unity_fixture(int m, std::uint64_t seed) {
    if (m < 1) {
        throw ValidationError("m must be positive");
    }
    const std::size_t n = std::size_t{1} << m;
    std::vector<double> phases(n);
    for (std::size_t j = 0; j < n; ++j) {
        phases[j] = static_cast<double>(j) / static_cast<double>(n);
    }
    return SpectralFixture::haar(std::move(phases), seed);
}

std::vector<MagnifyRow> magnification_experiment(const MagnifyConfig &cfg, const std::vector<int> &k_list) {
    const int m = cfg.m;
    const AncillaConfig est{m, cfg.r > 0 ? cfg.r : 2 * m + 1};
    est.validate();
    const SpectralFixture base = roots_of_unity_fixture(m, cfg.seed);
    const double n = std::ldexp(1.0, m);
    const double epsilon = cfg.epsilon >= 0.0 ? cfg.epsilon : std::ldexp(1.0, -(m + 1));
    const double theta = 2.0 * std::numbers::pi * cfg.ell / n - epsilon;

    // e^{i theta} U.
    std::vector<double> shifted(base.dim());
    for (std::size_t j = 0; j < shifted.size(); ++j) {
        shifted[j] = wrap_unit(base.eigphases()[j] + theta / (2.0 * std::numbers::pi));
    }
    const SpectralFixture v = base.with_phases(shifted);

    double discarded = 0.0;
    std::vector<std::size_t> flagged;
    const double window = std::numbers::pi / std::ldexp(1.0, m - 1);
    BlackBox bb(v);
    for (std::size_t j = 0; j < v.dim(); ++j) {
        double root = 0.5 * shifted[j];
        if (!cfg.exact_root) {
            const StateVector psi = StateVector::on_register(v.eigenvector(j));
            const RunResult res = fractional_apply(bb, psi, 0.5, est);
            discarded = std::max(discarded, res.residual_ancilla_weight);
            root = std::arg(psi.amplitudes().dot(res.out_state.amplitudes())) / (2.0 * std::numbers::pi);
        }
        const double omega = 2.0 * std::numbers::pi * wrap_unit(root - 0.5 * shifted[j]);
        if (std::abs(omega - std::numbers::pi) <= window) {
            flagged.push_back(j);
        }
    }

    std::vector<MagnifyRow> rows;
    std::optional<FlagOracle> oracle;
    if (!flagged.empty()) {
        oracle = FlagOracle::from_fixture(v, flagged);
    }
    for (int k : k_list) {
        if (k < 0) {
            throw ValidationError("k must be non-negative");
        }
        MagnifyRow row;
        row.k = k;
        row.flagged = flagged.size();
        row.discarded_weight = discarded;
        if (oracle) {
            const SearchRun run = entangled_search(*oracle, k);
            row.error_prob = run.success_prob;
            row.predicted = run.predicted;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace fracpow
