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

#include "fracpow/phasest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fracpow {

namespace {

void check_width(const RegisterLayout &layout, const Limits &limits) {
    if (layout.total_qubits() > limits.max_state_qubits) {
        throw ResourceLimitError("dense simulation needs " + std::to_string(layout.total_qubits()) +
                                 " qubits; limit is " + std::to_string(limits.max_state_qubits));
    }
}

// QFT, c-U^j, QFT^-1 on one estimation register.
void estimate_into(const ControlledRoute &route, StateVector &s, const std::string &reg, int m,
                   std::string_view target, const DenseUnitary &f, const DenseUnitary &f_inv) {
    s.apply_on(reg, f);
    for (int b = 0; b < m; ++b) {
        route.power(s, {reg, b}, target, std::uint64_t{1} << b);
    }
    s.apply_on(reg, f_inv);
}

std::vector<Register> majority_registers(const AncillaConfig &cfg) {
    std::vector<Register> regs;
    regs.reserve(static_cast<std::size_t>(cfg.r) + 1);
    for (int i = 0; i < cfg.r; ++i) {
        regs.push_back({est_register(i), cfg.m});
    }
    regs.push_back({kModeRegister, cfg.m});
    return regs;
}

} // namespace

void AncillaConfig::validate() const {
    if (m < 1) {
        throw ValidationError("m must be at least 1");
    }
    if (m > 30) {
        throw ResourceLimitError("m larger than 30 is not supported");
    }
    if (r < 1 || r % 2 == 0) {
        throw ValidationError("r must be a positive odd integer");
    }
}

std::string est_register(int i) {
    return "est" + std::to_string(i);
}

DenseUnitary qft(int m, const Limits &limits) {
    if (m < 1) {
        throw ValidationError("qft needs at least one qubit");
    }
    if (m > limits.max_unitary_qubits) {
        throw ResourceLimitError("qft width exceeds the configured maximum");
    }
    const std::uint64_t n = std::uint64_t{1} << m;
    const auto dim = static_cast<Eigen::Index>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix out(dim, dim);
    for (std::uint64_t j = 0; j < n; ++j) {
        for (std::uint64_t k = 0; k < n; ++k) {
            // (j k) mod n keeps the angle argument exact.
            const double turns = static_cast<double>((j * k) % n) / static_cast<double>(n);
            out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = scale * phase_turns(turns);
        }
    }
    return DenseUnitary(std::move(out), DenseUnitary::Check::trust);
}

int mode_of_tuple(std::span<const int> y) {
    if (y.empty()) {
        throw ValidationError("mode of an empty tuple");
    }
    int best = y[0];
    int best_count = 0;
    for (int candidate : y) {
        const int count = static_cast<int>(std::count(y.begin(), y.end(), candidate));
        if (count > best_count || (count == best_count && candidate < best)) {
            best = candidate;
            best_count = count;
        }
    }
    return best;
}

std::vector<double> single_estimate_distribution(double lambda, int m) {
    const std::uint64_t n = std::uint64_t{1} << m;
    const double nd = static_cast<double>(n);
    std::vector<double> out(n);
    for (std::uint64_t l = 0; l < n; ++l) {
        const double delta = lambda - static_cast<double>(l) / nd;
        const double den = std::sin(std::numbers::pi * delta);
        if (std::abs(den) < 1e-9) {
            // delta is (nearly) an integer: fall back to the geometric sum.
            Complex acc = 0.0;
            for (std::uint64_t j = 0; j < n; ++j) {
                acc += phase_turns(static_cast<double>(j) * delta);
            }
            out[l] = std::norm(acc / nd);
        } else {
            const double num = std::sin(std::numbers::pi * nd * delta);
            out[l] = (num * num) / (nd * nd * den * den);
        }
    }
    return out;
}

std::vector<double> mode_distribution(std::span<const double> single, int r) {
    if (r < 1) {
        throw ValidationError("r must be positive");
    }
    const std::size_t n = single.size();
    std::vector<double> fact(static_cast<std::size_t>(r) + 1, 1.0);
    for (int i = 1; i <= r; ++i) {
        fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i) - 1] * i;
    }
    std::vector<double> result(n, 0.0);

    // P(mode = v, count_v = c) = r! p_v^c / c! [x^(r-c)] prod_{u != v} g_u(x), with
    // g_u = sum_{j <= cap_u} p_u^j x^j / j!, cap_u = c-1 below v and c above v.
    for (int c = 1; c <= r; ++c) {
        const int deg = r - c;
        const auto width = static_cast<std::size_t>(deg) + 1;
        auto series = [&](double p, int cap) {
            std::vector<double> g(width, 0.0);
            double pw = 1.0;
            for (int j = 0; j <= std::min(cap, deg); ++j) {
                g[static_cast<std::size_t>(j)] = pw / fact[static_cast<std::size_t>(j)];
                pw *= p;
            }
            return g;
        };
        auto multiply = [&](const std::vector<double> &a, const std::vector<double> &b) {
            std::vector<double> out(width, 0.0);
            for (std::size_t i = 0; i < width; ++i) {
                if (a[i] == 0.0) {
                    continue;
                }
                for (std::size_t j = 0; i + j < width; ++j) {
                    out[i + j] += a[i] * b[j];
                }
            }
            return out;
        };
        std::vector<double> unit(width, 0.0);
        unit[0] = 1.0;

        std::vector<std::vector<double>> prefix(n + 1, unit);
        for (std::size_t u = 0; u < n; ++u) {
            prefix[u + 1] = multiply(prefix[u], series(single[u], c - 1));
        }
        std::vector<std::vector<double>> suffix(n + 1, unit);
        for (std::size_t u = n; u-- > 0;) {
            suffix[u] = multiply(suffix[u + 1], series(single[u], c));
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (single[v] == 0.0) {
                continue;
            }
            double coef = 0.0;
            for (std::size_t a = 0; a < width; ++a) {
                coef += prefix[v][a] * suffix[v + 1][width - 1 - a];
            }
            result[v] += fact[static_cast<std::size_t>(r)] * std::pow(single[v], c) /
                         fact[static_cast<std::size_t>(c)] * coef;
        }
    }
    return result;
}

double failure_weight(std::span<const double> estimate_dist, double lambda, int m) {
    const double n = std::ldexp(1.0, m);
    double fail = 0.0;
    for (std::size_t l = 0; l < estimate_dist.size(); ++l) {
        const double d = wrap_unit(static_cast<double>(l) / n - lambda);
        const double dist = std::min(d, 1.0 - d);
        if (dist > 1.0 / n + 1e-12) {
            fail += estimate_dist[l];
        }
    }
    return fail;
}

EstimationOutcome estimation_outcome(double lambda, const AncillaConfig &cfg) {
    cfg.validate();
    EstimationOutcome out;
    out.per_repetition = single_estimate_distribution(lambda, cfg.m);
    out.mode = mode_distribution(out.per_repetition, cfg.r);
    const auto best = std::max_element(out.mode.begin(), out.mode.end());
    out.mode_value = static_cast<int>(best - out.mode.begin());
    out.est_phase = std::ldexp(static_cast<double>(out.mode_value), -cfg.m);
    out.failure = failure_weight(out.mode, lambda, cfg.m);
    return out;
}

StateVector estimate_standard(const ControlledRoute &route, const StateVector &s, int m,
                              std::string_view target, const Limits &limits) {
    AncillaConfig{m, 1}.validate();
    StateVector out = s.prepend_zero_registers({{est_register(0), m}});
    check_width(out.layout(), limits);
    const DenseUnitary f = qft(m, limits);
    estimate_into(route, out, est_register(0), m, target, f, f.adjoint());
    return out;
}

StateVector estimate_standard(BlackBox &bb, const StateVector &s, int m, std::string_view target,
                              const Limits &limits) {
    return estimate_standard(ControlledRoute(bb), s, m, target, limits);
}

void apply_mode_computation(StateVector &s, const AncillaConfig &cfg) {
    const RegisterLayout &layout = s.layout();
    std::vector<int> shifts;
    for (int i = 0; i < cfg.r; ++i) {
        shifts.push_back(layout.shift(est_register(i)));
        if (layout.width(est_register(i)) != cfg.m) {
            throw DimensionError("estimation register width does not match m");
        }
    }
    const int mode_shift = layout.shift(kModeRegister);
    const std::uint64_t low = (std::uint64_t{1} << cfg.m) - 1;
    std::vector<int> y(static_cast<std::size_t>(cfg.r));
    s.permute_basis([&](std::uint64_t i) {
        for (std::size_t k = 0; k < y.size(); ++k) {
            y[k] = static_cast<int>((i >> shifts[k]) & low);
        }
        const auto mode = static_cast<std::uint64_t>(mode_of_tuple(y));
        return i ^ (mode << mode_shift);
    });
}

StateVector estimate_majority(const ControlledRoute &route, const StateVector &s, const AncillaConfig &cfg,
                              std::string_view target, const Limits &limits) {
    cfg.validate();
    StateVector out = s.prepend_zero_registers(majority_registers(cfg));
    check_width(out.layout(), limits);
    const DenseUnitary f = qft(cfg.m, limits);
    const DenseUnitary f_inv = f.adjoint();
    for (int i = 0; i < cfg.r; ++i) {
        estimate_into(route, out, est_register(i), cfg.m, target, f, f_inv);
    }
    apply_mode_computation(out, cfg);
    return out;
}

StateVector estimate_majority(BlackBox &bb, const StateVector &s, const AncillaConfig &cfg,
                              std::string_view target, const Limits &limits) {
    return estimate_majority(ControlledRoute(bb), s, cfg, target, limits);
}

StateVector uncompute_estimation(const ControlledRoute &route, const StateVector &state,
                                 const AncillaConfig &cfg, Uncompute kind, std::string_view target,
                                 const Limits &limits) {
    cfg.validate();
    if (kind == Uncompute::inverse && route.kitaev() == nullptr && !route.box().capabilities().inverse) {
        throw CapabilityError("uncomputation needs the inverse capability or the inverse-free mode");
    }
    StateVector out = state;
    const DenseUnitary f = qft(cfg.m, limits);
    const DenseUnitary f_inv = f.adjoint();
    apply_mode_computation(out, cfg);
    for (int i = cfg.r - 1; i >= 0; --i) {
        const std::string reg = est_register(i);
        out.apply_on(reg, f);
        if (kind == Uncompute::inverse) {
            for (int b = cfg.m - 1; b >= 0; --b) {
                route.inverse_power(out, {reg, b}, target, std::uint64_t{1} << b);
            }
        } else {
            // c-U^(N-j) = U . (X c-U^j X): complemented controls give U^(N-1-j).
            out.flip_register(reg);
            for (int b = 0; b < cfg.m; ++b) {
                route.power(out, {reg, b}, target, std::uint64_t{1} << b);
            }
            out.flip_register(reg);
            route.box().apply_in_place(out, target);
        }
        out.apply_on(reg, f_inv);
    }
    return out;
}

StateVector uncompute_estimation(BlackBox &bb, const StateVector &state, const AncillaConfig &cfg,
                                 Uncompute kind, std::string_view target, const Limits &limits) {
    return uncompute_estimation(ControlledRoute(bb), state, cfg, kind, target, limits);
}

double ancilla_weight(const StateVector &state, const AncillaConfig &cfg) {
    std::uint64_t mask = 0;
    const RegisterLayout &layout = state.layout();
    for (int i = 0; i < cfg.r; ++i) {
        if (layout.contains(est_register(i))) {
            mask |= layout.mask(est_register(i));
        }
    }
    if (layout.contains(kModeRegister)) {
        mask |= layout.mask(kModeRegister);
    }
    double w = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if ((i & mask) != 0) {
            w += std::norm(state[i]);
        }
    }
    return w;
}

} // namespace fracpow
