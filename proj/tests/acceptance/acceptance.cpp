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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "fracpow/fixtures.hpp"
#include "fracpow/gsearch.hpp"
#include "fracpow/power.hpp"
#include "fracpow/ratspec.hpp"
#include "fracpow/rng.hpp"

using namespace fracpow;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::vector<double> dyadic_phases(std::size_t dim, int m, CounterRng &rng) {
    std::vector<double> p(dim);
    for (double &x : p) {
        x = std::ldexp(static_cast<double>(rng.below(std::uint64_t{1} << m)), -m);
    }
    return p;
}

Outcome dyadic_exactness() {
    double worst_err = 0.0;
    double worst_res = 0.0;
    int runs = 0;
    CounterRng rng(101);
    for (int m = 1; m <= 4; ++m) {
        for (std::size_t dim : {2, 4, 8}) {
            std::vector<SpectralFixture> fixtures{dyadic_fixture(dim, m, 7)};
            for (int i = 0; i < 3; ++i) {
                fixtures.push_back(SpectralFixture::haar(dyadic_phases(dim, m, rng), 1000 + runs + i));
            }
            for (const SpectralFixture &f : fixtures) {
                for (double t : {0.25, 0.5, 0.75}) {
                    PowerRequest req;
                    req.t = t;
                    req.cfg = AncillaConfig::with_default_r(m);
                    const ExperimentRecord rec = measure_error(f, req, 4, 11);
                    worst_err = std::max(worst_err, rec.max_err);
                    worst_res = std::max(worst_res, rec.residual_ancilla);
                    ++runs;
                }
            }
        }
    }
    return {worst_err <= 1e-10 && worst_res <= 1e-12,
            std::to_string(runs) + " runs, max_err " + sci(worst_err) + ", residual " + sci(worst_res)};
}

Outcome error_scaling() {
    const SpectralFixture f = third_fixture(2, 2026);
    std::vector<double> xs;
    std::vector<double> ys;
    std::ostringstream errs;
    for (int m = 3; m <= 8; ++m) {
        PowerRequest req;
        req.t = 0.5;
        req.cfg = AncillaConfig::with_default_r(m);
        const ExperimentRecord rec = measure_error(f, req, 64, 2026);
        xs.push_back(m);
        ys.push_back(std::log2(rec.max_err));
        errs << (m > 3 ? " " : "") << sci(rec.max_err);
    }
    const double slope = cli::least_squares_slope(xs, ys);
    std::ostringstream d;
    d << "slope " << slope << " (max_err m=3..8: " << errs.str() << ")";
    return {slope >= -1.5 && slope <= -0.7, d.str()};
}

Outcome fractional_qft() {
    PowerRequest req;
    req.t = 0.5;
    req.cfg = AncillaConfig{2, 1};
    const ExperimentRecord rec = measure_error(qft_fixture(3), req, 16, 5);
    const bool ledger_ok = rec.calls_cu == 3 && rec.calls_cuinv == 3 && rec.calls_u == 0 && rec.calls_uinv == 0;
    std::ostringstream d;
    d << "c-U " << rec.calls_cu << ", c-U^-1 " << rec.calls_cuinv << ", max_err " << sci(rec.max_err);
    return {ledger_ok && rec.max_err <= 1e-10, d.str()};
}

Outcome continued_fractions() {
    const int b = 4;
    const int m = 7;
    const auto primes = first_primes(b);
    const std::int64_t n = std::int64_t{1} << m;
    int checked = 0;
    int wrong = 0;
    for (std::int64_t p : primes) {
        for (std::int64_t l = 0; l < p; ++l) {
            const Fraction truth = Fraction::reduced(l, p);
            for (std::int64_t h = 0; h < n; ++h) {
                // Circular |h/n - l/p| <= 1/n, in integers.
                std::int64_t diff = std::llabs(h * p - l * n) % (n * p);
                diff = std::min(diff, n * p - diff);
                if (diff > p) {
                    continue;
                }
                ++checked;
                const auto rec = recover_eigenphase(static_cast<std::uint64_t>(h), m, primes.back());
                if (!rec || !(*rec == truth)) {
                    ++wrong;
                }
            }
        }
    }
    const auto pf = PrimeSpectrumFixture::build(b, 8, 3);
    CounterRng rng(3, 1);
    const StateVector s = StateVector::on_register(haar_vector(8, rng));
    const AncillaConfig cfg = AncillaConfig::with_default_r(m);
    const RunResult a = exact_power_apply(pf, s, Exponent::parse("105"), cfg);
    const RunResult c = exact_power_apply(pf, s, Exponent::parse("2^40"), cfg);
    std::ostringstream d;
    d << checked << " estimates checked, " << wrong << " wrong; ledger t=105 cu=" << a.ledger.calls_cu
      << " cuinv=" << a.ledger.calls_cuinv << ", t=2^40 cu=" << c.ledger.calls_cu << " cuinv=" << c.ledger.calls_cuinv;
    return {uniqueness_premise(b, m) && wrong == 0 && checked > 0 && a.ledger == c.ledger, d.str()};
}

Outcome primorial_order() {
    double worst = 0.0;
    for (int b = 1; b <= 4; ++b) {
        for (std::size_t dim : {4, 8, 16}) {
            const auto pf = PrimeSpectrumFixture::build(b, dim, 40 + b);
            const double order = primorial(b).convert_to<double>();
            const CMatrix p = spectral_power(pf.underlying(), order).matrix();
            worst = std::max(worst, max_entry_diff(p, CMatrix::Identity(p.rows(), p.cols())));
        }
    }
    return {worst <= 1e-9, "max |U^B - I| " + sci(worst)};
}

CMatrix controlled_shifted(const CMatrix &u, double lambda) {
    const auto d = u.rows();
    CMatrix out = CMatrix::Zero(2 * d, 2 * d);
    out.topLeftCorner(d, d).setIdentity();
    out.bottomRightCorner(d, d) = std::polar(1.0, -2 * std::numbers::pi * lambda) * u;
    return out;
}

Outcome kitaev_construction() {
    double worst = 0.0;
    double leak = 0.0;
    int eigvecs = 0;
    for (std::size_t dim : {2, 4, 8}) {
        CounterRng rng(60 + dim);
        std::vector<double> phases(dim);
        for (double &x : phases) {
            x = 0.95 * rng.uniform();
        }
        const SpectralFixture f = SpectralFixture::haar(phases, 70 + dim);
        BlackBox bb(f);
        const CMatrix u = f.assembled().matrix();
        for (std::size_t k = 0; k < dim; ++k) {
            KitaevControlled kc(bb, KitaevReference::pure(f.eigenvector(k)));
            double l = 0.0;
            // The sandwich is exp(2 pi i lambda) c-(exp(-2 pi i lambda) U); strip the global phase.
            const CMatrix op = std::polar(1.0, -2 * std::numbers::pi * phases[k]) * kc.effective_operator(1, &l);
            worst = std::max(worst, max_entry_diff(op, controlled_shifted(u, phases[k])));
            leak = std::max(leak, l);
            ++eigvecs;
        }
    }
    // Mixed reference: the sampled eigenvector fixes one phase shared by every use.
    double mixed = 0.0;
    const SpectralFixture f = SpectralFixture::haar({0.05, 0.25, 0.4, 0.7}, 9);
    BlackBox bb(f);
    const CMatrix u = f.assembled().matrix();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        KitaevControlled kc(bb, KitaevReference::mixed(seed));
        const double lambda = f.eigphases()[*kc.sampled_index()];
        const Complex g = std::polar(1.0, 2 * std::numbers::pi * lambda);
        const CMatrix one = g * controlled_shifted(u, lambda);
        mixed = std::max(mixed, max_entry_diff(kc.effective_operator(1), one));
        mixed = std::max(mixed, max_entry_diff(kc.effective_operator(2), one * one));
    }
    std::ostringstream d;
    d << eigvecs << " eigenvectors, max entry diff " << sci(worst) << ", leakage " << sci(leak)
      << ", mixed double-use diff " << sci(mixed);
    return {worst <= 1e-12 && leak <= 1e-12 && mixed <= 1e-12, d.str()};
}

Outcome inverse_free() {
    double worst = 0.0;
    std::uint64_t inverses = 0;
    for (int m = 1; m <= 4; ++m) {
        for (std::size_t dim : {2, 4, 8}) {
            for (int r : {1, 3}) {
                PowerRequest req;
                req.t = std::ldexp(1.0, m) * r;
                req.cfg = AncillaConfig{m, r};
                req.mode = PowerMode::inverse_free;
                const ExperimentRecord rec = measure_error(dyadic_fixture(dim, m, 80 + m), req, 4, 13);
                worst = std::max(worst, rec.max_err);
                inverses += rec.calls_uinv + rec.calls_cuinv;
            }
        }
    }
    return {worst <= 1e-10 && inverses == 0,
            "max_err " + sci(worst) + ", inverse queries " + std::to_string(inverses)};
}

Outcome generalized_search() {
    const SpectralFixture f16 = SpectralFixture::haar(std::vector<double>(16, 0.0), 16);
    const SearchRun run = entangled_search(f16, {0}, 3);
    const double expect = std::pow(std::sin(7.0 * std::asin(0.25)), 2);
    const double dev = std::abs(run.success_prob - expect);
    std::ostringstream d;
    d << "P(k=3) " << run.success_prob << " (|diff| " << sci(dev) << "); dimension estimates";
    bool dims_ok = true;
    for (auto [n, dd] : std::vector<std::pair<int, int>>{{4, 1}, {8, 2}, {4, 4}}) {
        const SpectralFixture f = SpectralFixture::haar(std::vector<double>(std::size_t(n), 0.0), 90 + n + dd);
        std::vector<std::size_t> idx;
        for (int j = 0; j < dd; ++j) {
            idx.push_back(std::size_t(j));
        }
        const DimensionEstimate est = estimate_subspace_dim(FlagOracle::from_fixture(f, idx), 5);
        dims_ok = dims_ok && std::abs(est.estimate - dd) <= 1;
        d << " (" << n << "," << dd << ")->" << est.estimate;
    }
    return {dev <= 1e-9 && dims_ok, d.str()};
}

Outcome error_magnification() {
    MagnifyConfig cfg;
    cfg.m = 5;
    const auto rows = magnification_experiment(cfg, {0, 1, 2, 3, 4});
    bool monotone = true;
    std::ostringstream d;
    d << "error_prob k=0..4:";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        d << " " << sci(rows[i].error_prob);
        if (i > 0 && rows[i].error_prob < rows[i - 1].error_prob) {
            monotone = false;
        }
    }
    if (rows.empty() || rows[0].flagged == 0) {
        return {false, "no eigenvector flagged"};
    }
    const double theta = std::asin(std::sqrt(double(rows[0].flagged) / std::ldexp(1.0, cfg.m)));
    bool ratios_ok = true;
    int ratios = 0;
    for (int k = 1; 2 * k < static_cast<int>(rows.size()); ++k) {
        // Both k and 2k must stay in the small-angle regime.
        if ((4 * k + 1) * theta > std::numbers::pi / 2) {
            break;
        }
        const double ratio = rows[2 * k].error_prob / rows[k].error_prob;
        ratios_ok = ratios_ok && ratio >= 2.0 && ratio <= 8.0;
        d << "; error(" << 2 * k << ")/error(" << k << ") = " << ratio;
        ++ratios;
    }
    return {monotone && ratios_ok && ratios > 0, d.str()};
}

/// CSV text with the wall_ms column removed (if present).
std::string without_wall_ms(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) {
            header.push_back(cell);
        }
    }
    const bool has_wall = !header.empty() && header.back() == "wall_ms";
    std::ostringstream out;
    auto strip = [&](const std::string &l) { return has_wall ? l.substr(0, l.rfind(',')) : l; };
    out << strip(line) << '\n';
    while (std::getline(in, line)) {
        out << strip(line) << '\n';
    }
    return out.str();
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"power", "--spectrum", "dyadic", "--m", "3", "--dim", "8", "--t", "0.25", "--samples", "8", "--seed", "4"},
        {"sweep-m", "--m", "3..8", "--spectrum", "third", "--t", "0.5", "--samples", "64", "--seed", "2026"},
        {"fqft", "--n", "3", "--samples", "16", "--seed", "5"},
        {"primorial", "--b", "4", "--dim", "8", "--t", "105", "--samples", "2", "--seed", "3"},
        {"power", "--mode", "inverse-free", "--spectrum", "dyadic", "--m", "2", "--r", "1", "--t", "4", "--dim",
         "4", "--samples", "4", "--seed", "6"},
        {"search", "--dim", "16", "--flagged", "1", "--k", "0..4", "--seed", "16"},
        {"magnify", "--m", "5", "--k", "0..4", "--seed", "1"},
    };
    int differing = 0;
    int failed = 0;
    for (const auto &args : commands) {
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            std::ostringstream out;
            std::ostringstream err;
            if (cli::run(args, out, err) != cli::kExitOk) {
                ++failed;
                break;
            }
            const std::string text = without_wall_ms(out.str());
            if (rep == 0) {
                first = text;
            } else if (text != first) {
                ++differing;
            }
        }
    }
    return {differing == 0 && failed == 0, std::to_string(commands.size()) + " commands run twice, " +
                                               std::to_string(differing) + " differ, " + std::to_string(failed) +
                                               " failed"};
}

struct Criterion {
    int id;
    const char *name;
    double time_limit_s; // <= 0: none
    std::function<Outcome()> check;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "dyadic exactness", 10.0, dyadic_exactness},
        {2, "error scaling", 120.0, error_scaling},
        {3, "fractional QFT", 0.0, fractional_qft},
        {4, "continued-fraction recovery", 30.0, continued_fractions},
        {5, "primorial order", 0.0, primorial_order},
        {6, "controlled-SWAP construction", 0.0, kitaev_construction},
        {7, "inverse-free mode", 0.0, inverse_free},
        {8, "generalized search", 0.0, generalized_search},
        {9, "error magnification", 0.0, error_magnification},
        {10, "determinism", 0.0, determinism},
    };
    int failures = 0;
    for (const Criterion &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = o.pass;
        if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
            pass = false;
            o.detail += "; over the " + std::to_string(int(c.time_limit_s)) + " s limit";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << " [" << timing
                  << "]" << std::endl;
        failures += pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
