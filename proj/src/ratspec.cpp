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

#include "fracpow/ratspec.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <boost/integer/common_factor.hpp>

#include "engine.hpp"

namespace fracpow {

namespace {

using detail::SimulatorAccess;

BigInt pow10(int e) {
    BigInt out = 1;
    for (int i = 0; i < e; ++i) {
        out *= 10;
    }
    return out;
}

std::int64_t mod_small(const BigInt &a, std::int64_t n) {
    return static_cast<std::int64_t>(a % n);
}

BigInt parse_digits(std::string_view text) {
    if (text.empty()) {
        throw ValidationError("empty integer");
    }
    BigInt out = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ValidationError("bad digit in '" + std::string(text) + "'");
        }
        out = out * 10 + (c - '0');
    }
    return out;
}

bool is_prime(std::int64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

} // namespace

Fraction Fraction::reduced(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw ValidationError("fraction with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return {num / g, den / g};
}

std::vector<Fraction> convergents(std::uint64_t h, std::uint64_t q) {
    if (q == 0 || h >= q) {
        throw ValidationError("convergents need 0 <= h < q");
    }
    std::vector<Fraction> out;
    // p_{k-2}, p_{k-1} and q_{k-2}, q_{k-1}.
    std::uint64_t p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    std::uint64_t a = h, b = q;
    while (b != 0) {
        const std::uint64_t digit = a / b;
        const std::uint64_t p = digit * p1 + p2;
        const std::uint64_t qq = digit * q1 + q2;
        out.push_back({static_cast<std::int64_t>(p), static_cast<std::int64_t>(qq)});
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = qq;
        const std::uint64_t rem = a % b;
        a = b;
        b = rem;
    }
    return out;
}

std::optional<Fraction> recover_eigenphase(std::uint64_t h, int m, std::int64_t p_max) {
    if (m < 1 || m > 62) {
        throw ValidationError("m out of range");
    }
    const std::uint64_t n = std::uint64_t{1} << m;
    if (h >= n) {
        throw ValidationError("estimate does not fit in m bits");
    }
    std::optional<Fraction> best;
    unsigned __int128 best_dist = 0;
    std::int64_t best_den = 1;
    auto consider = [&](std::uint64_t num, std::uint64_t den_u) {
        // Circular distance |h/n - num/den| scaled by n * den, exact.
        const auto den = static_cast<unsigned __int128>(den_u);
        const unsigned __int128 period = den * n;
        const unsigned __int128 lhs = static_cast<unsigned __int128>(h) * den;
        const unsigned __int128 rhs = static_cast<unsigned __int128>(num) * n;
        const unsigned __int128 diff = (lhs + period - rhs % period) % period;
        const unsigned __int128 dist = std::min(diff, period - diff);
        if (dist > den) {
            return;
        }
        // Compare dist / den across candidates; the smaller denominator wins ties.
        if (!best || dist * static_cast<unsigned __int128>(best_den) < best_dist * den) {
            const auto d = static_cast<std::int64_t>(den_u);
            best = Fraction::reduced(static_cast<std::int64_t>(num) % d, d);
            best_dist = dist;
            best_den = d;
        }
    };
    // Walk the convergents together with the intermediate fractions between
    // them. The closest fraction with a bounded denominator is always one of
    // these, even when it is too far from h/n to be a convergent (3/8 is
    // within 1/32 of 2/5, yet 2/5 is not a convergent of 3/8).
    std::uint64_t p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    std::uint64_t a = h, b = n;
    const auto limit = static_cast<std::uint64_t>(p_max);
    while (b != 0) {
        const std::uint64_t digit = a / b;
        for (std::uint64_t i = digit == 0 ? 0 : 1; i <= digit; ++i) {
            const std::uint64_t den = i * q1 + q2;
            if (den > limit) {
                return best;
            }
            if (den != 0) {
                consider(i * p1 + p2, den);
            }
        }
        const std::uint64_t p = digit * p1 + p2;
        const std::uint64_t q = digit * q1 + q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
        const std::uint64_t rem = a % b;
        a = b;
        b = rem;
    }
    return best;
}

std::vector<std::int64_t> first_primes(int b) {
    if (b < 1) {
        throw ValidationError("b must be positive");
    }
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; static_cast<int>(out.size()) < b; ++n) {
        if (is_prime(n)) {
            out.push_back(n);
        }
    }
    return out;
}

BigInt primorial(int b) {
    BigInt out = 1;
    for (std::int64_t p : first_primes(b)) {
        out *= p;
    }
    return out;
}

bool uniqueness_premise(int b, int m) {
    if (m < 1) {
        return false;
    }
    if (b == 1) {
        return true;
    }
    const std::vector<std::int64_t> p = first_primes(b);
    const BigInt bound = BigInt(2) * p[p.size() - 1] * p[p.size() - 2];
    return (BigInt(1) << m) > bound;
}

int required_m(int b) {
    int m = 1;
    while (!uniqueness_premise(b, m)) {
        ++m;
    }
    return m;
}

Exponent Exponent::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw ValidationError("empty exponent");
    }
    if (text.front() == '-') {
        throw ValidationError("exponent must be non-negative");
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    Exponent out;
    if (const auto caret = text.find('^'); caret != std::string_view::npos) {
        const BigInt base = parse_digits(text.substr(0, caret));
        const BigInt e = parse_digits(text.substr(caret + 1));
        if (e > 100000) {
            throw ValidationError("exponent power is too large");
        }
        out.whole = boost::multiprecision::pow(base, static_cast<unsigned>(e));
        return out;
    }
    std::string_view mantissa = text;
    long long exp10 = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        std::string_view ex = text.substr(e + 1);
        bool neg = false;
        if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
            neg = ex.front() == '-';
            ex.remove_prefix(1);
        }
        const BigInt v = parse_digits(ex);
        if (v > 100000) {
            throw ValidationError("decimal exponent is too large");
        }
        exp10 = neg ? -static_cast<long long>(v) : static_cast<long long>(v);
    }
    std::string digits;
    long long frac_digits = 0;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
        frac_digits = static_cast<long long>(mantissa.size() - dot - 1);
    } else {
        digits = std::string(mantissa);
    }
    const BigInt all = parse_digits(digits);
    const long long scale = exp10 - frac_digits;
    if (scale >= 0) {
        out.whole = all * pow10(static_cast<int>(scale));
        return out;
    }
    const BigInt den = pow10(static_cast<int>(-scale));
    out.whole = all / den;
    const BigInt rem = all % den;
    if (rem != 0) {
        // Keep ~17 significant digits of the remainder.
        const int drop = std::max(0, static_cast<int>(-scale) - 30);
        const BigInt r = rem / pow10(drop);
        const BigInt d = den / pow10(drop);
        out.frac = r.convert_to<double>() / d.convert_to<double>();
        if (out.frac >= 1.0) {
            out.frac = std::nextafter(1.0, 0.0);
        }
    }
    return out;
}

Exponent Exponent::from_double(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw ValidationError("exponent must be finite and non-negative");
    }
    Exponent out;
    const double w = std::floor(t);
    out.whole = BigInt(w);
    out.frac = t - w;
    return out;
}

std::string Exponent::str() const {
    std::string out = whole.str();
    if (frac > 0.0) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17f", frac);
        std::string f(buf);
        while (!f.empty() && f.back() == '0') {
            f.pop_back();
        }
        out += f.substr(1);
    }
    return out;
}

double Exponent::approx() const {
    return whole.convert_to<double>() + frac;
}

double modular_phase(const Fraction &f, const Exponent &t) {
    if (f.den <= 0) {
        throw ValidationError("fraction with non-positive denominator");
    }
    const std::int64_t num = ((f.num % f.den) + f.den) % f.den;
    const std::int64_t w = mod_small(t.whole, f.den);
    const auto prod = static_cast<std::int64_t>((static_cast<__int128>(w) * num) % f.den);
    return wrap_unit((static_cast<double>(prod) + t.frac * static_cast<double>(num)) / static_cast<double>(f.den));
}

// ---------------------------------------------------------------- fixture

PrimeSpectrumFixture::PrimeSpectrumFixture(int b, std::vector<Fraction> fractions, SpectralFixture underlying)
    : b_(b), primes_(first_primes(b)), assignment_(std::move(fractions)), underlying_(std::move(underlying)) {}

PrimeSpectrumFixture PrimeSpectrumFixture::build(int b, std::size_t dim, std::uint64_t seed) {
    const std::vector<std::int64_t> primes = first_primes(b);
    if (!is_power_of_two(dim)) {
        throw DimensionError("fixture dimension must be a power of two");
    }
    std::vector<Fraction> pool{{0, 1}};
    for (std::int64_t l = 1; l < primes.back(); ++l) {
        for (std::int64_t p : primes) {
            if (l < p) {
                pool.push_back({l, p});
            }
        }
    }
    std::vector<Fraction> fractions;
    for (std::size_t k = 0; k < dim; ++k) {
        fractions.push_back(pool[k % pool.size()]);
    }
    std::vector<double> phases;
    for (const Fraction &f : fractions) {
        phases.push_back(f.value());
    }
    return PrimeSpectrumFixture(b, std::move(fractions), SpectralFixture::haar(std::move(phases), seed));
}

PrimeSpectrumFixture PrimeSpectrumFixture::from_fractions(std::vector<Fraction> fractions, std::uint64_t seed) {
    if (fractions.empty()) {
        throw ValidationError("no fractions given");
    }
    std::int64_t largest = 2;
    std::vector<double> phases;
    for (Fraction &f : fractions) {
        if (f.den <= 0) {
            throw ValidationError("fraction with non-positive denominator");
        }
        f = Fraction::reduced(((f.num % f.den) + f.den) % f.den, f.den);
        if (f.den != 1 && !is_prime(f.den)) {
            throw ValidationError("denominator " + std::to_string(f.den) + " is not prime");
        }
        largest = std::max(largest, f.den);
        phases.push_back(f.value());
    }
    int b = 0;
    for (std::int64_t n = 2; n <= largest; ++n) {
        b += is_prime(n) ? 1 : 0;
    }
    return PrimeSpectrumFixture(b, std::move(fractions), SpectralFixture::haar(std::move(phases), seed));
}

BigInt PrimeSpectrumFixture::order() const {
    BigInt out = 1;
    for (const Fraction &f : assignment_) {
        out = boost::integer::lcm(out, BigInt(f.den));
    }
    return out;
}

// ---------------------------------------------------------------- power

std::vector<Fraction> fractions_of(const SpectralFixture &f, std::int64_t p_max) {
    std::vector<Fraction> out;
    for (double lambda : f.eigphases()) {
        std::optional<Fraction> found;
        for (std::int64_t den = 1; den <= p_max && !found; ++den) {
            const double num = std::round(lambda * static_cast<double>(den));
            if (std::abs(lambda - num / static_cast<double>(den)) < 1e-9) {
                const auto n = static_cast<std::int64_t>(num) % den;
                found = Fraction::reduced(n, den);
            }
        }
        if (!found) {
            throw ValidationError("eigenphase " + std::to_string(lambda) + " is not a fraction with denominator <= " +
                                  std::to_string(p_max));
        }
        out.push_back(*found);
    }
    return out;
}

DenseUnitary rational_power_oracle(const SpectralFixture &f, std::int64_t p_max, const Exponent &t) {
    const std::vector<Fraction> fr = fractions_of(f, p_max);
    std::vector<double> turns;
    turns.reserve(fr.size());
    for (const Fraction &x : fr) {
        turns.push_back(modular_phase(x, t));
    }
    return spectral_function(f, turns);
}

RunResult exact_power_apply(BlackBox &bb, int b, const StateVector &s, const Exponent &t, const AncillaConfig &cfg,
                            const RunOptions &opts) {
    cfg.validate();
    const std::vector<std::int64_t> primes = first_primes(b);
    if (!uniqueness_premise(b, cfg.m)) {
        const int need = required_m(b);
        std::string bound = "2^m > 2 * " + std::to_string(primes.back()) + " * " +
                            std::to_string(primes[primes.size() - 2]) + " = " +
                            std::to_string(2 * primes.back() * primes[primes.size() - 2]);
        throw PremiseError("uniqueness premise " + bound + " fails for m = " + std::to_string(cfg.m) +
                               "; need m >= " + std::to_string(need),
                           need);
    }
    const std::int64_t p_max = primes.back();
    const std::uint64_t n = cfg.grid();
    std::vector<double> table(n);
    for (std::uint64_t h = 0; h < n; ++h) {
        const std::optional<Fraction> f = recover_eigenphase(h, cfg.m, p_max);
        // Unrecognised estimates fall back to the raw m-bit phase h / 2^m.
        table[h] = modular_phase(f ? *f : Fraction{static_cast<std::int64_t>(h), static_cast<std::int64_t>(n)}, t);
    }
    const StateVector target = engine::as_target(bb, s);
    const QueryLedger before = bb.ledger();
    engine::SandwichProgram program{cfg, std::move(table), Uncompute::inverse};
    engine::SandwichResult res = engine::run(bb, target, program, opts);
    const DenseUnitary oracle = rational_power_oracle(SimulatorAccess::hidden(bb), p_max, t);
    return engine::finish(bb, s, std::move(res.projected), res.residual, oracle, before);
}

RunResult exact_power_apply(const PrimeSpectrumFixture &pf, const StateVector &s, const Exponent &t,
                            const AncillaConfig &cfg, const RunOptions &opts) {
    BlackBox bb(pf.underlying());
    return exact_power_apply(bb, pf.b(), s, t, cfg, opts);
}

} // namespace fracpow
