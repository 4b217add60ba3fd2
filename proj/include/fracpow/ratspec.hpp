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
 * Prime-denominator spectra: continued-fraction recovery of eigenphases from
 * m-bit estimates, primorials, and powers U^t whose query cost does not
 * depend on t.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fracpow/blackbox.hpp"
#include "fracpow/phasest.hpp"
#include "fracpow/power.hpp"
#include "fracpow/qcore.hpp"

namespace fracpow {

using BigInt = boost::multiprecision::cpp_int;

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    /// Lowest terms with a positive denominator.
    static Fraction reduced(std::int64_t num, std::int64_t den);
    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    [[nodiscard]] std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    friend bool operator==(const Fraction &, const Fraction &) = default;
};

/// Convergents of h/q by increasing denominator, the last being h/q reduced.
std::vector<Fraction> convergents(std::uint64_t h, std::uint64_t q);

/**
 * The fraction with denominator <= p_max closest (circularly) to h/2^m,
 * provided it lies within 1/2^m. Candidates are the convergents of h/2^m and
 * the intermediate fractions between consecutive convergents. The numerator is reduced mod the
 * denominator, so an estimate just below 1 recovers 0/1.
 */
std::optional<Fraction> recover_eigenphase(std::uint64_t h, int m, std::int64_t p_max);

std::vector<std::int64_t> first_primes(int b);
BigInt primorial(int b);

/// 2^m > 2 p_b p_{b-1}. For b = 1 every m >= 1 qualifies (the spectrum is dyadic).
bool uniqueness_premise(int b, int m);
/// Smallest m satisfying uniqueness_premise.
int required_m(int b);

/// Non-negative exponent with an arbitrary-precision integer part.
struct Exponent {
    BigInt whole = 0;
    double frac = 0.0;

    /// Decimal ("105", "2.5", "1099511627776") or power ("2^40", "10^9") notation.
    static Exponent parse(std::string_view text);
    static Exponent from_double(double t);
    [[nodiscard]] std::string str() const;
    [[nodiscard]] double approx() const;
};

/// (t * num mod den) / den in turns, with the integer part of t reduced exactly.
double modular_phase(const Fraction &f, const Exponent &t);

class PrimeSpectrumFixture {
  public:
    /**
     * dim eigenvalues exp(2 pi i l/p) with p among the first b primes, the
     * fractions cycling 0/1, 1/2, 1/3, 1/5, ..., 2/3, ... so each prime shows
     * up with a nonzero numerator once dim > b. Haar eigenbasis from seed.
     */
    static PrimeSpectrumFixture build(int b, std::size_t dim, std::uint64_t seed);
    /// Explicit fractions; b is the number of primes needed to cover them.
    static PrimeSpectrumFixture from_fractions(std::vector<Fraction> fractions, std::uint64_t seed);

    [[nodiscard]] int b() const { return b_; }
    [[nodiscard]] const std::vector<std::int64_t> &primes() const { return primes_; }
    [[nodiscard]] std::int64_t p_max() const { return primes_.back(); }
    [[nodiscard]] const std::vector<Fraction> &assignment() const { return assignment_; }
    [[nodiscard]] const SpectralFixture &underlying() const { return underlying_; }
    /// lcm of the denominators.
    [[nodiscard]] BigInt order() const;

  private:
    PrimeSpectrumFixture(int b, std::vector<Fraction> fractions, SpectralFixture underlying);

    int b_;
    std::vector<std::int64_t> primes_;
    std::vector<Fraction> assignment_;
    SpectralFixture underlying_;
};

/**
 * Estimation, continued-fraction recovery of l/p on the mode register, the
 * exact phase (t l mod p)/p, then uncomputation. Query cost depends only on
 * (m, r). Throws PremiseError naming the required m when 2^m <= 2 p_b p_{b-1}.
 * err_vs_oracle is measured against rational_power_oracle.
 */
RunResult exact_power_apply(BlackBox &bb, int b, const StateVector &s, const Exponent &t, const AncillaConfig &cfg,
                            const RunOptions &opts = {});
/// Convenience overload with a fresh, fully capable black box over pf.
RunResult exact_power_apply(const PrimeSpectrumFixture &pf, const StateVector &s, const Exponent &t,
                            const AncillaConfig &cfg, const RunOptions &opts = {});

/// Fractions of the fixture phases (den <= p_max), or ValidationError.
std::vector<Fraction> fractions_of(const SpectralFixture &f, std::int64_t p_max);
/// P diag(exp(2 pi i (t l_k mod p_k)/p_k)) P^dag.
DenseUnitary rational_power_oracle(const SpectralFixture &f, std::int64_t p_max, const Exponent &t);

} // namespace fracpow
