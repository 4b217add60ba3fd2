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
 * Dense complex linear algebra: register-labelled state vectors, unitaries,
 * spectral fixtures with exact fractional powers, and pure-state distances.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fracpow/error.hpp"

namespace fracpow {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Width limits for dense simulation.
struct Limits {
    /// Largest dense unitary / fixture, in qubits (dim 16384 by default).
    int max_unitary_qubits = 14;
    /// Largest register-level state vector simulated densely, in qubits.
    int max_state_qubits = 24;
};

/// exp(2 pi i * turns), with the argument reduced mod 1 first.
Complex phase_turns(double turns);
/// x mod 1 on [0, 1).
double wrap_unit(double x);
bool is_power_of_two(std::size_t n);
int log2_exact(std::size_t n);

struct Register {
    std::string name;
    int qubits = 0;
};

/**
 * Ordered list of named registers. The first register holds the most
 * significant bits of a basis index, so |a>|b> has index a * 2^|b| + b.
 * Bit b of a register value is (value >> b) & 1.
 */
class RegisterLayout {
  public:
    RegisterLayout() = default;
    RegisterLayout(std::initializer_list<Register> regs);
    explicit RegisterLayout(std::vector<Register> regs);

    [[nodiscard]] const std::vector<Register> &registers() const { return regs_; }
    [[nodiscard]] int total_qubits() const { return total_; }
    [[nodiscard]] std::size_t dim() const { return std::size_t{1} << total_; }
    [[nodiscard]] bool contains(std::string_view name) const;
    [[nodiscard]] int width(std::string_view name) const;
    /// Position of the register's least significant bit within an index.
    [[nodiscard]] int shift(std::string_view name) const;
    [[nodiscard]] std::uint64_t mask(std::string_view name) const;
    [[nodiscard]] std::uint64_t value(std::uint64_t index, std::string_view name) const;
    [[nodiscard]] std::uint64_t with_value(std::uint64_t index, std::string_view name,
                                           std::uint64_t value) const;

    [[nodiscard]] RegisterLayout concat(const RegisterLayout &tail) const;
    friend bool operator==(const RegisterLayout &a, const RegisterLayout &b);

  private:
    [[nodiscard]] std::size_t find(std::string_view name) const;

    std::vector<Register> regs_;
    int total_ = 0;
};

/// Names a single qubit of a register.
struct QubitRef {
    std::string reg;
    int bit = 0;
};

/// Unitary matrix, checked on construction unless trusted.
class DenseUnitary {
  public:
    enum class Check { validate, trust };

    explicit DenseUnitary(CMatrix m, Check check = Check::validate);
    static DenseUnitary identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    [[nodiscard]] const CMatrix &matrix() const { return m_; }
    [[nodiscard]] Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    [[nodiscard]] DenseUnitary adjoint() const;
    /// Largest entrywise |U^dag U - I|.
    [[nodiscard]] double unitarity_defect() const;

    friend DenseUnitary operator*(const DenseUnitary &a, const DenseUnitary &b);

  private:
    CMatrix m_;
};

/// Largest entrywise modulus of a - b.
double max_entry_diff(const CMatrix &a, const CMatrix &b);

/**
 * Normalized amplitude vector over a register layout.
 *
 * Register-level operations mutate in place and preserve the norm as long as
 * the supplied operators are unitary.
 */
class StateVector {
  public:
    /// Validates dim, finiteness and unit norm (tolerance 1e-10).
    StateVector(CVector amps, RegisterLayout layout);
    /// Rescales amps to unit norm, then validates.
    static StateVector normalized(CVector amps, RegisterLayout layout);
    static StateVector basis(RegisterLayout layout, std::uint64_t index);
    static StateVector zero(RegisterLayout layout) { return basis(std::move(layout), 0); }
    /// Single register state named `name`.
    static StateVector on_register(CVector amps, std::string name = "target");

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    [[nodiscard]] const CVector &amplitudes() const { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
    [[nodiscard]] const RegisterLayout &layout() const { return layout_; }
    [[nodiscard]] double norm() const { return amps_.norm(); }

    /// |this> (x) |other>, layouts concatenated.
    [[nodiscard]] StateVector tensor(const StateVector &other) const;
    /// |0...0>_regs (x) |this>.
    [[nodiscard]] StateVector prepend_zero_registers(const std::vector<Register> &regs) const;
    /// Same amplitudes, renamed single register.
    [[nodiscard]] StateVector relabel(RegisterLayout layout) const;

    /// Applies u to register `reg` (u.dim() must equal 2^width).
    void apply_on(std::string_view reg, const DenseUnitary &u);
    /// Applies u to `reg` on the branch where `control` is 1.
    void apply_controlled(const QubitRef &control, std::string_view reg, const DenseUnitary &u);
    /// Multiplies basis states by exp(2 pi i turns[value of reg]).
    void apply_phase_table(std::string_view reg, std::span<const double> turns);
    /// Basis relabelling |i> -> |perm(i)>; perm must be a bijection.
    void permute_basis(const std::function<std::uint64_t(std::uint64_t)> &perm);
    /// Swaps registers a and b (equal widths) where `control` is 1.
    void controlled_swap(const QubitRef &control, std::string_view a, std::string_view b);
    /// Pauli X on every qubit of reg.
    void flip_register(std::string_view reg);

  private:
    StateVector(CVector amps, RegisterLayout layout, bool);

    CVector amps_;
    RegisterLayout layout_;
};

/**
 * Test unitary stored by its eigendecomposition: eigvecs (columns) and
 * eigenphases lambda_k in [0, 1) with eigenvalue exp(2 pi i lambda_k). The
 * declared gap g promises every lambda_k <= 1 - g.
 */
class SpectralFixture {
  public:
    SpectralFixture(DenseUnitary eigvecs, std::vector<double> eigphases, double gap);

    /// Computational-basis eigenvectors; gap = 1 - max phase.
    static SpectralFixture diagonal(std::vector<double> eigphases);
    /// Haar-random eigenbasis drawn from `seed`; gap = 1 - max phase.
    static SpectralFixture haar(std::vector<double> eigphases, std::uint64_t seed);
    /// Largest gap the phases allow.
    static double natural_gap(std::span<const double> eigphases);

    [[nodiscard]] std::size_t dim() const { return eigvecs_.dim(); }
    [[nodiscard]] int qubits() const { return log2_exact(dim()); }
    [[nodiscard]] const DenseUnitary &eigvecs() const { return eigvecs_; }
    [[nodiscard]] std::span<const double> eigphases() const { return eigphases_; }
    [[nodiscard]] double gap() const { return gap_; }
    [[nodiscard]] CVector eigenvector(std::size_t k) const;
    /// P diag(exp(2 pi i lambda)) P^dag.
    [[nodiscard]] DenseUnitary assembled() const;
    /// Same eigenbasis, new phases (gap recomputed).
    [[nodiscard]] SpectralFixture with_phases(std::vector<double> eigphases) const;

  private:
    DenseUnitary eigvecs_;
    std::vector<double> eigphases_;
    double gap_;
};

/// Kronecker product; errors when the result exceeds limits.max_unitary_qubits.
DenseUnitary tensor(const DenseUnitary &a, const DenseUnitary &b, const Limits &limits = {});

/// u |s> on the whole state.
StateVector apply(const DenseUnitary &u, const StateVector &s);

/// Primitive-branch power P diag(exp(2 pi i lambda_k t)) P^dag.
DenseUnitary spectral_power(const SpectralFixture &f, double t);

/// Same eigenbasis with caller-chosen phases (turns) per eigenvector.
DenseUnitary spectral_function(const SpectralFixture &f, std::span<const double> turns);

/// 2 sqrt(1 - |<u|v>|^2), the trace norm of |u><u| - |v><v|.
double pure_trace_distance(const StateVector &u, const StateVector &v);
/// Same formula from a precomputed overlap (loses accuracy below ~1e-8).
double trace_distance_from_overlap(Complex overlap);
/// Pure trace distance between the normalizations of u and v, computed from
/// the component of v orthogonal to u so it stays accurate down to 1e-16.
double trace_distance(const CVector &u, const CVector &v);

/// max over n_samples Haar states of pure_trace_distance(a|phi>, b|phi>).
double operator_error_sample(const DenseUnitary &a, const DenseUnitary &b, int n_samples,
                             std::uint64_t seed);

class CounterRng;

/// Normalized complex Gaussian vector of dimension dim.
CVector haar_vector(std::size_t dim, CounterRng &rng);
StateVector haar_state(const RegisterLayout &layout, CounterRng &rng);
/// QR of a complex Gaussian matrix with the R-diagonal phases removed.
DenseUnitary haar_unitary(std::size_t dim, CounterRng &rng);

namespace gates {
DenseUnitary hadamard();
DenseUnitary pauli_x();
DenseUnitary pauli_z();
DenseUnitary phase_s();
} // namespace gates

} // namespace fracpow
