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

#include "fracpow/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fracpow/rng.hpp"

namespace fracpow {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kUnitaryTolerance = 1e-10;

bool all_finite(const CMatrix &m) {
    return m.allFinite();
}

} // namespace

Complex phase_turns(double turns) {
    const double angle = 2.0 * std::numbers::pi * wrap_unit(turns);
    return {std::cos(angle), std::sin(angle)};
}

double wrap_unit(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) {
        r = 0.0;
    }
    return r;
}

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

int log2_exact(std::size_t n) {
    if (!is_power_of_two(n)) {
        throw DimensionError("dimension " + std::to_string(n) + " is not a power of two");
    }
    int k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

// ---------------------------------------------------------------- layout

RegisterLayout::RegisterLayout(std::initializer_list<Register> regs)
    : RegisterLayout(std::vector<Register>(regs)) {}

RegisterLayout::RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].qubits <= 0) {
            throw ValidationError("register '" + regs_[i].name + "' must have at least one qubit");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (regs_[j].name == regs_[i].name) {
                throw ValidationError("duplicate register name '" + regs_[i].name + "'");
            }
        }
        total_ += regs_[i].qubits;
    }
    if (total_ > 62) {
        throw ResourceLimitError("register layout exceeds 62 qubits");
    }
}

std::size_t RegisterLayout::find(std::string_view name) const {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].name == name) {
            return i;
        }
    }
    throw DimensionError("no register named '" + std::string(name) + "'");
}

bool RegisterLayout::contains(std::string_view name) const {
    return std::any_of(regs_.begin(), regs_.end(), [&](const Register &r) { return r.name == name; });
}

int RegisterLayout::width(std::string_view name) const {
    return regs_[find(name)].qubits;
}

int RegisterLayout::shift(std::string_view name) const {
    const std::size_t pos = find(name);
    int s = 0;
    for (std::size_t i = pos + 1; i < regs_.size(); ++i) {
        s += regs_[i].qubits;
    }
    return s;
}

std::uint64_t RegisterLayout::mask(std::string_view name) const {
    return ((std::uint64_t{1} << width(name)) - 1) << shift(name);
}

std::uint64_t RegisterLayout::value(std::uint64_t index, std::string_view name) const {
    return (index >> shift(name)) & ((std::uint64_t{1} << width(name)) - 1);
}

std::uint64_t RegisterLayout::with_value(std::uint64_t index, std::string_view name,
                                         std::uint64_t value) const {
    const int s = shift(name);
    const std::uint64_t m = ((std::uint64_t{1} << width(name)) - 1) << s;
    return (index & ~m) | ((value << s) & m);
}

RegisterLayout RegisterLayout::concat(const RegisterLayout &tail) const {
    std::vector<Register> regs = regs_;
    regs.insert(regs.end(), tail.regs_.begin(), tail.regs_.end());
    return RegisterLayout(std::move(regs));
}

bool operator==(const RegisterLayout &a, const RegisterLayout &b) {
    if (a.regs_.size() != b.regs_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.regs_.size(); ++i) {
        if (a.regs_[i].name != b.regs_[i].name || a.regs_[i].qubits != b.regs_[i].qubits) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- unitary

DenseUnitary::DenseUnitary(CMatrix m, Check check) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw DimensionError("unitary must be a non-empty square matrix");
    }
    if (check == Check::validate) {
        if (!all_finite(m_)) {
            throw ValidationError("unitary has non-finite entries");
        }
        if (unitarity_defect() > kUnitaryTolerance) {
            throw ValidationError("matrix is not unitary within 1e-10");
        }
    }
}

DenseUnitary DenseUnitary::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return DenseUnitary(CMatrix::Identity(n, n), Check::trust);
}

DenseUnitary DenseUnitary::adjoint() const {
    return DenseUnitary(m_.adjoint(), Check::trust);
}

double DenseUnitary::unitarity_defect() const {
    const CMatrix defect = m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols());
    return defect.cwiseAbs().maxCoeff();
}

DenseUnitary operator*(const DenseUnitary &a, const DenseUnitary &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("unitary product dimension mismatch");
    }
    return DenseUnitary(a.m_ * b.m_, DenseUnitary::Check::trust);
}

double max_entry_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- state

StateVector::StateVector(CVector amps, RegisterLayout layout, bool)
    : amps_(std::move(amps)), layout_(std::move(layout)) {}

StateVector::StateVector(CVector amps, RegisterLayout layout)
    : amps_(std::move(amps)), layout_(std::move(layout)) {
    if (static_cast<std::size_t>(amps_.size()) != layout_.dim()) {
        throw DimensionError("amplitude count does not match register layout");
    }
    if (!amps_.allFinite()) {
        throw ValidationError("state has non-finite amplitudes");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
        throw ValidationError("state is not normalized");
    }
}

StateVector StateVector::normalized(CVector amps, RegisterLayout layout) {
    const double n = amps.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw ValidationError("cannot normalize a zero or non-finite vector");
    }
    amps /= n;
    return StateVector(std::move(amps), std::move(layout));
}

StateVector StateVector::basis(RegisterLayout layout, std::uint64_t index) {
    if (index >= layout.dim()) {
        throw DimensionError("basis index out of range");
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(layout.dim()));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(amps), std::move(layout), true);
}

StateVector StateVector::on_register(CVector amps, std::string name) {
    const int q = log2_exact(static_cast<std::size_t>(amps.size()));
    return StateVector(std::move(amps), RegisterLayout{{std::move(name), q}});
}

StateVector StateVector::tensor(const StateVector &other) const {
    RegisterLayout layout = layout_.concat(other.layout_);
    const Eigen::Index n = other.amps_.size();
    CVector out(amps_.size() * n);
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        out.segment(i * n, n) = amps_(i) * other.amps_;
    }
    return StateVector(std::move(out), std::move(layout), true);
}

StateVector StateVector::prepend_zero_registers(const std::vector<Register> &regs) const {
    const RegisterLayout head(regs);
    RegisterLayout layout = head.concat(layout_);
    CVector out = CVector::Zero(static_cast<Eigen::Index>(layout.dim()));
    out.head(amps_.size()) = amps_;
    return StateVector(std::move(out), std::move(layout), true);
}

StateVector StateVector::relabel(RegisterLayout layout) const {
    if (layout.dim() != dim()) {
        throw DimensionError("relabel changes the dimension");
    }
    return StateVector(amps_, std::move(layout), true);
}

void StateVector::apply_on(std::string_view reg, const DenseUnitary &u) {
    const int w = layout_.width(reg);
    const int s = layout_.shift(reg);
    const std::size_t sub = std::size_t{1} << w;
    if (u.dim() != sub) {
        throw DimensionError("operator dimension does not match register '" + std::string(reg) + "'");
    }
    const std::uint64_t mask = layout_.mask(reg);
    const CMatrix &m = u.matrix();
    CVector in(static_cast<Eigen::Index>(sub));
    for (std::uint64_t base = 0; base < dim(); ++base) {
        if ((base & mask) != 0) {
            continue;
        }
        for (std::size_t v = 0; v < sub; ++v) {
            in(static_cast<Eigen::Index>(v)) = amps_(static_cast<Eigen::Index>(base | (v << s)));
        }
        const CVector out = m * in;
        for (std::size_t v = 0; v < sub; ++v) {
            amps_(static_cast<Eigen::Index>(base | (v << s))) = out(static_cast<Eigen::Index>(v));
        }
    }
}

void StateVector::apply_controlled(const QubitRef &control, std::string_view reg, const DenseUnitary &u) {
    if (control.reg == reg) {
        throw DimensionError("control qubit lies inside the target register");
    }
    if (control.bit < 0 || control.bit >= layout_.width(control.reg)) {
        throw DimensionError("control bit out of range");
    }
    const std::uint64_t cbit = std::uint64_t{1} << (layout_.shift(control.reg) + control.bit);
    const int w = layout_.width(reg);
    const int s = layout_.shift(reg);
    const std::size_t sub = std::size_t{1} << w;
    if (u.dim() != sub) {
        throw DimensionError("operator dimension does not match register '" + std::string(reg) + "'");
    }
    const std::uint64_t mask = layout_.mask(reg);
    const CMatrix &m = u.matrix();
    CVector in(static_cast<Eigen::Index>(sub));
    for (std::uint64_t base = 0; base < dim(); ++base) {
        if ((base & mask) != 0 || (base & cbit) == 0) {
            continue;
        }
        for (std::size_t v = 0; v < sub; ++v) {
            in(static_cast<Eigen::Index>(v)) = amps_(static_cast<Eigen::Index>(base | (v << s)));
        }
        const CVector out = m * in;
        for (std::size_t v = 0; v < sub; ++v) {
            amps_(static_cast<Eigen::Index>(base | (v << s))) = out(static_cast<Eigen::Index>(v));
        }
    }
}

void StateVector::apply_phase_table(std::string_view reg, std::span<const double> turns) {
    const std::size_t sub = std::size_t{1} << layout_.width(reg);
    if (turns.size() != sub) {
        throw DimensionError("phase table size does not match register '" + std::string(reg) + "'");
    }
    std::vector<Complex> phases(sub);
    for (std::size_t v = 0; v < sub; ++v) {
        phases[v] = phase_turns(turns[v]);
    }
    const int s = layout_.shift(reg);
    const std::uint64_t low = sub - 1;
    for (std::uint64_t i = 0; i < dim(); ++i) {
        amps_(static_cast<Eigen::Index>(i)) *= phases[(i >> s) & low];
    }
}

void StateVector::permute_basis(const std::function<std::uint64_t(std::uint64_t)> &perm) {
    CVector out = CVector::Zero(amps_.size());
    std::vector<bool> hit(dim(), false);
    for (std::uint64_t i = 0; i < dim(); ++i) {
        const std::uint64_t j = perm(i);
        if (j >= dim() || hit[j]) {
            throw ValidationError("basis map is not a permutation");
        }
        hit[j] = true;
        out(static_cast<Eigen::Index>(j)) = amps_(static_cast<Eigen::Index>(i));
    }
    amps_ = std::move(out);
}

void StateVector::controlled_swap(const QubitRef &control, std::string_view a, std::string_view b) {
    if (layout_.width(a) != layout_.width(b)) {
        throw DimensionError("swapped registers differ in width");
    }
    if (control.reg == a || control.reg == b) {
        throw DimensionError("control qubit lies inside a swapped register");
    }
    const std::uint64_t cbit = std::uint64_t{1} << (layout_.shift(control.reg) + control.bit);
    const RegisterLayout &l = layout_;
    permute_basis([&](std::uint64_t i) {
        if ((i & cbit) == 0) {
            return i;
        }
        const std::uint64_t va = l.value(i, a);
        const std::uint64_t vb = l.value(i, b);
        return l.with_value(l.with_value(i, a, vb), b, va);
    });
}

void StateVector::flip_register(std::string_view reg) {
    const std::uint64_t mask = layout_.mask(reg);
    permute_basis([mask](std::uint64_t i) { return i ^ mask; });
}

// ---------------------------------------------------------------- fixture

SpectralFixture::SpectralFixture(DenseUnitary eigvecs, std::vector<double> eigphases, double gap)
    : eigvecs_(std::move(eigvecs)), eigphases_(std::move(eigphases)), gap_(gap) {
    if (eigphases_.size() != eigvecs_.dim()) {
        throw DimensionError("one eigenphase per eigenvector is required");
    }
    log2_exact(eigvecs_.dim());
    if (!(gap_ > 0.0 && gap_ <= 1.0)) {
        throw ValidationError("gap must lie in (0, 1]");
    }
    for (double &lam : eigphases_) {
        if (!std::isfinite(lam)) {
            throw ValidationError("eigenphase is not finite");
        }
        if (lam < 0.0 || lam >= 1.0) {
            lam = wrap_unit(lam);
        }
        if (lam > 1.0 - gap_ + 1e-12) {
            throw ValidationError("eigenphase " + std::to_string(lam) + " violates the declared gap");
        }
    }
}

double SpectralFixture::natural_gap(std::span<const double> eigphases) {
    double hi = 0.0;
    for (double lam : eigphases) {
        hi = std::max(hi, wrap_unit(lam));
    }
    return 1.0 - hi;
}

SpectralFixture SpectralFixture::diagonal(std::vector<double> eigphases) {
    const double g = natural_gap(eigphases);
    DenseUnitary basis = DenseUnitary::identity(eigphases.size());
    return SpectralFixture(std::move(basis), std::move(eigphases), g);
}

SpectralFixture SpectralFixture::haar(std::vector<double> eigphases, std::uint64_t seed) {
    CounterRng rng(seed, 0xF1);
    DenseUnitary basis = haar_unitary(eigphases.size(), rng);
    const double g = natural_gap(eigphases);
    return SpectralFixture(std::move(basis), std::move(eigphases), g);
}

CVector SpectralFixture::eigenvector(std::size_t k) const {
    return eigvecs_.matrix().col(static_cast<Eigen::Index>(k));
}

DenseUnitary SpectralFixture::assembled() const {
    return spectral_power(*this, 1.0);
}

SpectralFixture SpectralFixture::with_phases(std::vector<double> eigphases) const {
    const double g = natural_gap(eigphases);
    return SpectralFixture(eigvecs_, std::move(eigphases), g);
}

// ---------------------------------------------------------------- operations

DenseUnitary tensor(const DenseUnitary &a, const DenseUnitary &b, const Limits &limits) {
    const std::size_t d = a.dim() * b.dim();
    if (d > (std::size_t{1} << limits.max_unitary_qubits)) {
        throw ResourceLimitError("tensor product exceeds the configured maximum dimension");
    }
    const auto nb = static_cast<Eigen::Index>(b.dim());
    CMatrix out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < a.matrix().rows(); ++i) {
        for (Eigen::Index j = 0; j < a.matrix().cols(); ++j) {
            out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
        }
    }
    return DenseUnitary(std::move(out), DenseUnitary::Check::trust);
}

StateVector apply(const DenseUnitary &u, const StateVector &s) {
    if (u.dim() != s.dim()) {
        throw DimensionError("unitary and state dimensions differ");
    }
    return StateVector::normalized(u.matrix() * s.amplitudes(), s.layout());
}

DenseUnitary spectral_function(const SpectralFixture &f, std::span<const double> turns) {
    if (turns.size() != f.dim()) {
        throw DimensionError("one phase per eigenvector is required");
    }
    CVector diag(static_cast<Eigen::Index>(f.dim()));
    for (std::size_t k = 0; k < f.dim(); ++k) {
        diag(static_cast<Eigen::Index>(k)) = phase_turns(turns[k]);
    }
    const CMatrix &p = f.eigvecs().matrix();
    return DenseUnitary(p * diag.asDiagonal() * p.adjoint(), DenseUnitary::Check::trust);
}

DenseUnitary spectral_power(const SpectralFixture &f, double t) {
    if (!std::isfinite(t)) {
        throw ValidationError("power must be finite");
    }
    std::vector<double> turns(f.dim());
    for (std::size_t k = 0; k < f.dim(); ++k) {
        turns[k] = f.eigphases()[k] * t;
    }
    return spectral_function(f, turns);
}

double trace_distance_from_overlap(Complex overlap) {
    const double o2 = std::min(1.0, std::norm(overlap));
    return 2.0 * std::sqrt(1.0 - o2);
}

double trace_distance(const CVector &u, const CVector &v) {
    if (u.size() != v.size()) {
        throw DimensionError("states have different dimensions");
    }
    const double nu = u.norm();
    const double nv = v.norm();
    if (!(nu > 0.0) || !(nv > 0.0)) {
        throw ValidationError("trace distance of a zero vector");
    }
    // |v - u<u|v>| = sqrt(1 - |<u|v>|^2) without the cancellation near 1.
    const CVector un = u / nu;
    const CVector vn = v / nv;
    const double perp = (vn - un * un.dot(vn)).norm();
    return std::min(2.0, 2.0 * perp);
}

double pure_trace_distance(const StateVector &u, const StateVector &v) {
    return trace_distance(u.amplitudes(), v.amplitudes());
}

double operator_error_sample(const DenseUnitary &a, const DenseUnitary &b, int n_samples,
                             std::uint64_t seed) {
    if (a.dim() != b.dim()) {
        throw DimensionError("operators have different dimensions");
    }
    if (n_samples < 1) {
        throw ValidationError("n_samples must be positive");
    }
    CounterRng rng(seed, 0x5A);
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const CVector phi = haar_vector(a.dim(), rng);
        const CVector ua = a.matrix() * phi;
        const CVector ub = b.matrix() * phi;
        worst = std::max(worst, trace_distance(ua, ub));
    }
    return worst;
}

CVector haar_vector(std::size_t dim, CounterRng &rng) {
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return v / v.norm();
}

StateVector haar_state(const RegisterLayout &layout, CounterRng &rng) {
    return StateVector::normalized(haar_vector(layout.dim(), rng), layout);
}

DenseUnitary haar_unitary(std::size_t dim, CounterRng &rng) {
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix z(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = Complex(re, im) / std::numbers::sqrt2;
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return DenseUnitary(std::move(q));
}

namespace gates {

DenseUnitary hadamard() {
    CMatrix m(2, 2);
    const double h = 1.0 / std::numbers::sqrt2;
    m << h, h, h, -h;
    return DenseUnitary(std::move(m));
}

DenseUnitary pauli_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return DenseUnitary(std::move(m));
}

DenseUnitary pauli_z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return DenseUnitary(std::move(m));
}

DenseUnitary phase_s() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, Complex(0.0, 1.0);
    return DenseUnitary(std::move(m));
}

} // namespace gates

} // namespace fracpow
