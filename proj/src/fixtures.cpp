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

#include "fracpow/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fracpow/phasest.hpp"
#include "json.hpp"

namespace fracpow {

SpectralFixture dyadic_fixture(std::size_t dim, int m, std::uint64_t seed) {
    if (m < 1 || m > 30) {
        throw ValidationError("m out of range");
    }
    const std::size_t n = std::size_t{1} << m;
    std::vector<double> phases(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        phases[k] = static_cast<double>(k % n) / static_cast<double>(n);
    }
    return SpectralFixture::haar(std::move(phases), seed);
}

SpectralFixture third_fixture(std::size_t dim, std::uint64_t seed) {
    std::vector<double> phases(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        phases[k] = static_cast<double>(k % 2) / 3.0;
    }
    return SpectralFixture::haar(std::move(phases), seed);
}

SpectralFixture qft_fixture(int n, const Limits &limits) {
    const DenseUnitary f = qft(n, limits);
    const auto dim = static_cast<Eigen::Index>(f.dim());
    // F^4 = I; P_a = (1/4) sum_j i^(-a j) F^j projects onto eigenvalue i^a.
    std::vector<CMatrix> powers{CMatrix::Identity(dim, dim)};
    for (int j = 1; j < 4; ++j) {
        powers.push_back(powers.back() * f.matrix());
    }
    CMatrix basis(dim, dim);
    std::vector<double> phases;
    Eigen::Index filled = 0;
    for (int a = 0; a < 4; ++a) {
        CMatrix proj = CMatrix::Zero(dim, dim);
        for (int j = 0; j < 4; ++j) {
            proj += phase_turns(-static_cast<double>(a * j) / 4.0) * powers[static_cast<std::size_t>(j)];
        }
        proj /= 4.0;
        const auto rank = static_cast<Eigen::Index>(std::lround(proj.trace().real()));
        if (rank == 0) {
            continue;
        }
        Eigen::ColPivHouseholderQR<CMatrix> qr(proj);
        const CMatrix q = qr.householderQ() * CMatrix::Identity(dim, rank);
        basis.middleCols(filled, rank) = q;
        filled += rank;
        phases.insert(phases.end(), static_cast<std::size_t>(rank), a / 4.0);
    }
    if (filled != dim) {
        throw Error("QFT eigenspaces do not add up to the full dimension");
    }
    SpectralFixture out(DenseUnitary(std::move(basis)), std::move(phases), 0.25);
    if (max_entry_diff(out.assembled().matrix(), f.matrix()) > 1e-10) {
        throw Error("QFT eigendecomposition does not reproduce the QFT");
    }
    return out;
}

SpectralFixture fixture_from_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("fixture file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("fixture file must hold a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (key != "dim" && key != "eigvecs" && key != "eigphases" && key != "gap") {
            throw ValidationError("unknown fixture key '" + key + "'");
        }
    }
    try {
        const auto dim = doc.at("dim").get<std::size_t>();
        const auto &vecs = doc.at("eigvecs");
        if (!vecs.is_array() || vecs.size() != dim * dim) {
            throw ValidationError("eigvecs must hold dim * dim complex pairs");
        }
        CMatrix p(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim * dim; ++i) {
            const auto &pair = vecs[i];
            if (!pair.is_array() || pair.size() != 2) {
                throw ValidationError("each eigvecs entry must be [re, im]");
            }
            p(static_cast<Eigen::Index>(i / dim), static_cast<Eigen::Index>(i % dim)) =
                Complex(pair[0].get<double>(), pair[1].get<double>());
        }
        auto phases = doc.at("eigphases").get<std::vector<double>>();
        const double gap = doc.contains("gap") ? doc.at("gap").get<double>() : SpectralFixture::natural_gap(phases);
        return SpectralFixture(DenseUnitary(std::move(p)), std::move(phases), gap);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed fixture: ") + e.what());
    }
}

std::string fixture_to_json(const SpectralFixture &f) {
    nlohmann::ordered_json doc;
    doc["dim"] = f.dim();
    nlohmann::json vecs = nlohmann::json::array();
    const CMatrix &p = f.eigvecs().matrix();
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            vecs.push_back({p(i, j).real(), p(i, j).imag()});
        }
    }
    doc["eigvecs"] = std::move(vecs);
    doc["eigphases"] = std::vector<double>(f.eigphases().begin(), f.eigphases().end());
    doc["gap"] = f.gap();
    return doc.dump();
}

SpectralFixture load_fixture(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read fixture file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return fixture_from_json(buf.str());
}

} // namespace fracpow
