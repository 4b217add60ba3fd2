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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracpow/fixtures.hpp"
#include "fracpow/gsearch.hpp"
#include "fracpow/power.hpp"
#include "fracpow/ratspec.hpp"

namespace py = pybind11;
using namespace fracpow;

namespace {

StateVector as_state(const CVector &amps) { return StateVector::on_register(amps); }

Engine parse_engine(const std::string &name) {
    if (name == "auto") {
        return Engine::automatic;
    }
    if (name == "dense") {
        return Engine::dense;
    }
    if (name == "factored") {
        return Engine::factored;
    }
    throw ValidationError("unknown engine '" + name + "'");
}

RunOptions options(const std::string &engine, int max_width) {
    RunOptions opts;
    opts.engine = parse_engine(engine);
    opts.limits.max_state_qubits = max_width;
    return opts;
}

AncillaConfig config(int m, int r) {
    AncillaConfig cfg{m, r > 0 ? r : 2 * m + 1};
    cfg.validate();
    return cfg;
}

py::dict to_dict(const RunResult &res) {
    py::dict d;
    d["out_state"] = CVector(res.out_state.amplitudes());
    d["ledger"] = res.ledger;
    d["residual_ancilla_weight"] = res.residual_ancilla_weight;
    d["err_vs_oracle"] = res.err_vs_oracle;
    return d;
}

py::dict to_dict(const ExperimentRecord &rec) {
    py::dict d;
    d["run_id"] = rec.run_id;
    d["subcommand"] = rec.subcommand;
    d["m"] = rec.m;
    d["r"] = rec.r;
    d["t"] = rec.t;
    d["dim"] = rec.dim;
    d["gap"] = rec.gap;
    d["mode"] = rec.mode;
    d["max_err"] = rec.max_err;
    d["mean_err"] = rec.mean_err;
    d["residual_ancilla"] = rec.residual_ancilla;
    d["calls_u"] = rec.calls_u;
    d["calls_cu"] = rec.calls_cu;
    d["calls_uinv"] = rec.calls_uinv;
    d["calls_cuinv"] = rec.calls_cuinv;
    d["seed"] = rec.seed;
    d["wall_ms"] = rec.wall_ms;
    return d;
}

py::object fraction_tuple(const std::optional<Fraction> &f) {
    if (!f) {
        return py::none();
    }
    return py::make_tuple(f->num, f->den);
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Real powers of black-box unitaries by phase estimation";

    // Translators run newest first, so register the base class before its subclasses.
    auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(mod, "ValidationError", base.ptr());
    py::register_exception<DimensionError>(mod, "DimensionError", base.ptr());
    py::register_exception<ResourceLimitError>(mod, "ResourceLimitError", base.ptr());
    py::register_exception<CapabilityError>(mod, "CapabilityError", base.ptr());

    py::class_<SpectralFixture>(mod, "SpectralFixture")
        .def(py::init([](const CMatrix &eigvecs, std::vector<double> phases, double gap) {
                 return SpectralFixture(DenseUnitary(eigvecs), std::move(phases), gap);
             }),
             py::arg("eigvecs"), py::arg("eigphases"), py::arg("gap"))
        .def_static("diagonal", &SpectralFixture::diagonal, py::arg("eigphases"))
        .def_static("haar", &SpectralFixture::haar, py::arg("eigphases"), py::arg("seed"))
        .def_property_readonly("dim", &SpectralFixture::dim)
        .def_property_readonly("gap", &SpectralFixture::gap)
        .def_property_readonly("eigphases",
                               [](const SpectralFixture &f) {
                                   return std::vector<double>(f.eigphases().begin(), f.eigphases().end());
                               })
        .def_property_readonly("eigvecs", [](const SpectralFixture &f) { return CMatrix(f.eigvecs().matrix()); })
        .def("eigenvector", &SpectralFixture::eigenvector, py::arg("k"))
        .def("matrix", [](const SpectralFixture &f) { return CMatrix(f.assembled().matrix()); })
        .def("__repr__", [](const SpectralFixture &f) {
            return "SpectralFixture(dim=" + std::to_string(f.dim()) + ", gap=" + format_real(f.gap()) + ")";
        });

    mod.def("dyadic_fixture", &dyadic_fixture, py::arg("dim"), py::arg("m"), py::arg("seed") = 1);
    mod.def("third_fixture", &third_fixture, py::arg("dim"), py::arg("seed") = 1);
    mod.def("qft_fixture", [](int n) { return qft_fixture(n); }, py::arg("n"));
    mod.def("roots_of_unity_fixture", &roots_of_unity_fixture, py::arg("m"), py::arg("seed") = 1);
    mod.def("fixture_from_json", &fixture_from_json, py::arg("text"));
    mod.def("fixture_to_json", &fixture_to_json, py::arg("fixture"));

    mod.def(
        "spectral_power", [](const SpectralFixture &f, double t) { return CMatrix(spectral_power(f, t).matrix()); },
        py::arg("fixture"), py::arg("t"), "Exact primitive-branch power P diag(exp(2 pi i t lambda)) P^dag.");
    mod.def("trace_distance", &trace_distance, py::arg("u"), py::arg("v"));

    py::class_<QueryLedger>(mod, "QueryLedger")
        .def_readonly("calls_u", &QueryLedger::calls_u)
        .def_readonly("calls_cu", &QueryLedger::calls_cu)
        .def_readonly("calls_uinv", &QueryLedger::calls_uinv)
        .def_readonly("calls_cuinv", &QueryLedger::calls_cuinv)
        .def_property_readonly("total", &QueryLedger::total)
        .def("__eq__", [](const QueryLedger &a, const QueryLedger &b) { return a == b; })
        .def("__repr__", [](const QueryLedger &l) {
            return "QueryLedger(u=" + std::to_string(l.calls_u) + ", cu=" + std::to_string(l.calls_cu) +
                   ", uinv=" + std::to_string(l.calls_uinv) + ", cuinv=" + std::to_string(l.calls_cuinv) + ")";
        });

    py::class_<BlackBox>(mod, "BlackBox")
        .def(py::init([](const SpectralFixture &f, bool plain, bool controlled, bool inverse) {
                 return BlackBox(f, Capabilities{plain, controlled, inverse});
             }),
             py::arg("fixture"), py::arg("plain") = true, py::arg("controlled") = true, py::arg("inverse") = true)
        .def_property_readonly("dim", &BlackBox::dim)
        .def_property_readonly("ledger", &BlackBox::ledger)
        .def("reset_ledger", &BlackBox::reset_ledger)
        .def("apply", [](BlackBox &bb, const CVector &s) {
            return CVector(bb.apply(as_state(s), "target").amplitudes());
        });

    mod.def(
        "fractional_apply",
        [](BlackBox &bb, const CVector &s, double t, int m, int r, const std::string &engine, int max_width) {
            return to_dict(fractional_apply(bb, as_state(s), t, config(m, r), options(engine, max_width)));
        },
        py::arg("box"), py::arg("state"), py::arg("t"), py::arg("m"), py::arg("r") = 0, py::arg("engine") = "auto",
        py::arg("max_width") = 24, "U^t for t in [0, 1]; r = 0 means 2m + 1.");
    mod.def(
        "power_apply",
        [](BlackBox &bb, const CVector &s, double t, int m, int r, const std::string &engine, int max_width) {
            return to_dict(power_apply(bb, as_state(s), t, config(m, r), options(engine, max_width)));
        },
        py::arg("box"), py::arg("state"), py::arg("t"), py::arg("m"), py::arg("r") = 0, py::arg("engine") = "auto",
        py::arg("max_width") = 24);
    mod.def(
        "inverse_free_apply",
        [](BlackBox &bb, const CVector &s, double t, int m, int r, const std::string &engine, int max_width) {
            return to_dict(inverse_free_apply(bb, as_state(s), t, config(m, r), options(engine, max_width)));
        },
        py::arg("box"), py::arg("state"), py::arg("t"), py::arg("m"), py::arg("r") = 0, py::arg("engine") = "auto",
        py::arg("max_width") = 24);
    mod.def(
        "function_apply",
        [](BlackBox &bb, const CVector &s, const std::function<double(double)> &f, int m, int r,
           const std::string &engine, int max_width) {
            return to_dict(function_apply(bb, as_state(s), f, config(m, r), options(engine, max_width)));
        },
        py::arg("box"), py::arg("state"), py::arg("f"), py::arg("m"), py::arg("r") = 0, py::arg("engine") = "auto",
        py::arg("max_width") = 24, "Phase exp(2 pi i f(lambda)) on each eigencomponent.");

    mod.def(
        "measure_error",
        [](const SpectralFixture &f, double t, int m, int r, const std::string &mode, int samples,
           std::uint64_t seed, const std::string &exact_t, const std::string &engine) {
            PowerRequest req;
            req.t = t;
            req.cfg = config(m, r);
            req.mode = parse_power_mode(mode);
            req.exact_t = exact_t;
            return to_dict(measure_error(f, req, samples, seed, options(engine, 24)));
        },
        py::arg("fixture"), py::arg("t"), py::arg("m"), py::arg("r") = 0, py::arg("mode") = "standard",
        py::arg("samples") = 16, py::arg("seed") = 1, py::arg("exact_t") = "", py::arg("engine") = "auto");

    py::class_<GapReport>(mod, "GapReport")
        .def_readonly("ok", &GapReport::ok)
        .def_readonly("resolution_ok", &GapReport::resolution_ok)
        .def_readonly("suggested_m", &GapReport::suggested_m)
        .def_readonly("message", &GapReport::message)
        .def_property_readonly("violations", [](const GapReport &g) {
            std::vector<std::size_t> idx;
            for (const auto &v : g.violations) {
                idx.push_back(v.index);
            }
            return idx;
        });
    mod.def("gap_check", &gap_check, py::arg("fixture"), py::arg("gap"), py::arg("m"));

    mod.def("convergents", [](std::uint64_t h, std::uint64_t q) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (const Fraction &f : convergents(h, q)) {
            out.emplace_back(f.num, f.den);
        }
        return out;
    });
    mod.def(
        "recover_eigenphase",
        [](std::uint64_t h, int m, std::int64_t p_max) { return fraction_tuple(recover_eigenphase(h, m, p_max)); },
        py::arg("h"), py::arg("m"), py::arg("p_max"));
    mod.def("first_primes", &first_primes, py::arg("b"));
    mod.def(
        "primorial", [](int b) { return py::int_(py::str(primorial(b).str())); }, py::arg("b"));
    mod.def("required_m", &required_m, py::arg("b"));

    py::class_<PrimeSpectrumFixture>(mod, "PrimeSpectrumFixture")
        .def_static("build", &PrimeSpectrumFixture::build, py::arg("b"), py::arg("dim"), py::arg("seed") = 1)
        .def_static(
            "from_fractions",
            [](const std::vector<std::pair<std::int64_t, std::int64_t>> &fr, std::uint64_t seed) {
                std::vector<Fraction> f;
                for (auto [n, d] : fr) {
                    f.push_back({n, d});
                }
                return PrimeSpectrumFixture::from_fractions(std::move(f), seed);
            },
            py::arg("fractions"), py::arg("seed") = 1)
        .def_property_readonly("b", &PrimeSpectrumFixture::b)
        .def_property_readonly("primes", &PrimeSpectrumFixture::primes)
        .def_property_readonly("fixture", &PrimeSpectrumFixture::underlying)
        .def_property_readonly("fractions",
                               [](const PrimeSpectrumFixture &pf) {
                                   std::vector<std::pair<std::int64_t, std::int64_t>> out;
                                   for (const Fraction &f : pf.assignment()) {
                                       out.emplace_back(f.num, f.den);
                                   }
                                   return out;
                               })
        .def_property_readonly("order", [](const PrimeSpectrumFixture &pf) { return py::int_(py::str(pf.order().str())); });
    mod.def(
        "exact_power_apply",
        [](const PrimeSpectrumFixture &pf, const CVector &s, const std::string &t, int m, int r,
           const std::string &engine) {
            return to_dict(exact_power_apply(pf, as_state(s), Exponent::parse(t), config(m, r), options(engine, 24)));
        },
        py::arg("fixture"), py::arg("state"), py::arg("t"), py::arg("m"), py::arg("r") = 0,
        py::arg("engine") = "auto", "Exponent as text: decimal or power notation such as \"2^40\".");

    mod.def(
        "entangled_search",
        [](const SpectralFixture &f, const std::vector<std::size_t> &flagged, int k) {
            const SearchRun run = entangled_search(f, flagged, k);
            py::dict d;
            d["k"] = run.k;
            d["theta"] = run.theta;
            d["success_prob"] = run.success_prob;
            d["predicted"] = run.predicted;
            return d;
        },
        py::arg("fixture"), py::arg("flagged"), py::arg("k"));
    mod.def(
        "estimate_subspace_dim",
        [](const SpectralFixture &f, const std::vector<std::size_t> &flagged, int bits) {
            const DimensionEstimate est = estimate_subspace_dim(FlagOracle::from_fixture(f, flagged), bits);
            py::dict d;
            d["estimate"] = est.estimate;
            d["prob_within_one"] = est.prob_within_one;
            d["outcome_distribution"] = est.outcome_distribution;
            return d;
        },
        py::arg("fixture"), py::arg("flagged"), py::arg("bits"));
    mod.def(
        "magnification_experiment",
        [](const std::vector<int> &ks, int m, int r, int ell, double epsilon, bool exact_root, std::uint64_t seed) {
            MagnifyConfig cfg{m, r, ell, epsilon, exact_root, seed};
            py::list rows;
            for (const MagnifyRow &row : magnification_experiment(cfg, ks)) {
                py::dict d;
                d["k"] = row.k;
                d["error_prob"] = row.error_prob;
                d["predicted"] = row.predicted;
                d["flagged"] = row.flagged;
                d["discarded_weight"] = row.discarded_weight;
                rows.append(d);
            }
            return rows;
        },
        py::arg("k"), py::arg("m") = 5, py::arg("r") = 0, py::arg("ell") = 0, py::arg("epsilon") = -1.0,
        py::arg("exact_root") = false, py::arg("seed") = 1);
}
