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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "config.hpp"
#include "fracpow/fixtures.hpp"
#include "fracpow/gsearch.hpp"
#include "fracpow/power.hpp"
#include "fracpow/ratspec.hpp"
#include "fracpow/record.hpp"
#include "fracpow/svg.hpp"
#include "json.hpp"

namespace fracpow::cli {

namespace {

/// A self-check inside a subcommand failed.
class RegressionFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Empty strings and zeros mean "use the subcommand's default".
struct Flags {
    std::string m;
    int r = 0;
    std::string t;
    std::size_t dim = 0;
    double gap = 0.0;
    std::string spectrum = "third";
    int samples = 16;
    std::uint64_t seed = 1;
    std::string mode = "standard";
    std::string out;
    bool json = false;
    std::string svg;
    int max_width = 24;
    bool force = false;
    int jobs = 0;
    std::string engine = "auto";
    std::string config;
    // Subcommand specific.
    int n = 2;
    int b = 3;
    int flagged = 1;
    std::string k = "0..4";
    int bits = 0;
    bool exact_root = false;
    int ell = 0;
    double epsilon = -1.0;
};

int parse_int(std::string_view text, const char *what) {
    int v = 0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ValidationError(std::string("bad ") + what + " '" + std::string(text) + "'");
    }
    return v;
}

double parse_real(std::string_view text, const char *what) {
    double v = 0.0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
        throw ValidationError(std::string("bad ") + what + " '" + std::string(text) + "'");
    }
    return v;
}

int single_m(const Flags &f, int fallback) {
    return f.m.empty() ? fallback : parse_int(f.m, "--m");
}

AncillaConfig ancilla(const Flags &f, int m) {
    AncillaConfig cfg{m, f.r > 0 ? f.r : 2 * m + 1};
    cfg.validate();
    return cfg;
}

RunOptions run_options(const Flags &f) {
    RunOptions opts;
    opts.limits.max_state_qubits = f.max_width;
    if (f.engine == "auto") {
        opts.engine = Engine::automatic;
    } else if (f.engine == "dense") {
        opts.engine = Engine::dense;
    } else if (f.engine == "factored") {
        opts.engine = Engine::factored;
    } else {
        throw ValidationError("unknown engine '" + f.engine + "'");
    }
    return opts;
}

SpectralFixture make_fixture(const Flags &f, std::size_t dim, int m) {
    if (!is_power_of_two(dim)) {
        throw ValidationError("--dim must be a power of two");
    }
    const Limits limits;
    if (dim > (std::size_t{1} << limits.max_unitary_qubits)) {
        throw ResourceLimitError("--dim exceeds the largest dense fixture");
    }
    const std::string &s = f.spectrum;
    if (s == "dyadic") {
        return dyadic_fixture(dim, m, f.seed);
    }
    if (s == "third") {
        return third_fixture(dim, f.seed);
    }
    if (s == "identity") {
        return SpectralFixture::diagonal(std::vector<double>(dim, 0.0));
    }
    if (s == "qft") {
        return qft_fixture(log2_exact(dim));
    }
    if (s.rfind("prime:", 0) == 0) {
        return PrimeSpectrumFixture::build(parse_int(s.substr(6), "prime count"), dim, f.seed).underlying();
    }
    if (s.rfind("file:", 0) == 0) {
        return load_fixture(s.substr(5));
    }
    throw ValidationError("unknown spectrum '" + s + "'");
}

class Output {
  public:
    explicit Output(const Flags &f, std::ostream &fallback) : os_(&fallback) {
        if (!f.out.empty()) {
            file_.open(f.out, std::ios::binary);
            if (!file_) {
                throw ValidationError("cannot write " + f.out);
            }
            os_ = &file_;
        }
    }
    std::ostream &stream() { return *os_; }

  private:
    std::ofstream file_;
    std::ostream *os_;
};

void emit_records(const Flags &f, std::ostream &out, const std::vector<ExperimentRecord> &records) {
    Output o(f, out);
    if (f.json) {
        write_json(o.stream(), records);
    } else {
        write_csv(o.stream(), records);
    }
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void emit_table(const Flags &f, std::ostream &out, const Table &table) {
    Output o(f, out);
    std::ostream &os = o.stream();
    if (f.json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto &row : table.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < table.header.size(); ++i) {
                // Cells are numeric text; keep them as JSON numbers where they parse.
                nlohmann::ordered_json cell = nlohmann::ordered_json::parse(row[i], nullptr, false);
                obj[table.header[i]] = cell.is_discarded() ? nlohmann::ordered_json(row[i]) : cell;
            }
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        os << (i ? "," : "") << table.header[i];
    }
    os << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << row[i];
        }
        os << '\n';
    }
}

// Runs jobs on a small thread pool; results keep job order.
template <class R> std::vector<R> run_parallel(std::size_t count, int jobs, const std::function<R(std::size_t)> &job) {
    std::vector<std::optional<R>> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t threads = jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < threads; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }
    std::vector<R> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        out.push_back(std::move(*results[i]));
    }
    return out;
}

// ---------------------------------------------------------------- commands

void check_gap(const Flags &f, const SpectralFixture &fixture, double claimed, int m, std::ostream &err) {
    const GapReport rep = gap_check(fixture, claimed, m);
    if (rep.ok) {
        return;
    }
    if (f.force) {
        err << "warning: " << rep.message << " (continuing because of --force)\n";
        return;
    }
    throw ValidationError(rep.message + " (pass --force to run anyway)");
}

int cmd_power(const Flags &f, std::ostream &out, std::ostream &err) {
    const int m = single_m(f, 4);
    const AncillaConfig cfg = ancilla(f, m);
    const std::size_t dim = f.dim > 0 ? f.dim : 2;
    const SpectralFixture fixture = make_fixture(f, dim, m);
    const PowerMode mode = parse_power_mode(f.mode);
    const std::string t_text = f.t.empty() ? "0.5" : f.t;
    const double claimed = f.gap > 0.0 ? f.gap : fixture.gap();

    PowerRequest req;
    req.cfg = cfg;
    req.mode = mode;
    if (mode == PowerMode::exact_rational) {
        req.exact_t = t_text;
        req.t = Exponent::parse(t_text).approx();
    } else {
        req.t = parse_real(t_text, "--t");
        if (req.t != std::floor(req.t)) {
            check_gap(f, fixture, claimed, m, err);
        }
    }
    ExperimentRecord rec = measure_error(fixture, req, f.samples, f.seed, run_options(f));
    rec.run_id = "power";
    rec.subcommand = "power";
    rec.gap = claimed;
    emit_records(f, out, {rec});
    return kExitOk;
}

int cmd_sweep_m(const Flags &f, std::ostream &out, std::ostream &err) {
    const std::vector<int> ms = parse_int_list(f.m.empty() ? "3..8" : f.m);
    if (ms.empty()) {
        throw ValidationError("--m range is empty");
    }
    const std::size_t dim = f.dim > 0 ? f.dim : 2;
    const PowerMode mode = parse_power_mode(f.mode);
    const std::string t_text = f.t.empty() ? "0.5" : f.t;
    const RunOptions opts = run_options(f);

    // Validate everything up front so no worker starts on a bad grid.
    for (int m : ms) {
        ancilla(f, m);
        const SpectralFixture fixture = make_fixture(f, dim, m);
        if (mode != PowerMode::exact_rational) {
            const double t = parse_real(t_text, "--t");
            if (t != std::floor(t)) {
                check_gap(f, fixture, f.gap > 0.0 ? f.gap : fixture.gap(), m, err);
            }
        }
    }

    std::vector<ExperimentRecord> rows = run_parallel<ExperimentRecord>(ms.size(), f.jobs, [&](std::size_t i) {
        const int m = ms[i];
        const SpectralFixture fixture = make_fixture(f, dim, m);
        PowerRequest req;
        req.cfg = ancilla(f, m);
        req.mode = mode;
        if (mode == PowerMode::exact_rational) {
            req.exact_t = t_text;
            req.t = Exponent::parse(t_text).approx();
        } else {
            req.t = parse_real(t_text, "--t");
        }
        ExperimentRecord rec = measure_error(fixture, req, f.samples, f.seed, opts);
        rec.run_id = "sweep-m:m=" + std::to_string(m);
        rec.subcommand = "sweep-m";
        if (f.gap > 0.0) {
            rec.gap = f.gap;
        }
        return rec;
    });

    std::vector<double> xs, ys;
    for (const auto &rec : rows) {
        if (rec.max_err > 0.0) {
            xs.push_back(rec.m);
            ys.push_back(std::log2(rec.max_err));
        }
    }
    ExperimentRecord footer;
    footer.run_id = "sweep-m:slope";
    footer.subcommand = "sweep-m";
    footer.t = rows.front().t;
    footer.dim = rows.front().dim;
    footer.gap = rows.front().gap;
    footer.mode = "fit";
    footer.max_err = least_squares_slope(xs, ys);
    footer.seed = f.seed;
    rows.push_back(footer);
    emit_records(f, out, rows);

    if (!f.svg.empty()) {
        std::ofstream svg(f.svg, std::ios::binary);
        if (!svg) {
            throw ValidationError("cannot write " + f.svg);
        }
        write_line_plot(svg, {"log2(max error) vs m", "m", "log2(max_err)"}, {{"max_err", xs, ys}});
    }
    return kExitOk;
}

int cmd_fqft(const Flags &f, std::ostream &out, std::ostream &err) {
    const double t = parse_real(f.t.empty() ? "0.5" : f.t, "--t");
    if (t < 0.0 || t > 1.0) {
        throw ValidationError("fqft needs t in [0, 1]");
    }
    const SpectralFixture fixture = qft_fixture(f.n);
    PowerRequest req;
    req.t = t;
    req.cfg = {2, 1};
    req.phase_fn = [t](double lambda) { return t * lambda; };
    ExperimentRecord rec = measure_error(fixture, req, f.samples, f.seed, run_options(f));
    rec.run_id = "fqft:n=" + std::to_string(f.n);
    rec.subcommand = "fqft";
    emit_records(f, out, {rec});

    const std::uint64_t controlled = rec.calls_cu + rec.calls_cuinv;
    err << "fqft: n=" << f.n << " t=" << format_real(t) << " controlled queries " << controlled << " (c-U "
        << rec.calls_cu << ", c-U^-1 " << rec.calls_cuinv << "), max_err " << format_real(rec.max_err) << "\n";
    if (controlled != 6 || rec.max_err > 1e-10) {
        throw RegressionFailure("fqft expected 6 controlled queries and max_err <= 1e-10");
    }
    return kExitOk;
}

int cmd_primorial(const Flags &f, std::ostream &out, std::ostream &err) {
    if (f.b < 1) {
        throw ValidationError("--b must be positive");
    }
    const int m = single_m(f, required_m(f.b));
    const AncillaConfig cfg = ancilla(f, m);
    if (!uniqueness_premise(f.b, m)) {
        const std::vector<std::int64_t> p = first_primes(f.b);
        const int need = required_m(f.b);
        throw PremiseError("m = " + std::to_string(m) + " violates 2^m > 2 * p_b * p_(b-1) = " +
                               std::to_string(2 * p[p.size() - 1] * p[p.size() - 2]) + "; need m >= " +
                               std::to_string(need),
                           need);
    }
    const std::size_t dim = f.dim > 0 ? f.dim : 8;
    const PrimeSpectrumFixture pf = PrimeSpectrumFixture::build(f.b, dim, f.seed);
    const Exponent t = Exponent::parse(f.t.empty() ? "15" : f.t);
    Exponent scaled;
    {
        const double big = t.frac * 1e6;
        scaled.whole = t.whole * 1000000 + BigInt(std::floor(big));
        scaled.frac = big - std::floor(big);
    }
    const RunOptions opts = run_options(f);
    std::vector<ExperimentRecord> rows;
    for (const Exponent *e : std::initializer_list<const Exponent *>{&t, &scaled}) {
        PowerRequest req;
        req.cfg = cfg;
        req.mode = PowerMode::exact_rational;
        req.exact_t = e->str();
        req.t = e->approx();
        ExperimentRecord rec = measure_error(pf.underlying(), req, f.samples, f.seed, opts);
        rec.run_id = e == &t ? "primorial:t" : "primorial:t*10^6";
        rec.subcommand = "primorial";
        rows.push_back(rec);
    }
    emit_records(f, out, rows);

    auto ledger = [](const ExperimentRecord &r) {
        return "u=" + std::to_string(r.calls_u) + " cu=" + std::to_string(r.calls_cu) +
               " uinv=" + std::to_string(r.calls_uinv) + " cuinv=" + std::to_string(r.calls_cuinv);
    };
    err << "primorial: b=" << f.b << " B=" << primorial(f.b).str() << " m=" << m << " r=" << cfg.r << "\n"
        << "  t = " << rows[0].t << ": " << ledger(rows[0]) << "\n"
        << "  t = " << rows[1].t << ": " << ledger(rows[1]) << "\n";
    const auto same = [](const ExperimentRecord &a, const ExperimentRecord &b) {
        return a.calls_u == b.calls_u && a.calls_cu == b.calls_cu && a.calls_uinv == b.calls_uinv &&
               a.calls_cuinv == b.calls_cuinv;
    };
    if (!same(rows[0], rows[1])) {
        throw RegressionFailure("query counts depend on t");
    }
    return kExitOk;
}

int cmd_search(const Flags &f, std::ostream &out, std::ostream &err) {
    const std::size_t dim = f.dim > 0 ? f.dim : 4;
    if (f.flagged < 1 || static_cast<std::size_t>(f.flagged) > dim) {
        throw ValidationError("--flagged must lie in [1, dim]");
    }
    const std::vector<int> ks = parse_int_list(f.k);
    if (ks.empty()) {
        throw ValidationError("--k list is empty");
    }
    const SpectralFixture fixture = make_fixture(f, dim, single_m(f, 4));
    std::vector<std::size_t> flagged(static_cast<std::size_t>(f.flagged));
    for (std::size_t i = 0; i < flagged.size(); ++i) {
        flagged[i] = i;
    }
    const FlagOracle oracle = FlagOracle::from_fixture(fixture, flagged);
    Table table{{"k", "success_prob", "predicted", "theta", "dim", "flagged", "seed"}, {}};
    for (int k : ks) {
        if (k < 0) {
            throw ValidationError("--k values must be non-negative");
        }
        const SearchRun run = entangled_search(oracle, k);
        table.rows.push_back({std::to_string(k), format_real(run.success_prob), format_real(run.predicted),
                              format_real(run.theta), std::to_string(dim), std::to_string(f.flagged),
                              std::to_string(f.seed)});
    }
    emit_table(f, out, table);
    if (f.bits > 0) {
        Limits limits;
        limits.max_state_qubits = f.max_width;
        const DimensionEstimate est = estimate_subspace_dim(oracle, f.bits, limits);
        err << "dimension estimate: " << est.estimate << " (true " << f.flagged << ", P(|est - d| <= 1) = "
            << format_real(est.prob_within_one) << ")\n";
    }
    return kExitOk;
}

int cmd_magnify(const Flags &f, std::ostream &out, std::ostream &) {
    MagnifyConfig cfg;
    cfg.m = single_m(f, 5);
    cfg.r = f.r;
    cfg.ell = f.ell;
    cfg.epsilon = f.epsilon;
    cfg.exact_root = f.exact_root;
    cfg.seed = f.seed;
    const std::vector<int> ks = parse_int_list(f.k);
    if (ks.empty()) {
        throw ValidationError("--k list is empty");
    }
    Table table{{"k", "error_prob", "predicted", "flagged", "discarded_weight", "m", "seed"}, {}};
    for (const MagnifyRow &row : magnification_experiment(cfg, ks)) {
        table.rows.push_back({std::to_string(row.k), format_real(row.error_prob), format_real(row.predicted),
                              std::to_string(row.flagged), format_real(row.discarded_weight),
                              std::to_string(cfg.m), std::to_string(cfg.seed)});
    }
    emit_table(f, out, table);
    return kExitOk;
}

// ---------------------------------------------------------------- parser

void add_common(CLI::App *sub, Flags &f) {
    sub->add_option("--m", f.m, "Precision bits (sweep-m: range such as 3..8)");
    sub->add_option("--r", f.r, "Repetitions, odd (default 2m+1)");
    sub->add_option("--t", f.t, "Exponent");
    sub->add_option("--dim", f.dim, "Fixture dimension (power of two)");
    sub->add_option("--gap", f.gap, "Claimed spectral gap (default: the fixture's)");
    sub->add_option("--spectrum", f.spectrum, "dyadic | third | identity | qft | prime:B | file:PATH");
    sub->add_option("--samples", f.samples, "Haar-random inputs per run")->check(CLI::PositiveNumber);
    sub->add_option("--seed", f.seed, "Seed");
    sub->add_option("--mode", f.mode, "standard | inverse-free | exact-rational")
        ->check(CLI::IsMember({"standard", "inverse-free", "exact-rational"}));
    sub->add_option("--out", f.out, "Write output to PATH instead of stdout");
    sub->add_flag("--json", f.json, "JSON array instead of CSV");
    sub->add_option("--svg", f.svg, "Write an SVG plot to PATH");
    sub->add_option("--max-width", f.max_width, "Largest dense state, in qubits")->check(CLI::Range(1, 40));
    sub->add_flag("--force", f.force, "Run even if the gap check fails");
    sub->add_option("--jobs", f.jobs, "Worker threads (default: hardware concurrency)");
    sub->add_option("--engine", f.engine, "auto | dense | factored")
        ->check(CLI::IsMember({"auto", "dense", "factored"}));
    sub->add_option("--config", f.config, "JSON file of flag values; command-line flags win");
}

std::unique_ptr<CLI::App> build_app(Flags &f) {
    auto app = std::make_unique<CLI::App>("Real powers of a query-counted black-box unitary", "fracpow");
    app->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app->require_subcommand(1);
    add_common(app->add_subcommand("power", "U^t on Haar-random inputs, error against the exact oracle"), f);
    add_common(app->add_subcommand("sweep-m", "Error against m with a fitted slope"), f);
    auto *fqft = app->add_subcommand("fqft", "Fractional QFT with m = 2, r = 1");
    add_common(fqft, f);
    fqft->add_option("--n", f.n, "QFT qubits")->check(CLI::Range(1, 10));
    auto *prim = app->add_subcommand("primorial", "Exact powers on a prime-denominator spectrum");
    add_common(prim, f);
    prim->add_option("--b", f.b, "Number of primes")->check(CLI::Range(1, 12));
    auto *search = app->add_subcommand("search", "Amplitude amplification from the entangled start");
    add_common(search, f);
    search->add_option("--flagged", f.flagged, "Number of flagged eigenvectors");
    search->add_option("--k", f.k, "Iteration counts (e.g. 0..4)");
    search->add_option("--bits", f.bits, "Also estimate the flagged dimension with this many bits");
    auto *mag = app->add_subcommand("magnify", "Error magnification of repeated approximate square roots");
    add_common(mag, f);
    mag->add_option("--k", f.k, "Iteration counts (e.g. 0..4)");
    mag->add_flag("--exact-root", f.exact_root, "Use the exact square root for U_2");
    mag->add_option("--ell", f.ell, "theta = 2 pi ell / 2^m - epsilon");
    mag->add_option("--epsilon", f.epsilon, "Offset in radians (default 1/2^(m+1))");
    return app;
}

// Pulls "--config PATH" out of args and splices its tokens in front of the
// remaining flags, so explicit flags override the file.
std::vector<std::string> expand_config(const std::vector<std::string> &args, const CLI::App &app) {
    std::vector<std::string> rest;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw ValidationError("--config needs a path");
            }
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty() || rest.empty()) {
        return rest;
    }
    const CLI::App *sub = nullptr;
    for (const CLI::App *candidate : app.get_subcommands({})) {
        if (candidate->get_name() == rest.front()) {
            sub = candidate;
        }
    }
    if (sub == nullptr) {
        return rest;
    }
    std::set<std::string> allowed;
    for (const CLI::Option *opt : sub->get_options()) {
        for (const std::string &name : opt->get_lnames()) {
            if (name != "config" && name != "help") {
                allowed.insert(name);
            }
        }
    }
    std::vector<std::string> tokens = config_tokens(read_text_file(path), allowed);
    std::vector<std::string> out{rest.front()};
    out.insert(out.end(), tokens.begin(), tokens.end());
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

} // namespace

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const int lo = parse_int(text.substr(0, dots), "range start");
        const int hi = parse_int(text.substr(dots + 2), "range end");
        for (int v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        if (!item.empty()) {
            out.push_back(parse_int(item, "list entry"));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Flags f;
    std::unique_ptr<CLI::App> app = build_app(f);
    try {
        std::vector<std::string> argv = expand_config(args, *app);
        std::reverse(argv.begin(), argv.end());
        app->parse(argv);
    } catch (const CLI::CallForHelp &) {
        out << app->help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app->help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        if (const auto *sub = app->get_subcommands().empty() ? nullptr : app->get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app->help();
        }
        return kExitValidation;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    const std::string name = app->get_subcommands().front()->get_name();
    try {
        if (name == "power") {
            return cmd_power(f, out, err);
        }
        if (name == "sweep-m") {
            return cmd_sweep_m(f, out, err);
        }
        if (name == "fqft") {
            return cmd_fqft(f, out, err);
        }
        if (name == "primorial") {
            return cmd_primorial(f, out, err);
        }
        if (name == "search") {
            return cmd_search(f, out, err);
        }
        if (name == "magnify") {
            return cmd_magnify(f, out, err);
        }
    } catch (const RegressionFailure &e) {
        err << "regression: " << e.what() << "\n";
        return kExitRegression;
    } catch (const ResourceLimitError &e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const PremiseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error &e) {
        // Validation, dimension and capability problems are all input errors.
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    err << "error: unknown subcommand\n";
    return kExitValidation;
}

} // namespace fracpow::cli
