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

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "fracpow/fixtures.hpp"
#include "fracpow/power.hpp"
#include "json.hpp"

using namespace fracpow;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string column(const std::vector<std::vector<std::string>> &rows, std::size_t row, const std::string &name) {
    const auto &h = rows.front();
    const auto it = std::find(h.begin(), h.end(), name);
    REQUIRE(it != h.end());
    return rows.at(row).at(static_cast<std::size_t>(it - h.begin()));
}

/// Every line with its last field removed.
std::string drop_last_column(const std::string &csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        out << line.substr(0, line.rfind(',')) << '\n';
    }
    return out.str();
}

std::filesystem::path temp_file(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("fracpow_test_" + name);
}

} // namespace

TEST_CASE("integer lists and slope") {
    CHECK(cli::parse_int_list("3..6") == std::vector<int>{3, 4, 5, 6});
    CHECK(cli::parse_int_list("1,2,5") == std::vector<int>{1, 2, 5});
    CHECK(cli::parse_int_list("4") == std::vector<int>{4});
    CHECK(cli::parse_int_list("5..3").empty());
    CHECK_THROWS_AS(cli::parse_int_list("x"), ValidationError);
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> y{2, 4, 6};
    CHECK(cli::least_squares_slope(x, y) == doctest::Approx(2.0));
    CHECK(std::isnan(cli::least_squares_slope(std::vector<double>{1}, std::vector<double>{1})));
}

TEST_CASE("power on a dyadic spectrum") {
    const CliResult r = run_cli({"power", "--spectrum", "dyadic", "--m", "3", "--dim", "4", "--t", "0.5",
                                 "--samples", "4"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(column(rows, 1, "max_err")) <= 1e-10);
    CHECK(column(rows, 1, "calls_cu") == "49");
    CHECK(column(rows, 1, "calls_cuinv") == "49");
}

TEST_CASE("zero exponent makes no queries") {
    const CliResult r = run_cli({"power", "--t", "0", "--samples", "2"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = parse_csv(r.out);
    for (const char *c : {"calls_u", "calls_cu", "calls_uinv", "calls_cuinv"}) {
        CHECK(column(rows, 1, c) == "0");
    }
}

TEST_CASE("file spectrum matches the library bit for bit") {
    const SpectralFixture f = SpectralFixture::haar({0.05, 0.3, 0.41, 0.72}, 8);
    const auto path = temp_file("fixture.json");
    {
        std::ofstream out(path);
        out << fixture_to_json(f);
    }
    const CliResult r = run_cli({"power", "--spectrum", "file:" + path.string(), "--m", "3", "--t", "0.5",
                                 "--samples", "5", "--seed", "9"});
    REQUIRE(r.code == cli::kExitOk);
    PowerRequest req;
    req.t = 0.5;
    req.cfg = AncillaConfig::with_default_r(3);
    const ExperimentRecord lib = measure_error(load_fixture(path), req, 5, 9);
    const auto rows = parse_csv(r.out);
    CHECK(column(rows, 1, "max_err") == format_real(lib.max_err));
    CHECK(column(rows, 1, "mean_err") == format_real(lib.mean_err));
    std::filesystem::remove(path);
}

TEST_CASE("validation failures exit 2") {
    CHECK(run_cli({"sweep-m", "--m", "5..3"}).code == cli::kExitValidation);
    CHECK(run_cli({"power", "--mode", "bogus"}).code == cli::kExitValidation);
    CHECK(run_cli({"power", "--no-such-flag"}).code == cli::kExitValidation);
    CHECK(run_cli({"power", "--dim", "3"}).code == cli::kExitValidation);
    CHECK(run_cli({"power", "--r", "4"}).code == cli::kExitValidation);
    CHECK(run_cli({}).code == cli::kExitValidation);
    // Declared gap larger than the spectrum allows.
    CHECK(run_cli({"power", "--spectrum", "third", "--gap", "0.8", "--m", "3"}).code == cli::kExitValidation);
    CHECK(run_cli({"power", "--spectrum", "third", "--gap", "0.8", "--m", "3", "--force", "--samples", "1"}).code ==
          cli::kExitOk);
    CHECK(run_cli({"power", "--mode", "inverse-free", "--t", "3", "--m", "2", "--r", "1"}).code ==
          cli::kExitValidation);
}

TEST_CASE("width limit exits 3") {
    const CliResult r = run_cli({"power", "--engine", "dense", "--m", "4", "--max-width", "10", "--samples", "1"});
    CHECK(r.code == cli::kExitResource);
}

TEST_CASE("fractional QFT uses six controlled queries") {
    for (const char *n : {"1", "2", "3"}) {
        const CliResult r = run_cli({"fqft", "--n", n, "--samples", "4"});
        CHECK(r.code == cli::kExitOk);
        const auto rows = parse_csv(r.out);
        CHECK(std::stoi(column(rows, 1, "calls_cu")) + std::stoi(column(rows, 1, "calls_cuinv")) == 6);
    }
}

TEST_CASE("primorial ledgers do not depend on t") {
    const CliResult r = run_cli({"primorial", "--b", "3", "--dim", "4", "--t", "15", "--samples", "2"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(column(rows, 2, "t") == "15000000");
    for (const char *c : {"calls_u", "calls_cu", "calls_uinv", "calls_cuinv"}) {
        CHECK(column(rows, 1, c) == column(rows, 2, c));
    }
    const CliResult bad = run_cli({"primorial", "--b", "4", "--m", "6"});
    CHECK(bad.code == cli::kExitValidation);
    CHECK(bad.err.find("70") != std::string::npos);
}

TEST_CASE("inverse-free mode avoids inverses") {
    const CliResult r = run_cli({"power", "--mode", "inverse-free", "--spectrum", "dyadic", "--m", "2", "--r", "1",
                                 "--t", "4", "--dim", "4", "--samples", "3"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = parse_csv(r.out);
    CHECK(column(rows, 1, "calls_uinv") == "0");
    CHECK(column(rows, 1, "calls_cuinv") == "0");
    CHECK(std::stod(column(rows, 1, "max_err")) <= 1e-10);
}

TEST_CASE("search and magnify tables") {
    const CliResult s = run_cli({"search", "--dim", "4", "--flagged", "1", "--k", "0..1"});
    REQUIRE(s.code == cli::kExitOk);
    const auto rows = parse_csv(s.out);
    CHECK(std::stod(column(rows, 1, "success_prob")) == doctest::Approx(0.25));
    CHECK(std::stod(column(rows, 2, "success_prob")) == doctest::Approx(1.0));
    const CliResult m = run_cli({"magnify", "--m", "4", "--k", "0..2", "--exact-root"});
    REQUIRE(m.code == cli::kExitOk);
    const auto mrows = parse_csv(m.out);
    CHECK(std::stod(column(mrows, 3, "error_prob")) == 0.0);
}

TEST_CASE("sweep is deterministic modulo wall time") {
    const std::vector<std::string> args{"sweep-m", "--m", "3..5", "--samples", "4", "--seed", "3"};
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    REQUIRE(a.code == cli::kExitOk);
    CHECK(drop_last_column(a.out) == drop_last_column(b.out));
    const auto rows = parse_csv(a.out);
    CHECK(rows.size() == 5);
    CHECK(column(rows, 4, "run_id") == "sweep-m:slope");
}

TEST_CASE("JSON output") {
    const CliResult r = run_cli({"power", "--json", "--samples", "2"});
    REQUIRE(r.code == cli::kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    CHECK(doc[0]["subcommand"] == "power");
    const CliResult s = run_cli({"search", "--json", "--k", "1"});
    const auto sdoc = nlohmann::json::parse(s.out);
    CHECK(sdoc[0]["k"] == 1);
}

TEST_CASE("config files") {
    const auto path = temp_file("config.json");
    {
        std::ofstream out(path);
        out << R"({"m": "2", "samples": 2, "spectrum": "dyadic", "dim": 4})";
    }
    const CliResult r = run_cli({"power", "--config", path.string(), "--m", "3"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = parse_csv(r.out);
    CHECK(column(rows, 1, "m") == "3");
    CHECK(column(rows, 1, "dim") == "4");
    {
        std::ofstream out(path);
        out << R"({"m": 2, "colour": "blue"})";
    }
    const CliResult bad = run_cli({"power", "--config", path.string()});
    CHECK(bad.code == cli::kExitValidation);
    CHECK(bad.err.find("colour") != std::string::npos);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(cli::config_tokens("[1]", {"m"}), ValidationError);
    CHECK(cli::config_tokens(R"({"force": true, "m": 3})", {"force", "m"}) ==
          std::vector<std::string>{"--force", "--m=3"});
}

TEST_CASE("output to a file") {
    const auto path = temp_file("out.csv");
    const CliResult r = run_cli({"power", "--samples", "1", "--out", path.string()});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == csv_header());
    std::filesystem::remove(path);
}
