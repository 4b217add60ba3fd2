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

#include "fracpow/record.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace fracpow {

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string format_real(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_header() {
    return "run_id,subcommand,m,r,t,dim,gap,mode,max_err,mean_err,residual_ancilla,"
           "calls_u,calls_cu,calls_uinv,calls_cuinv,seed,wall_ms";
}

std::string csv_row(const ExperimentRecord &rec) {
    std::string row;
    row += csv_field(rec.run_id) + ',';
    row += csv_field(rec.subcommand) + ',';
    row += std::to_string(rec.m) + ',';
    row += std::to_string(rec.r) + ',';
    row += csv_field(rec.t) + ',';
    row += std::to_string(rec.dim) + ',';
    row += format_real(rec.gap) + ',';
    row += csv_field(rec.mode) + ',';
    row += format_real(rec.max_err) + ',';
    row += format_real(rec.mean_err) + ',';
    row += format_real(rec.residual_ancilla) + ',';
    row += std::to_string(rec.calls_u) + ',';
    row += std::to_string(rec.calls_cu) + ',';
    row += std::to_string(rec.calls_uinv) + ',';
    row += std::to_string(rec.calls_cuinv) + ',';
    row += std::to_string(rec.seed) + ',';
    row += std::to_string(rec.wall_ms);
    return row;
}

void write_csv(std::ostream &out, std::span<const ExperimentRecord> records) {
    out << csv_header() << '\n';
    for (const auto &rec : records) {
        out << csv_row(rec) << '\n';
    }
}

void write_json(std::ostream &out, std::span<const ExperimentRecord> records) {
    auto real = [](double x) -> nlohmann::json {
        if (std::isfinite(x)) {
            return x;
        }
        return format_real(x);
    };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &rec : records) {
        nlohmann::ordered_json o;
        o["run_id"] = rec.run_id;
        o["subcommand"] = rec.subcommand;
        o["m"] = rec.m;
        o["r"] = rec.r;
        o["t"] = rec.t;
        o["dim"] = rec.dim;
        o["gap"] = real(rec.gap);
        o["mode"] = rec.mode;
        o["max_err"] = real(rec.max_err);
        o["mean_err"] = real(rec.mean_err);
        o["residual_ancilla"] = real(rec.residual_ancilla);
        o["calls_u"] = rec.calls_u;
        o["calls_cu"] = rec.calls_cu;
        o["calls_uinv"] = rec.calls_uinv;
        o["calls_cuinv"] = rec.calls_cuinv;
        o["seed"] = rec.seed;
        o["wall_ms"] = rec.wall_ms;
        arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
}

} // namespace fracpow
