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
 * ExperimentRecord and its CSV / JSON serializations.
 */
#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace fracpow {

/// One run of an experiment. wall_ms is last so byte comparisons can drop it.
struct ExperimentRecord {
    std::string run_id;
    std::string subcommand;
    int m = 0;
    int r = 0;
    std::string t = "0";
    std::uint64_t dim = 0;
    double gap = 0.0;
    std::string mode;
    double max_err = 0.0;
    double mean_err = 0.0;
    double residual_ancilla = 0.0;
    std::uint64_t calls_u = 0;
    std::uint64_t calls_cu = 0;
    std::uint64_t calls_uinv = 0;
    std::uint64_t calls_cuinv = 0;
    std::uint64_t seed = 0;
    std::int64_t wall_ms = 0;
};

/// Round-trip decimal text ("%.17g"); integers print without exponent.
std::string format_real(double x);

std::string csv_header();
std::string csv_row(const ExperimentRecord &rec);
/// Header plus one LF-terminated line per record.
void write_csv(std::ostream &out, std::span<const ExperimentRecord> records);
/// Top-level JSON array, one object per record.
void write_json(std::ostream &out, std::span<const ExperimentRecord> records);

} // namespace fracpow
