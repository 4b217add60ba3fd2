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

#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracpow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitRegression = 4;

/// Runs the `fracpow` command line (args exclude the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "3..8", "1,2,5" or "4"; ranges are inclusive and may be empty ("5..3").
std::vector<int> parse_int_list(std::string_view text);

/// Least-squares slope of y against x; NaN with fewer than two points.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

} // namespace fracpow::cli
