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

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace fracpow::cli {

/**
 * Turns a JSON object whose keys are flag names (without the leading dashes)
 * into "--key=value" tokens. Keys outside `allowed` and non-scalar values are
 * rejected with ValidationError. Booleans map to flag presence.
 */
std::vector<std::string> config_tokens(const std::string &json_text, const std::set<std::string> &allowed);

std::string read_text_file(const std::filesystem::path &path);

} // namespace fracpow::cli
