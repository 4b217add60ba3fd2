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

#include "config.hpp"

#include <fstream>
#include <sstream>

#include "fracpow/error.hpp"
#include "fracpow/record.hpp"
#include "json.hpp"

namespace fracpow::cli {

std::vector<std::string> config_tokens(const std::string &json_text, const std::set<std::string> &allowed) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    std::vector<std::string> tokens;
    for (const auto &[key, value] : doc.items()) {
        if (allowed.count(key) == 0) {
            throw ValidationError("unknown config key '" + key + "'");
        }
        const std::string flag = "--" + key;
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                tokens.push_back(flag);
            }
        } else if (value.is_string()) {
            tokens.push_back(flag + "=" + value.get<std::string>());
        } else if (value.is_number_integer() || value.is_number_unsigned()) {
            tokens.push_back(flag + "=" + value.dump());
        } else if (value.is_number_float()) {
            tokens.push_back(flag + "=" + format_real(value.get<double>()));
        } else {
            throw ValidationError("config key '" + key + "' must be a string, number or boolean");
        }
    }
    return tokens;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace fracpow::cli
