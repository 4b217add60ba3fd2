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

#include <sstream>

#include "fracpow/record.hpp"
#include "json.hpp"

using namespace fracpow;

TEST_CASE("csv header lists the fields in order") {
    CHECK(csv_header() ==
          "run_id,subcommand,m,r,t,dim,gap,mode,max_err,mean_err,residual_ancilla,calls_u,calls_cu,"
          "calls_uinv,calls_cuinv,seed,wall_ms");
}

TEST_CASE("reals round-trip") {
    for (double x : {0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 6.02e23}) {
        CHECK(std::stod(format_real(x)) == x);
    }
    CHECK(format_real(3.0) == "3");
}

TEST_CASE("csv rows quote awkward text and end with LF") {
    ExperimentRecord rec;
    rec.run_id = "a,b";
    rec.subcommand = "power";
    std::ostringstream out;
    const ExperimentRecord recs[] = {rec};
    write_csv(out, recs);
    const std::string text = out.str();
    CHECK(text.find("\"a,b\"") != std::string::npos);
    CHECK(text.back() == '\n');
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("json output is an array of objects") {
    ExperimentRecord rec;
    rec.max_err = 0.25;
    rec.calls_cu = 7;
    std::ostringstream out;
    const ExperimentRecord recs[] = {rec, rec};
    write_json(out, recs);
    const auto doc = nlohmann::json::parse(out.str());
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 2);
    CHECK(doc[0]["max_err"].get<double>() == 0.25);
    CHECK(doc[1]["calls_cu"].get<int>() == 7);
}
