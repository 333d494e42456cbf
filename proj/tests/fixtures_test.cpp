// Copyright 2026 The procmat Authors
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

#include <cstdlib>
#include <string>

#include "doctest.h"
#include "procmat/instruments.hpp"
#include "procmat/io.hpp"
#include "procmat/processes.hpp"
#include "support/fixtures_gen.hpp"

using namespace procmat;

// With PROCMAT_BLESS=1 in the environment the bundled fixture files are
// rewritten from the generators; the regular run checks the files on disk
// are exactly what the generators produce.
TEST_CASE("bundled fixture documents match their generators") {
  const bool bless = std::getenv("PROCMAT_BLESS") != nullptr;
  for (const auto& [name, doc] : fixtures::fixture_documents()) {
    const std::string path = fixtures::fixture_dir() + "/" + name;
    if (bless) {
      write_json_file(path, doc);
      continue;
    }
    INFO("fixture ", name);
    nlohmann::json on_disk = read_json_file(path);
    CHECK(on_disk == doc);
  }
}

TEST_CASE("bundled processes have the advertised validity") {
  for (const auto& [name, doc] : fixtures::fixture_documents()) {
    if (schema_of(doc) != kProcessSchema) continue;
    ProcessMatrix w = process_from_json(doc);
    ValidityReport r = validate_process(w);
    INFO("fixture ", name);
    if (name == "tensor_counterexample.json") {
      CHECK_FALSE(r.pass(1e-9));
      CHECK(r.min_eig >= -1e-12);  // fails only the validity constraints
    } else {
      CHECK(r.pass(1e-9));
    }
  }
}

TEST_CASE("bundled instruments validate") {
  for (const auto& [name, doc] : fixtures::fixture_documents()) {
    if (schema_of(doc) != kInstrumentSchema) continue;
    Instrument ins = instrument_from_json(doc);
    INFO("fixture ", name);
    CHECK(validate_instrument(ins).pass(1e-9));
  }
}
