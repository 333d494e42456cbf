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

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "procmat/certificate.hpp"
#include "procmat/instruments.hpp"
#include "procmat/io.hpp"
#include "procmat/processes.hpp"
#include "procmat/rng.hpp"

using namespace procmat;

namespace {

bool same_data(const LabeledOperator& a, const LabeledOperator& b) {
  if (a.data.size() != b.data.size()) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    if (a.data[i] != b.data[i]) return false;  // bit-exact round trip
  return true;
}

bool same_factors(const std::vector<FactorLabel>& a,
                  const std::vector<FactorLabel>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].same_id(b[i]) || a[i].dim != b[i].dim) return false;
  return true;
}

}  // namespace

TEST_CASE("operators round-trip bit-exactly through their documents") {
  Rng rng(60);
  LabeledOperator op = random_hermitian(
      rng, {FactorLabel{'A', Port::In, 0, 2}, FactorLabel{'B', Port::Out, 1, 3}});
  nlohmann::json j = to_json(op);
  CHECK(schema_of(j) == kOperatorSchema);
  LabeledOperator back = operator_from_json(j);
  CHECK(same_factors(op.factors, back.factors));
  CHECK(same_data(op, back));
}

TEST_CASE("process documents keep party structure and normalization") {
  ProcessMatrix w = opposite_order_pair(2).first;
  nlohmann::json j = to_json(w);
  CHECK(schema_of(j) == kProcessSchema);
  ProcessMatrix back = process_from_json(j);
  CHECK(back.normalized == w.normalized);
  REQUIRE(back.parties.size() == w.parties.size());
  for (std::size_t p = 0; p < w.parties.size(); ++p) {
    CHECK(back.parties[p].party == w.parties[p].party);
    CHECK(same_factors(back.parties[p].ins, w.parties[p].ins));
    CHECK(same_factors(back.parties[p].outs, w.parties[p].outs));
  }
  CHECK(same_data(w.op, back.op));
  CHECK(validate_process(back).pass(1e-9));
}

TEST_CASE("instrument documents keep every element Choi operator") {
  Rng rng(61);
  Instrument ins = sample_instrument(
      rng, 'B', {FactorLabel{'B', Port::In, 0, 2}},
      {FactorLabel{'B', Port::Out, 0, 2}}, 2, 2);
  nlohmann::json j = to_json(ins);
  CHECK(schema_of(j) == kInstrumentSchema);
  Instrument back = instrument_from_json(j);
  CHECK(back.party == ins.party);
  CHECK(back.n_settings() == ins.n_settings());
  REQUIRE(back.elements.size() == ins.elements.size());
  for (std::size_t e = 0; e < ins.elements.size(); ++e) {
    CHECK(back.elements[e].outcome == ins.elements[e].outcome);
    CHECK(back.elements[e].setting == ins.elements[e].setting);
    CHECK(same_data(back.elements[e].choi, ins.elements[e].choi));
  }
}

TEST_CASE("certificate documents keep check entries and inputs") {
  Certificate cert;
  cert.title = "round-trip";
  cert.note_input("dims", "2x2");
  cert.add("alpha", "first statement", 1e-12, 1e-9);
  cert.add("beta", "second statement", 0.25, 1e-9, "extra note");
  CHECK_FALSE(cert.pass());
  nlohmann::json j = to_json(cert);
  CHECK(schema_of(j) == kCertificateSchema);
  Certificate back = certificate_from_json(j);
  CHECK(back.title == cert.title);
  REQUIRE(back.checks.size() == 2);
  CHECK(back.checks[0].name == "alpha");
  CHECK(back.checks[0].pass);
  CHECK(back.checks[1].residual == 0.25);
  CHECK_FALSE(back.checks[1].pass);
  CHECK_FALSE(back.pass());
  REQUIRE(back.inputs.size() == 1);
  CHECK(back.inputs[0].first == "dims");
}

TEST_CASE("malformed documents are rejected") {
  LabeledOperator op({FactorLabel{'A', Port::In, 0, 2}});
  nlohmann::json good = to_json(op);

  nlohmann::json wrong_schema = good;
  wrong_schema["schema"] = "procmat/unknown@9";
  CHECK_THROWS_AS(operator_from_json(wrong_schema), Error);

  nlohmann::json missing = good;
  missing.erase("factors");
  CHECK_THROWS_AS(operator_from_json(missing), Error);

  nlohmann::json short_data = good;
  short_data["data"].erase(0);
  CHECK_THROWS_AS(operator_from_json(short_data), Error);

  nlohmann::json bad_party = good;
  bad_party["factors"][0]["party"] = "AB";
  CHECK_THROWS_AS(operator_from_json(bad_party), Error);

  nlohmann::json bad_pair = good;
  bad_pair["data"][0] = 1.25;  // entries must be [re, im] pairs
  CHECK_THROWS_AS(operator_from_json(bad_pair), Error);
}

TEST_CASE("documents survive the file system round trip") {
  ProcessMatrix w = opposite_order_pair(2).second;
  const std::string path = "/tmp/procmat_io_test.json";
  write_json_file(path, to_json(w));
  nlohmann::json j = read_json_file(path);
  ProcessMatrix back = process_from_json(j);
  CHECK(same_data(w.op, back.op));
  std::remove(path.c_str());

  const std::string broken = "/tmp/procmat_io_broken.json";
  {
    std::ofstream out(broken);
    out << "{ \"schema\": \"procmat/process@1\", ";  // truncated
  }
  CHECK_THROWS_AS(read_json_file(broken), Error);
  std::remove(broken.c_str());
  CHECK_THROWS_AS(read_json_file("/tmp/procmat_io_missing.json"), Error);
}
