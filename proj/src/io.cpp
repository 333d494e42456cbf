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

#include "procmat/io.hpp"

#include <fstream>
#include <map>

namespace procmat {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw Error(std::string("missing field '") + key + "'");
  return *it;
}

void check_schema(const json& j, const char* want) {
  const std::string got = need(j, "schema").get<std::string>();
  if (got != want)
    throw Error("unsupported schema '" + got + "', expected '" + want +
                "'");
}

json factor_to_json(const FactorLabel& f) {
  return {{"party", std::string(1, f.party)},
          {"port", f.port == Port::In ? "I" : "O"},
          {"copy", f.copy},
          {"dim", f.dim}};
}

FactorLabel factor_from_json(const json& j) {
  const std::string party = need(j, "party").get<std::string>();
  if (party.size() != 1 || party[0] < 'A' || party[0] > 'Z')
    throw Error("factor party must be a single letter A..Z");
  const std::string port = need(j, "port").get<std::string>();
  if (port != "I" && port != "O")
    throw Error("factor port must be \"I\" or \"O\"");
  FactorLabel f{party[0], port == "I" ? Port::In : Port::Out,
                need(j, "copy").get<int>(), need(j, "dim").get<int>()};
  if (f.copy < 0) throw Error("factor copy must be >= 0");
  if (f.dim < 1) throw Error("factor dim must be >= 1");
  return f;
}

json operator_body(const LabeledOperator& op) {
  json factors = json::array();
  for (const auto& f : op.factors) factors.push_back(factor_to_json(f));
  json data = json::array();
  for (const cx& v : op.data) data.push_back({v.real(), v.imag()});
  return {{"schema", kOperatorSchema},
          {"factors", std::move(factors)},
          {"data", std::move(data)}};
}

LabeledOperator operator_body_from(const json& j) {
  check_schema(j, kOperatorSchema);
  std::vector<FactorLabel> factors;
  for (const auto& fj : need(j, "factors")) {
    factors.push_back(factor_from_json(fj));
  }
  LabeledOperator op(factors);
  const json& data = need(j, "data");
  if (data.size() != op.data.size())
    throw Error("operator data has " + std::to_string(data.size()) +
                " entries, expected " + std::to_string(op.data.size()));
  for (std::size_t i = 0; i < op.data.size(); ++i) {
    const json& e = data[i];
    if (!e.is_array() || e.size() != 2)
      throw Error("operator entries must be [re, im] pairs");
    op.data[i] = cx(e[0].get<double>(), e[1].get<double>());
  }
  return op;
}

}  // namespace

json to_json(const LabeledOperator& op) { return operator_body(op); }

LabeledOperator operator_from_json(const json& j) {
  return operator_body_from(j);
}

json to_json(const ProcessMatrix& w) {
  json parties = json::array();
  for (const auto& p : w.parties) {
    json ins = json::array(), outs = json::array();
    for (const auto& f : p.ins) ins.push_back(f.name());
    for (const auto& f : p.outs) outs.push_back(f.name());
    parties.push_back({{"party", std::string(1, p.party)},
                       {"ins", std::move(ins)},
                       {"outs", std::move(outs)}});
  }
  return {{"schema", kProcessSchema},
          {"operator", operator_body(w.op)},
          {"parties", std::move(parties)},
          {"normalized", w.normalized}};
}

ProcessMatrix process_from_json(const json& j) {
  check_schema(j, kProcessSchema);
  ProcessMatrix w;
  w.op = operator_body_from(need(j, "operator"));
  std::map<std::string, FactorLabel> by_name;
  for (const auto& f : w.op.factors) by_name.emplace(f.name(), f);
  auto resolve = [&](const json& names) {
    std::vector<FactorLabel> fs;
    for (const auto& n : names) {
      auto it = by_name.find(n.get<std::string>());
      if (it == by_name.end())
        throw Error("party references unknown factor '" +
                    n.get<std::string>() + "'");
      fs.push_back(it->second);
    }
    return fs;
  };
  for (const auto& pj : need(j, "parties")) {
    const std::string party = need(pj, "party").get<std::string>();
    if (party.size() != 1)
      throw Error("party must be a single letter");
    w.parties.push_back({party[0], resolve(need(pj, "ins")),
                         resolve(need(pj, "outs"))});
  }
  w.normalized = need(j, "normalized").get<bool>();
  return w;
}

json to_json(const Instrument& ins) {
  json in_f = json::array(), out_f = json::array();
  for (const auto& f : ins.in_factors) in_f.push_back(factor_to_json(f));
  for (const auto& f : ins.out_factors) out_f.push_back(factor_to_json(f));
  json elems = json::array();
  for (const auto& e : ins.elements)
    elems.push_back({{"outcome", e.outcome},
                     {"setting", e.setting},
                     {"operator", operator_body(e.choi)}});
  return {{"schema", kInstrumentSchema},
          {"party", std::string(1, ins.party)},
          {"in_factors", std::move(in_f)},
          {"out_factors", std::move(out_f)},
          {"elements", std::move(elems)}};
}

Instrument instrument_from_json(const json& j) {
  check_schema(j, kInstrumentSchema);
  Instrument ins;
  const std::string party = need(j, "party").get<std::string>();
  if (party.size() != 1) throw Error("party must be a single letter");
  ins.party = party[0];
  for (const auto& fj : need(j, "in_factors"))
    ins.in_factors.push_back(factor_from_json(fj));
  for (const auto& fj : need(j, "out_factors"))
    ins.out_factors.push_back(factor_from_json(fj));
  for (const auto& ej : need(j, "elements"))
    ins.elements.push_back({need(ej, "outcome").get<int>(),
                            need(ej, "setting").get<int>(),
                            operator_body_from(need(ej, "operator"))});
  return ins;
}

json to_json(const Certificate& c) {
  json inputs = json::array();
  for (const auto& [k, v] : c.inputs)
    inputs.push_back({{"key", k}, {"value", v}});
  json checks = json::array();
  for (const auto& e : c.checks)
    checks.push_back({{"name", e.name},
                      {"statement", e.statement},
                      {"residual", e.residual},
                      {"tolerance", e.tolerance},
                      {"pass", e.pass},
                      {"note", e.note}});
  return {{"schema", kCertificateSchema},
          {"title", c.title},
          {"inputs", std::move(inputs)},
          {"checks", std::move(checks)},
          {"pass", c.pass()}};
}

Certificate certificate_from_json(const json& j) {
  check_schema(j, kCertificateSchema);
  Certificate c;
  c.title = need(j, "title").get<std::string>();
  for (const auto& ij : need(j, "inputs"))
    c.inputs.emplace_back(need(ij, "key").get<std::string>(),
                          need(ij, "value").get<std::string>());
  for (const auto& ej : need(j, "checks"))
    c.checks.push_back({need(ej, "name").get<std::string>(),
                        need(ej, "statement").get<std::string>(),
                        need(ej, "residual").get<double>(),
                        need(ej, "tolerance").get<double>(),
                        need(ej, "pass").get<bool>(),
                        need(ej, "note").get<std::string>()});
  return c;
}

std::string schema_of(const json& j) {
  return need(j, "schema").get<std::string>();
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  // Compact: operator payloads are large and read by machines; use jq to
  // inspect by hand.
  out << j.dump() << "\n";
  if (!out) throw Error("write to " + path + " failed");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("failed to parse " + path + ": " + e.what());
  }
}

}  // namespace procmat
