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

#ifndef PROCMAT_IO_HPP_
#define PROCMAT_IO_HPP_

#include <string>

#include "json.hpp"
#include "procmat/certificate.hpp"
#include "procmat/instruments.hpp"
#include "procmat/processes.hpp"

namespace procmat {

// Versioned document schemas. Every document carries its schema string in
// a top-level "schema" field; readers reject anything else. Complex
// entries are stored as [re, im] pairs, matrices row-major, so doubles
// survive a write/read cycle bit-exactly.
inline constexpr const char* kOperatorSchema = "procmat/operator@1";
inline constexpr const char* kProcessSchema = "procmat/process@1";
inline constexpr const char* kInstrumentSchema = "procmat/instrument@1";
inline constexpr const char* kCertificateSchema = "procmat/certificate@1";

nlohmann::json to_json(const LabeledOperator& op);
LabeledOperator operator_from_json(const nlohmann::json& j);

// Processes reference their party port groups by factor name ("A_I",
// "B'_O", ...); names resolve against the embedded operator's factors.
nlohmann::json to_json(const ProcessMatrix& w);
ProcessMatrix process_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Instrument& ins);
Instrument instrument_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

// Reads construct objects structurally; they do not run semantic
// validation (that is what the validate entry points are for).
std::string schema_of(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace procmat

#endif  // PROCMAT_IO_HPP_
