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

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace procmat {

//==========================================================================
// Machine-checkable certificates
//==========================================================================

// One named numerical check: a statement, the residual it measured, the
// tolerance it was held to, and the verdict. Certificates are emitted as
// structured documents so the verification run is reviewable and diffable.
struct CheckEntry {
  std::string name;       // short stable identifier
  std::string statement;  // what was verified, in words
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;       // counts, sample sizes, caveats
};

struct Certificate {
  std::string title;
  std::vector<std::pair<std::string, std::string>> inputs;  // key, value
  std::vector<CheckEntry> checks;

  bool pass() const;
  CheckEntry& add(std::string name, std::string statement, double residual,
                  double tolerance, std::string note = "");
  // Pass/fail decided by residual <= tolerance; for checks with a
  // different sense, set entry.pass directly after adding.
  void note_input(std::string key, std::string value);
};

// Render as indented text, one line per check.
std::string to_text(const Certificate& c);

struct CertifyOptions {
  double tol = 1e-9;
  unsigned long long seed = 0;
  // Replace the opposite-order witness pair by two same-order processes;
  // the certificate must then fail its final step with "counterexample not
  // exhibited" (consistency control for the pipeline).
  bool control_same_order = false;
};

// The end-to-end no-go verification at the given port dimensions
// (d_AI, d_AO, d_BI, d_BO), both copies using the same dimensions:
//   1. the product bases of the valid subspaces on both copies, every
//      element projector-fixed and one-way ordered, counts cross-checked
//      combinatorially and against the projector's numeric rank;
//   2. premise audits: I +- M are (unnormalized) valid processes for every
//      element; analytic eigensystems verified; eigenvector pinning of
//      every basis pair at the tensor rule; zero-eigenvalue split
//      construction where dimensions admit zero eigenvalues;
//   3. uniqueness: a bilinear rule that matches the tensor product on all
//      basis pairs has exactly the tensor rule's coefficients (streamed
//      round-trip over the spanning family);
//   4. the tensor rule applied to the opposite-order pair violates the
//      joint-output validity constraint (the counterexample), so no rule
//      can satisfy validity, consistency and bilinearity together.
// Throws Error when the composite dimension guard is exceeded.
Certificate theorem_certificate(const std::vector<int>& port_dims,
                                const CertifyOptions& opts = {});

}  // namespace procmat
