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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace procmat {

using cx = std::complex<double>;

// Default numerical tolerance for validity checks and residual comparisons.
inline constexpr double kDefaultTol = 1e-9;

// Dense storage guard: operators with total dimension above this are refused.
inline constexpr int kMaxTotalDim = 1024;

// Thrown on contract violations: bad labels, dimension guard, parse errors.
// Numerical check failures are reported through result structs, not thrown.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class Port { In, Out };

//==========================================================================
// FactorLabel
//==========================================================================

// One tensor factor of a joint space. A factor is identified by
// (party, port, copy); the local dimension rides along as an attribute.
// copy 0 is the unprimed space, copy 1 the primed one ("A'_I"), and so on.
struct FactorLabel {
  char party = 'A';
  Port port = Port::In;
  int copy = 0;
  int dim = 2;

  // Short display name, e.g. "A_I", "B'_O".
  std::string name() const;

  // Identity comparison ignores dim; equality includes it.
  bool same_id(const FactorLabel& o) const {
    return party == o.party && port == o.port && copy == o.copy;
  }
  bool operator==(const FactorLabel& o) const {
    return same_id(o) && dim == o.dim;
  }
};

// Canonical order: by party letter, then copy, then inputs before outputs.
// For a two-copy bipartite composite this yields
// A_I, A_O, A'_I, A'_O, B_I, B_O, B'_I, B'_O.
bool canonical_less(const FactorLabel& a, const FactorLabel& b);

std::vector<FactorLabel> canonical_order(std::vector<FactorLabel> fs);

// Product of local dimensions; throws when it exceeds kMaxTotalDim.
int checked_product_dim(const std::vector<FactorLabel>& fs);

// Index of the factor with the same identity, or -1.
int find_factor(const std::vector<FactorLabel>& fs, const FactorLabel& f);

// Throws when two factors share an identity.
void check_no_duplicates(const std::vector<FactorLabel>& fs);

// Returns a copy of the labels with the copy index replaced.
std::vector<FactorLabel> with_copy(std::vector<FactorLabel> fs, int copy);

}  // namespace procmat
