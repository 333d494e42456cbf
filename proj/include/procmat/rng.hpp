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

#include <cstdint>
#include <vector>

#include "procmat/operator.hpp"

namespace procmat {

// Deterministic generator with a fixed algorithm (splitmix64 + Box-Muller),
// so seeded runs reproduce across compilers and platforms. The standard
// library distributions are implementation-defined and are avoided here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();     // [0, 1)
  double gaussian();    // standard normal
  cx cgaussian();       // independent standard normals in re and im

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed isometry as a rows x cols row-major matrix (rows >= cols),
// columns orthonormal: Gaussian matrix, QR, phase-fixed by the R diagonal.
std::vector<cx> haar_isometry(Rng& rng, int rows, int cols);

// Random Hermitian operator with independent Gaussian entries on the given
// factors (GUE-style, unnormalized).
LabeledOperator random_hermitian(Rng& rng, std::vector<FactorLabel> fs);

// Random density matrix: normalized V V^dag with V a d x d Gaussian matrix.
std::vector<cx> random_density(Rng& rng, int d);

}  // namespace procmat
