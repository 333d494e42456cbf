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
#include <vector>

#include "procmat/factor.hpp"

namespace procmat {

//==========================================================================
// LabeledOperator
//==========================================================================

// A dense operator on a tensor product of labeled factors. Storage is
// row-major over the product space; the row (and column) index decomposes
// mixed-radix over the factors in order, first factor most significant.
struct LabeledOperator {
  std::vector<FactorLabel> factors;
  std::vector<cx> data;

  LabeledOperator() = default;

  // Zero operator on the given factors. Throws on duplicate labels or when
  // the total dimension exceeds kMaxTotalDim.
  explicit LabeledOperator(std::vector<FactorLabel> fs);

  static LabeledOperator identity(std::vector<FactorLabel> fs);

  int dim() const { return dim_; }

  cx& at(int r, int c) { return data[static_cast<std::size_t>(r) * dim_ + c]; }
  const cx& at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * dim_ + c];
  }

  // Human-readable factor list, e.g. "A_I(2) A_O(2) B_I(2) B_O(2)".
  std::string factor_names() const;

 private:
  int dim_ = 1;
};

//==========================================================================
// Tensor-space operations
//==========================================================================

// Tensor product; factor lists concatenate. Throws on label collision.
LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b);

// Permute the factors into the given order (must be a permutation of the
// operator's labels). Pure data movement; applying a permutation and then
// its inverse restores the input bit-exactly.
LabeledOperator reorder_factors(const LabeledOperator& op,
                                const std::vector<FactorLabel>& order);

// Convenience: reorder into canonical label order.
LabeledOperator to_canonical_order(const LabeledOperator& op);

// Trace out the named factors; remaining factors keep their relative order.
// Tracing out everything yields a 1x1 operator holding the full trace.
LabeledOperator partial_trace(const LabeledOperator& op,
                              const std::vector<FactorLabel>& traced);

// Trace out the named factors and reinsert the normalized identity in their
// place: op -> (I_X / d_X) (x) Tr_X op, with factors kept in their original
// slots. The building block of the validity constraints and projectors.
LabeledOperator trace_and_replace(const LabeledOperator& op,
                                  const std::vector<FactorLabel>& replaced);

// Transpose in the computational product basis (no conjugation).
LabeledOperator transpose_op(const LabeledOperator& op);

// Full trace.
cx trace_of(const LabeledOperator& op);

// Hilbert-Schmidt inner product Tr(a^dag b). Factor lists must agree in
// content; b is reordered to a's factor order if needed.
cx trace_inner(const LabeledOperator& a, const LabeledOperator& b);

// Elementwise norms.
double max_abs(const LabeledOperator& op);
double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b);
double fro_norm(const LabeledOperator& op);

// max_rc |op[r,c] - conj(op[c,r])| : distance from Hermiticity.
double hermiticity_deviation(const LabeledOperator& op);

//==========================================================================
// Hermitian eigendecomposition
//==========================================================================

struct EigResult {
  std::vector<double> evals;            // ascending
  std::vector<std::vector<cx>> evecs;   // evecs[i] pairs with evals[i]
};

// Eigendecomposition for Hermitian operators only: inputs farther than
// herm_tol from Hermitian are rejected with the deviation in the message.
// The residual max_i ||A v_i - lambda_i v_i|| is verified internally.
EigResult eig_hermitian(const LabeledOperator& op,
                        double herm_tol = kDefaultTol);

// Operator norm max |eigenvalue| (Hermitian contract, as eig_hermitian).
double op_norm(const LabeledOperator& op, double herm_tol = kDefaultTol);

// Trace norm sum |eigenvalue| (Hermitian contract).
double trace_norm(const LabeledOperator& op, double herm_tol = kDefaultTol);

// Smallest eigenvalue (Hermitian contract).
double min_eig(const LabeledOperator& op, double herm_tol = kDefaultTol);

// a + s * b elementwise; factor lists must agree (b reordered if needed).
LabeledOperator add_scaled(const LabeledOperator& a, cx s,
                           const LabeledOperator& b);
LabeledOperator scale(const LabeledOperator& a, cx s);

}  // namespace procmat
