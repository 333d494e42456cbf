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

#include <vector>

#include "procmat/basis.hpp"
#include "procmat/certificate.hpp"
#include "procmat/processes.hpp"

namespace procmat {

//==========================================================================
// Composition of processes shared by the same parties
//==========================================================================

// The plain tensor-product composition: W1 on copy-0 ports, W2 on copy-1
// ports, regrouped so party A owns both copies' A ports, party B both B
// ports. The result is NOT guaranteed valid; that failure is the point.
ProcessMatrix tensor_compose(const ProcessMatrix& w1,
                             const ProcessMatrix& w2);

//==========================================================================
// Bilinear composition rules, represented extensionally
//==========================================================================

// A bilinear map on span(basis1) x span(basis2), stored as its coefficient
// tensor over the product family {M_i (x) N_j}: the output for inputs
// (M_i, N_j) is sum_{kl} coeff[(i,j), (k,l)] M_k (x) N_l. Bilinearity
// holds by construction, so the mixture-consistency requirement is
// satisfied identically.
struct BilinearRule {
  const PtiBasis* basis1 = nullptr;
  const PtiBasis* basis2 = nullptr;
  // Row (i * n2 + j), column (k * n2 + l), row-major; empty when
  // tensor_rule is set (the coefficients are the identity matrix).
  std::vector<double> coeff;
  bool tensor_rule = false;

  int n1() const;
  int n2() const;
  // Coefficient vector for input basis pair (i, j).
  std::vector<double> pair_coeff(int i, int j) const;

  // Evaluate on operators in the spanned subspaces. The tensor rule
  // evaluates as a direct Kronecker product (so same-order inputs
  // reproduce W1 (x) W2 bit-exactly); general rules decompose the inputs,
  // contract with the coefficient tensor and materialize the output.
  LabeledOperator eval(const BasisFrame& f1, const BasisFrame& f2,
                       const LabeledOperator& w1, const LabeledOperator& w2,
                       double tol = kDefaultTol) const;
};

// The tensor-product rule on the given bases.
BilinearRule rule_from_tensor_product(const PtiBasis& basis1,
                                      const PtiBasis& basis2);

//--------------------------------------------------------------------------
// Fitting a rule from samples
//--------------------------------------------------------------------------

struct RuleSample {
  LabeledOperator w1, w2, out;
};

struct FitResult {
  BilinearRule rule;
  double max_sample_residual = 0.0;  // worst reconstruction of a sample
};

// Least-squares recovery of the coefficient tensor from (input, input,
// output) samples. The sample inputs must span both subspaces (checked via
// the rank of the design matrix; a deficient set is rejected with the
// missing directions listed). Dense solve, guarded to modest basis sizes.
FitResult fit_bilinear_rule(const std::vector<RuleSample>& samples,
                            const PtiBasis& basis1, const PtiBasis& basis2,
                            double tol = kDefaultTol);

// Streamed uniqueness check at full scale: for every basis pair (i, j),
// verify the tensor-product sample M_i (x) N_j decomposes over the product
// family with coefficients exactly e_i (x) e_j, i.e. any bilinear rule
// agreeing with the tensor product on the spanning family has the tensor
// rule's coefficient tensor. Returns the worst coefficient deviation.
double verify_tensor_fit_roundtrip(const PtiBasis& basis1,
                                   const PtiBasis& basis2);

//--------------------------------------------------------------------------
// Requirement checks
//--------------------------------------------------------------------------

// Each returns certificate entries named after the requirement checked:
// validity of the output, positivity alone, agreement with the tensor
// product on same-order inputs, and mixture consistency.
std::vector<CheckEntry> check_R1(const BilinearRule& rule,
                                 const BasisFrame& f1, const BasisFrame& f2,
                                 const ProcessMatrix& w1,
                                 const ProcessMatrix& w2, double tol);
std::vector<CheckEntry> check_R1prime(const BilinearRule& rule,
                                      const BasisFrame& f1,
                                      const BasisFrame& f2,
                                      const ProcessMatrix& w1,
                                      const ProcessMatrix& w2, double tol);
std::vector<CheckEntry> check_R2(const BilinearRule& rule,
                                 const BasisFrame& f1, const BasisFrame& f2,
                                 const ProcessMatrix& w1,
                                 const ProcessMatrix& w2, double tol);
// Mixture consistency on explicit convex decompositions.
std::vector<CheckEntry> check_R3(const BilinearRule& rule,
                                 const BasisFrame& f1, const BasisFrame& f2,
                                 const std::vector<ProcessMatrix>& ws1,
                                 const std::vector<double>& p1,
                                 const std::vector<ProcessMatrix>& ws2,
                                 const std::vector<double>& p2, double tol);

//--------------------------------------------------------------------------
// Lemma-level certificates
//--------------------------------------------------------------------------

// Norm-bound premises: for Hermitian A1, A2 in the valid subspaces with
// lambda_i their operator norms, lambda_i I +- A_i are positive and
// projector-fixed (valid processes up to normalization), and the tensor
// instance attains the bound: ||A1 (x) A2|| = lambda1 lambda2, Hermitian.
Certificate norm_product_certificate(const LabeledOperator& a1,
                               const Bipartition& bp1,
                               const LabeledOperator& a2,
                               const Bipartition& bp2,
                               double tol = kDefaultTol);

// Eigenvector pinning for +-1 product eigenvectors: I + (-1)^{k+1} M and
// the copy-1 partner are valid unnormalized processes, M and N are one-way
// ordered, and (M (x) N)|k, j> = (-1)^{k+j} |k, j>. The slot vectors pick
// per-port eigenvectors; every per-port eigenvalue must be +-1.
Certificate pinning_certificate(const PtiBasis& b1, int elem1,
                               const std::vector<int>& slots1,
                               const PtiBasis& b2, int elem2,
                               const std::vector<int>& slots2,
                               double tol = kDefaultTol);

// Zero-eigenvalue reduction: for a product eigenvector with at least one
// zero per-port eigenvalue, split the first zero factor X into X' + X''
// with X'|k1> = |k1>, X''|k1> = -|k1>, both traceless and within the valid
// subspace, and verify the split sum cancels on the chosen eigenvector so
// the product pins to eigenvalue 0.
Certificate zero_split_certificate(const PtiBasis& b1, int elem1,
                               const std::vector<int>& slots1,
                               const PtiBasis& b2, int elem2,
                               const std::vector<int>& slots2,
                               double tol = kDefaultTol);

}  // namespace procmat
