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

#include "procmat/processes.hpp"

namespace procmat {

//==========================================================================
// Hermitian operator bases with spectra in {-1, 0, 1}
//==========================================================================

// One element of the generalized Gell-Mann family on a d-dimensional space
// (plus the identity). Eigenvalues and eigenvectors are known analytically;
// they are stored slot-by-slot: eigpair q is anchored at computational
// basis index q, so an element's eigensystem enumerates a full orthonormal
// basis in a deterministic order.
struct GellMannElement {
  enum class Kind { I, Z, X, Y };
  Kind kind = Kind::I;
  int i = 0, j = 0;  // 1-based indices: Z_i, X_ij, Y_ij (i < j)
  int d = 0;
  std::vector<cx> mat;                  // d x d row-major
  std::vector<double> evals;            // evals[q] for eigvec q
  std::vector<std::vector<cx>> evecs;   // orthonormal, evecs[q] size d

  std::string name() const;  // "I", "Z1", "X12", "Y23", ...
  bool traceless() const { return kind != Kind::I; }
};

// The identity plus the d^2 - 1 traceless elements
//   Z_i = |i><i| - |i+1><i+1|          (1 <= i <= d-1)
//   X_jk = |j><k| + |k><j|             (1 <= j < k <= d)
//   Y_jk = i(|j><k| - |k><j|)          (1 <= j < k <= d)
// in the order I, Z_1..Z_{d-1}, then X_jk/Y_jk interleaved by (j, k).
// All Hermitian with eigenvalues in {-1, 0, 1}; spans Hermitian d x d.
std::vector<GellMannElement> gellmann_basis(int d);

//==========================================================================
// Product basis of the valid subspace
//==========================================================================

// A product of per-port basis elements lying in the valid subspace
// (projector fixed point). Stored sparsely as per-port element indices.
struct PtiElement {
  std::vector<int> choice;    // per port, index into the port's basis
  std::vector<int> signature; // ports where the choice is non-identity
  LabeledOperator op;
};

struct PtiBasis {
  std::vector<FactorLabel> ports;                        // one factor each
  std::vector<std::vector<GellMannElement>> port_bases;  // per port
  std::vector<PartyPorts> parties;
  std::vector<PtiElement> elements;
  int total_products = 0;  // product-term count before filtering

  const GellMannElement& factor(const PtiElement& e, int port) const {
    return port_bases[port][static_cast<std::size_t>(e.choice[port])];
  }
  // Product eigenvalue and eigenvector of element e for per-port slots q.
  double product_eval(const PtiElement& e,
                      const std::vector<int>& slots) const;
  std::vector<cx> product_evec(const PtiElement& e,
                               const std::vector<int>& slots) const;
};

// Is a product term with the given set of traceless ports kept by the
// projector? The term is multiplied by the sum of polynomial coefficients
// of the trace-and-replace terms disjoint from the set; for a projector
// that sum is 0 or 1.
bool signature_allowed(
    const std::vector<int>& traceless_ports,
    const std::vector<std::pair<std::vector<FactorLabel>, double>>& terms,
    const std::vector<FactorLabel>& ports);

// Build the product basis of the valid subspace over single-factor ports
// A_I, A_O, B_I, B_O with the given dimensions (each >= 2), on the given
// copy label. Elements are enumerated in lexicographic per-port index
// order and filtered by signature_allowed; the numeric projector fixed
// point is an independent cross-check exercised in tests.
PtiBasis pti_basis(const std::vector<int>& port_dims, int copy = 0);

// Single-party variant over ports A_I, A_O.
PtiBasis pti_basis_single(int d_in, int d_out, int copy = 0);

// Number of allowed elements predicted combinatorially: sum over allowed
// signatures of prod (d_p^2 - 1) over traceless ports.
long long predicted_count(const std::vector<int>& port_dims);

// Numeric rank of the bipartite projector at these port dimensions: the
// trace of the projector as a linear map, evaluated on all matrix units.
// For a projector the trace equals the rank.
double projector_rank_trace(const std::vector<int>& port_dims, int copy = 0);

//==========================================================================
// Coordinates over a basis
//==========================================================================

// Real coordinates of Hermitian operators over a PtiBasis, solved through
// the Gram matrix of the trace inner product (the basis is not orthogonal:
// neighboring Z elements overlap).
struct BasisFrame {
  const PtiBasis* basis = nullptr;
  std::vector<double> gram;          // n x n, row-major
  std::vector<double> gram_factor;   // inverse Gram, row-major
  int n = 0;

  explicit BasisFrame(const PtiBasis& b);

  // Coordinates x with v = sum_k x_k M_k; throws if v is farther than tol
  // from the span (relative to its max-abs entry).
  std::vector<double> coordinates(const LabeledOperator& v,
                                  double tol = kDefaultTol) const;
  // Same without the in-span check; also returns the residual.
  std::vector<double> coordinates_lenient(const LabeledOperator& v,
                                          double* residual) const;
  LabeledOperator materialize(const std::vector<double>& x) const;
};

}  // namespace procmat
