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

#include <utility>
#include <vector>

#include "procmat/operator.hpp"

namespace procmat {

//==========================================================================
// Process matrices
//==========================================================================

// One party's ports. A party may own several input and output factors, e.g.
// after composing two processes the joint party A holds both copies' ports.
struct PartyPorts {
  char party = 'A';
  std::vector<FactorLabel> ins;
  std::vector<FactorLabel> outs;
};

// A process matrix: an operator over all parties' input and output factors.
// The probability of local operations is p = Tr[(M_1 (x) ... (x) M_n) W^T].
//
// Convention note: because the Born rule transposes W (and instrument Chois
// carry no global transposition), the process encoding a shared state rho
// stores rho itself in the input slots, W = rho_in (x) I_out. A POVM
// element E measured on the input then yields Tr(E rho), as it should:
// the transpositions of the measurement Choi (E^T) and of W cancel.
//
// The struct itself does not enforce validity: reports and counterexamples
// need to hold invalid operators. Constructors below validate.
struct ProcessMatrix {
  LabeledOperator op;
  std::vector<PartyPorts> parties;
  bool normalized = true;
};

// The four port groups of a two-party process.
struct Bipartition {
  std::vector<FactorLabel> a_in, a_out, b_in, b_out;
};

// Extract the bipartition from a two-party process. Throws otherwise.
Bipartition bipartition_of(const ProcessMatrix& w);

// Two single-factor-per-port parties over the given dimensions, copy 0:
// ports A_I, A_O, B_I, B_O.
std::vector<PartyPorts> bipartite_parties(int d_ai, int d_ao, int d_bi,
                                          int d_bo, int copy = 0);

// All factors of all parties, in canonical order.
std::vector<FactorLabel> party_factors(const std::vector<PartyPorts>& ps);

// Group factors into parties by party symbol (ins before outs, canonical
// order): the regrouping that makes one party own several copies' ports.
std::vector<PartyPorts> parties_from_factors(std::vector<FactorLabel> fs);

// Relabel every factor of the process to the given copy index.
ProcessMatrix relabel_copy(const ProcessMatrix& w, int copy);

//--------------------------------------------------------------------------
// Validity projectors
//--------------------------------------------------------------------------

// Orthogonal projector onto the subspace of operators obeying the process
// linear constraints for the bipartition: with _X denoting
// trace_and_replace over the group X,
//
//   L(W) = _{AO}W + _{BO}W - _{AO BO}W - _{BI BO}W + _{AO BI BO}W
//          - _{AI AO}W + _{AI AO BO}W.
//
// Idempotent and self-adjoint under the trace inner product; fixed points
// are exactly the operators satisfying the three constraint identities
// checked by validate_process.
LabeledOperator project_LV(const LabeledOperator& op, const Bipartition& bp);

// N-party form: the polynomial 1 - prod_i (1 - O_i + I_i O_i)
// + prod_i I_i O_i, each symbol acting as trace_and_replace over that
// party's port group. Reduces to project_LV at N = 2.
LabeledOperator project_LVN(const LabeledOperator& op,
                            const std::vector<PartyPorts>& parties);

// The expanded polynomial as (factor set, coefficient) pairs; exposed for
// the basis module's combinatorial signature filter.
std::vector<std::pair<std::vector<FactorLabel>, double>> lvn_terms(
    const std::vector<PartyPorts>& parties);

//--------------------------------------------------------------------------
// Validation and classification
//--------------------------------------------------------------------------

struct ValidityReport {
  double herm_dev = 0.0;           // distance from Hermiticity
  double min_eig = 0.0;            // smallest eigenvalue (PSD check)
  double trace = 0.0;              // Re Tr W
  double trace_dev = 0.0;          // |Tr W - d_O|, 0 when not normalized
  double marginal_a_residual = 0.0;   // _{BI BO}W = _{AO BI BO}W
  double marginal_b_residual = 0.0;   // _{AI AO}W = _{AI AO BO}W
  double joint_output_residual = 0.0; // W = _{BO}W + _{AO}W - _{AO BO}W
  double projector_residual = 0.0;    // L(W) = W
  bool pass(double tol) const;
};

// Constraint residuals are entrywise max-abs. For two-party processes the
// three constraint identities are reported separately; for other party
// counts only the projector residual is populated.
ValidityReport validate_process(const ProcessMatrix& w,
                                double tol = kDefaultTol);

enum class CausalClass { NoSignaling, AprecB, BprecA, NoFixedOrder };

const char* to_string(CausalClass c);

// Max-abs residuals of the two one-way-order conditions.
struct OrderResiduals {
  double a_prec_b = 0.0;  // _{BO}W - W : Bob cannot signal to Alice
  double b_prec_a = 0.0;  // _{AO}W - W : Alice cannot signal to Bob
};

OrderResiduals order_residuals(const ProcessMatrix& w);

// Classification of a VALID two-party process; invalid input is rejected.
// Both order conditions holding means the process is a quantum state with
// no signaling either way.
CausalClass causal_class(const ProcessMatrix& w, double tol = kDefaultTol);

//--------------------------------------------------------------------------
// Constructors (validated; throw with the failed sub-check)
//--------------------------------------------------------------------------

// Shared state: W = rho_in (x) I_out with rho given over the input factors
// (see the convention note on ProcessMatrix).
ProcessMatrix state_process(const LabeledOperator& rho,
                            const std::vector<FactorLabel>& out_factors);

enum class Direction { AtoB, BtoA };

// Channel from one party's output port into the other party's input port:
// AtoB gives W = (I/d)^{A_I} (x) C^{A_O B_I} (x) I^{B_O} with C the
// channel's Choi operator on (A_O, B_I); BtoA mirrors it.
ProcessMatrix channel_process(const LabeledOperator& choi, Direction dir,
                              int d_other_in, int d_other_out);

// n parallel copies on disjoint copy labels, regrouped as one two-party
// process (party A owns every copy's A-ports, party B the B-ports).
ProcessMatrix parallel_copies(const ProcessMatrix& w, int n);

// Convex mixture; party structures must agree.
ProcessMatrix mixture(const std::vector<ProcessMatrix>& ws,
                      const std::vector<double>& probs);

// The reference pair of oppositely ordered processes on square ports of
// dimension d: identity-channel processes A->B and B->A. Their equal
// mixture is a valid process with no fixed causal order.
std::pair<ProcessMatrix, ProcessMatrix> opposite_order_pair(int d);

// Same at possibly unequal port dimensions (d_ai, d_ao, d_bi, d_bo): the
// connecting channels become funnel channels (isometric embedding when the
// source is smaller, basis-truncating channel when larger), which still
// signal in the stated direction.
std::pair<ProcessMatrix, ProcessMatrix> opposite_order_pair_dims(
    int d_ai, int d_ao, int d_bi, int d_bo);

}  // namespace procmat
