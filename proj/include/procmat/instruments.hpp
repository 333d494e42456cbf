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

#include "procmat/operator.hpp"
#include "procmat/rng.hpp"

namespace procmat {

//==========================================================================
// Instruments
//==========================================================================

// One outcome of a local operation, represented by its Choi operator
//   M = sum_ij |i><j|_in (x) Map(|i><j|)_out
// on the factors (in..., out...), in that order.
struct InstrumentElement {
  int outcome = 0;
  int setting = 0;
  LabeledOperator choi;
};

// A party's collection of operations: for each setting, the elements over
// outcomes form one instrument (completely positive parts summing to a
// trace-preserving whole). A party may span several factors, e.g. a joint
// lab acting on both copies of a composed process.
struct Instrument {
  char party = 'A';
  std::vector<FactorLabel> in_factors;
  std::vector<FactorLabel> out_factors;
  std::vector<InstrumentElement> elements;

  int n_settings() const;
  std::vector<const InstrumentElement*> elements_for(int setting) const;
  const InstrumentElement& element(int outcome, int setting) const;
};

// Choi operator of the map with the given Kraus operators (each a row-major
// d_out x d_in matrix): entries M[(i,m),(j,n)] = sum_k K[m,i] conj(K[n,j]).
LabeledOperator choi_from_kraus(const std::vector<std::vector<cx>>& kraus,
                                const std::vector<FactorLabel>& in_factors,
                                const std::vector<FactorLabel>& out_factors);

//--------------------------------------------------------------------------
// Validation
//--------------------------------------------------------------------------

// Per-element complete positivity (min eigenvalue, Hermiticity deviation)
// and per-setting trace preservation. The TP residual is the trace norm of
// Tr_out(sum_a M_a) - I_in.
struct InstrumentReport {
  struct ElementCheck {
    int outcome, setting;
    double min_eig;
    double herm_dev;
  };
  struct SettingCheck {
    int setting;
    double tp_residual;
  };
  std::vector<ElementCheck> element_checks;
  std::vector<SettingCheck> setting_checks;

  double worst_min_eig() const;
  double worst_tp_residual() const;
  bool pass(double tol) const;
};

InstrumentReport validate_instrument(const Instrument& inst,
                                     double tol = kDefaultTol);

//--------------------------------------------------------------------------
// Generalized Born rule
//--------------------------------------------------------------------------

// p = Tr[(M_1 (x) ... (x) M_n) W^T], the transpose taken in the
// computational product basis. The element Chois must jointly cover exactly
// the factors of W. Throws if the probability has imaginary part above tol.
double born_probability(const LabeledOperator& W,
                        const std::vector<const LabeledOperator*>& chois,
                        double tol = kDefaultTol);

struct ProbabilityTable {
  struct Cell {
    int outcome_a, outcome_b;
    double p;
  };
  // cells[x][y] lists all outcome pairs for settings (x, y).
  std::vector<std::vector<std::vector<Cell>>> cells;

  double setting_sum(int x, int y) const;
  double max_sum_deviation() const;  // max over settings of |sum - 1|
};

ProbabilityTable probability_table(const LabeledOperator& W,
                                   const Instrument& alice,
                                   const Instrument& bob,
                                   double tol = kDefaultTol);

// Largest influence of one party's setting choice on the other party's
// marginal outcome distribution.
struct SignalingReport {
  double alice_to_bob = 0.0;
  double bob_to_alice = 0.0;
};

SignalingReport signaling_deficit(const ProbabilityTable& table);

//--------------------------------------------------------------------------
// Constructors and sampling
//--------------------------------------------------------------------------

// Single-element deterministic instruments.
Instrument trace_instrument(char party,
                            const std::vector<FactorLabel>& in_factors,
                            const std::vector<FactorLabel>& out_factors);
Instrument prepare_instrument(char party,
                              const std::vector<FactorLabel>& in_factors,
                              const std::vector<FactorLabel>& out_factors,
                              const std::vector<cx>& density);
Instrument channel_instrument(char party,
                              const std::vector<FactorLabel>& in_factors,
                              const std::vector<FactorLabel>& out_factors,
                              const std::vector<std::vector<cx>>& kraus);

// Measure-and-discard: POVM over the inputs, trivial (or prepared) output.
Instrument measure_instrument(char party,
                              const std::vector<FactorLabel>& in_factors,
                              const std::vector<FactorLabel>& out_factors,
                              const std::vector<std::vector<cx>>& povm,
                              const std::vector<cx>& out_density);

// Random instrument: per setting, a Haar-random isometry from the input
// space into output (x) ancilla, with a computational-basis measurement of
// the n_outcomes-dimensional ancilla defining the outcomes.
Instrument sample_instrument(Rng& rng, char party,
                             const std::vector<FactorLabel>& in_factors,
                             const std::vector<FactorLabel>& out_factors,
                             int n_outcomes, int n_settings);

}  // namespace procmat
