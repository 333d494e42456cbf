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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "procmat/instruments.hpp"
#include "procmat/nogo.hpp"
#include "procmat/processes.hpp"
#include "procmat/rng.hpp"

using namespace procmat;

namespace {

std::vector<PartyPorts> qubit_parties() { return bipartite_parties(2, 2, 2, 2); }

LabeledOperator random_w_op(Rng& rng) {
  return random_hermitian(rng, party_factors(qubit_parties()));
}

}  // namespace

TEST_CASE("validity projector is idempotent and self-adjoint") {
  Rng rng(30);
  std::vector<PartyPorts> ps = qubit_parties();
  Bipartition bp{ps[0].ins, ps[0].outs, ps[1].ins, ps[1].outs};
  for (int t = 0; t < 20; ++t) {
    LabeledOperator w = random_w_op(rng);
    LabeledOperator lw = project_LV(w, bp);
    CHECK(max_abs_diff(project_LV(lw, bp), lw) <= 1e-9);
    LabeledOperator v = random_w_op(rng);
    cx lhs = trace_inner(project_LV(w, bp), v);
    cx rhs = trace_inner(w, project_LV(v, bp));
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    // the N-party expansion reproduces the bipartite closed form
    CHECK(max_abs_diff(project_LVN(w, ps), lw) <= 1e-12);
  }
}

TEST_CASE("single-party projector traces and replaces the output") {
  Rng rng(31);
  std::vector<PartyPorts> one{{'A',
                               {FactorLabel{'A', Port::In, 0, 2}},
                               {FactorLabel{'A', Port::Out, 0, 3}}}};
  LabeledOperator w = random_hermitian(rng, party_factors(one));
  LabeledOperator got = project_LVN(w, one);
  LabeledOperator want = trace_and_replace(w, one[0].outs);
  CHECK(max_abs_diff(got, want) <= 1e-12);
}

TEST_CASE("three-party projector stays idempotent") {
  Rng rng(32);
  std::vector<PartyPorts> ps = qubit_parties();
  ps.push_back(PartyPorts{'C',
                          {FactorLabel{'C', Port::In, 0, 2}},
                          {FactorLabel{'C', Port::Out, 0, 2}}});
  LabeledOperator w = random_hermitian(rng, party_factors(ps));
  LabeledOperator lw = project_LVN(w, ps);
  CHECK(max_abs_diff(project_LVN(lw, ps), lw) <= 1e-12);
  CHECK(hermiticity_deviation(lw) <= 1e-12);
  // terms carry integer coefficients and start from the identity term
  auto terms = lvn_terms(ps);
  CHECK(terms.size() >= 2);
  for (const auto& [fs, c] : terms)
    CHECK(std::abs(c - std::round(c)) <= 1e-12);
}

TEST_CASE("channel and state processes validate with the expected classes") {
  LabeledOperator choi = choi_from_kraus(
      {{1, 0, 0, 1}}, {FactorLabel{'A', Port::Out, 0, 2}},
      {FactorLabel{'B', Port::In, 0, 2}});
  ProcessMatrix w_ab = channel_process(choi, Direction::AtoB, 2, 2);
  ValidityReport r = validate_process(w_ab);
  CHECK(r.pass(1e-9));
  CHECK(causal_class(w_ab) == CausalClass::AprecB);
  CHECK(std::string(to_string(causal_class(w_ab))) == "AprecB");

  LabeledOperator rho({FactorLabel{'A', Port::In, 0, 2},
                       FactorLabel{'B', Port::In, 0, 2}});
  rho.at(0, 0) = 0.5;
  rho.at(0, 3) = 0.5;
  rho.at(3, 0) = 0.5;
  rho.at(3, 3) = 0.5;
  ProcessMatrix w_state = state_process(
      rho, {FactorLabel{'A', Port::Out, 0, 2}, FactorLabel{'B', Port::Out, 0, 2}});
  CHECK(validate_process(w_state).pass(1e-9));
  CHECK(causal_class(w_state) == CausalClass::NoSignaling);
}

TEST_CASE("process constructors reject malformed inputs") {
  LabeledOperator rho({FactorLabel{'A', Port::In, 0, 2}});
  rho.at(0, 0) = 0.7;  // trace != 1
  CHECK_THROWS_AS(state_process(rho, {FactorLabel{'A', Port::Out, 0, 2}}),
                  Error);
  rho.at(1, 1) = 0.3;
  rho.at(0, 1) = 2.0;  // non-Hermitian off-diagonal
  CHECK_THROWS_AS(state_process(rho, {FactorLabel{'A', Port::Out, 0, 2}}),
                  Error);
  LabeledOperator bad_choi = choi_from_kraus(
      {{0.5, 0, 0, 0.5}}, {FactorLabel{'A', Port::Out, 0, 2}},
      {FactorLabel{'B', Port::In, 0, 2}});
  CHECK_THROWS_AS(channel_process(bad_choi, Direction::AtoB, 2, 2), Error);
}

TEST_CASE("opposite-order pair has the frozen one-way residuals") {
  auto [w_ab, w_ba] = opposite_order_pair(2);
  CHECK(validate_process(w_ab).pass(1e-9));
  CHECK(validate_process(w_ba).pass(1e-9));
  CHECK(causal_class(w_ab) == CausalClass::AprecB);
  CHECK(causal_class(w_ba) == CausalClass::BprecA);

  ProcessMatrix mix = mixture({w_ab, w_ba}, {0.5, 0.5});
  ValidityReport r = validate_process(mix);
  CHECK(r.pass(1e-9));
  CHECK(std::abs(r.trace - 4.0) <= 1e-9);
  CHECK(r.min_eig >= -1e-12);
  OrderResiduals res = order_residuals(mix);
  CHECK(res.a_prec_b == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(res.b_prec_a == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(causal_class(mix) == CausalClass::NoFixedOrder);
}

TEST_CASE("composing the order mixture with itself breaks validity") {
  auto [w_ab, w_ba] = opposite_order_pair(2);
  ProcessMatrix mix = mixture({w_ab, w_ba}, {0.5, 0.5});
  ProcessMatrix composite = tensor_compose(mix, relabel_copy(mix, 1));
  REQUIRE(composite.parties.size() == 2);
  CHECK(composite.parties[0].ins.size() == 2);

  ValidityReport r = validate_process(composite);
  CHECK(std::abs(r.trace - 16.0) <= 1e-9);
  CHECK(r.min_eig >= -1e-12);
  CHECK(r.marginal_a_residual <= 1e-12);
  CHECK(r.marginal_b_residual <= 1e-12);
  // the frozen signature of the no-go counterexample
  CHECK(r.joint_output_residual == doctest::Approx(0.0625).epsilon(1e-9));
  CHECK(r.projector_residual > 1e-3);
  CHECK_FALSE(r.pass(1e-9));

  // trace-norm magnitude of the joint-output defect
  const LabeledOperator& op = composite.op;
  Bipartition bp = bipartition_of(composite);
  LabeledOperator rhs = trace_and_replace(op, bp.b_out);
  rhs = add_scaled(rhs, cx{1, 0}, trace_and_replace(op, bp.a_out));
  std::vector<FactorLabel> both = bp.a_out;
  both.insert(both.end(), bp.b_out.begin(), bp.b_out.end());
  rhs = add_scaled(rhs, cx{-1, 0}, trace_and_replace(op, both));
  LabeledOperator diff = add_scaled(op, cx{-1, 0}, rhs);
  CHECK(trace_norm(diff) == doctest::Approx(13.5).epsilon(1e-9));
  CHECK(fro_norm(diff) ==
        doctest::Approx(3.0 * std::sqrt(2.0) / 4.0).epsilon(1e-9));
}

TEST_CASE("parallel copies and mixtures preserve validity") {
  auto [w_ab, w_ba] = opposite_order_pair(2);
  ProcessMatrix two = parallel_copies(w_ab, 2);
  CHECK(two.parties.size() == 2);
  CHECK(two.op.factors.size() == 8);
  CHECK(validate_process(two).pass(1e-9));
  CHECK(causal_class(two) == CausalClass::AprecB);

  CHECK_THROWS_AS(mixture({w_ab, w_ba}, {0.7, 0.7}), Error);
  CHECK_THROWS_AS(mixture({w_ab}, {0.5, 0.5}), Error);
  ProcessMatrix relabeled = relabel_copy(w_ba, 1);
  CHECK_THROWS_AS(mixture({w_ab, relabeled}, {0.5, 0.5}), Error);
}

TEST_CASE("unequal port dimensions keep the pair construction valid") {
  auto [w_ab, w_ba] = opposite_order_pair_dims(2, 3, 2, 2);
  CHECK(validate_process(w_ab).pass(1e-9));
  CHECK(validate_process(w_ba).pass(1e-9));
  CHECK(causal_class(w_ab) == CausalClass::AprecB);
  CHECK(causal_class(w_ba) == CausalClass::BprecA);
  ProcessMatrix mix = mixture({w_ab, w_ba}, {0.5, 0.5});
  CHECK(validate_process(mix).pass(1e-9));
  CHECK(causal_class(mix) == CausalClass::NoFixedOrder);
}
