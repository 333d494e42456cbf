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
#include <vector>

#include "doctest.h"
#include "procmat/instruments.hpp"
#include "procmat/processes.hpp"
#include "procmat/rng.hpp"
#include "support/oracles.hpp"

using namespace procmat;

namespace {

const FactorLabel kAI{'A', Port::In, 0, 2};
const FactorLabel kAO{'A', Port::Out, 0, 2};
const FactorLabel kBI{'B', Port::In, 0, 2};
const FactorLabel kBO{'B', Port::Out, 0, 2};

std::vector<cx> ket_density(int k, int d) {
  std::vector<cx> rho(static_cast<std::size_t>(d) * d, cx{0, 0});
  rho[static_cast<std::size_t>(k) * d + k] = 1.0;
  return rho;
}

LabeledOperator identity_channel_choi() {
  return choi_from_kraus({{1, 0, 0, 1}}, {kAO}, {kBI});
}

}  // namespace

TEST_CASE("choi_from_kraus of the identity is the unnormalized Bell state") {
  LabeledOperator m = choi_from_kraus({{1, 0, 0, 1}}, {kAI}, {kAO});
  REQUIRE(m.dim() == 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          cx want = (a == i && b == j) ? cx{1, 0} : cx{0, 0};
          CHECK(std::abs(m.at(i * 2 + a, j * 2 + b) - want) <= 1e-15);
        }
  CHECK(std::abs(trace_of(m) - 2.0) <= 1e-15);
  CHECK_THROWS_AS(choi_from_kraus({{1, 0, 0}}, {kAI}, {kAO}), Error);
}

TEST_CASE("deterministic instrument constructors validate cleanly") {
  std::vector<Instrument> insts;
  insts.push_back(trace_instrument('A', {kAI}, {kAO}));
  insts.push_back(prepare_instrument('A', {kAI}, {kAO}, ket_density(0, 2)));
  insts.push_back(channel_instrument('A', {kAI}, {kAO}, {{0, 1, 1, 0}}));
  insts.push_back(measure_instrument(
      'A', {kAI}, {kAO}, {ket_density(0, 2), ket_density(1, 2)},
      ket_density(0, 2)));
  for (const auto& ins : insts) {
    InstrumentReport rep = validate_instrument(ins);
    CHECK(rep.pass(1e-9));
    CHECK(rep.worst_min_eig() >= -1e-12);
    CHECK(rep.worst_tp_residual() <= 1e-12);
  }
}

TEST_CASE("trace-preservation residual reflects the scaling of the map") {
  Instrument ins = prepare_instrument('A', {kAI}, {kAO}, ket_density(0, 2));
  ins.elements[0].choi = scale(ins.elements[0].choi, cx{1.5, 0.0});
  InstrumentReport rep = validate_instrument(ins);
  // Tr_out of the scaled element is 1.5 I on a qubit input
  CHECK(rep.worst_tp_residual() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(rep.pass(1e-9));
}

TEST_CASE("complete-positivity violations are reported per element") {
  Instrument ins = channel_instrument('A', {kAI}, {kAO}, {{1, 0, 0, 1}});
  LabeledOperator bad(ins.elements[0].choi.factors);
  bad.at(0, 0) = 1.0;
  bad.at(1, 1) = 1.0;
  bad.at(2, 2) = 1.0;
  bad.at(3, 3) = -0.1;
  ins.elements[0].choi = bad;
  InstrumentReport rep = validate_instrument(ins);
  CHECK(rep.worst_min_eig() == doctest::Approx(-0.1).epsilon(1e-9));
  CHECK_FALSE(rep.pass(1e-9));
}

TEST_CASE("sampled instruments are valid and guard impossible shapes") {
  Rng rng(77);
  for (int outcomes : {1, 2}) {
    for (int settings : {1, 2}) {
      Instrument ins =
          sample_instrument(rng, 'A', {kAI}, {kAO}, outcomes, settings);
      CHECK(ins.n_settings() == settings);
      CHECK(validate_instrument(ins).pass(1e-9));
    }
  }
  // a qutrit cannot go through a one-dimensional outcome-free qubit output
  FactorLabel trit{'A', Port::In, 0, 3};
  FactorLabel unit{'A', Port::Out, 0, 1};
  CHECK_THROWS_AS(sample_instrument(rng, 'A', {trit}, {unit}, 1, 1), Error);
}

TEST_CASE("born probability uses the untransposed state slot") {
  // The state |+i> distinguishes the two transpose conventions: the correct
  // pairing gives Tr(rho E) = 1 for E = rho, the transposed one gives 0.
  std::vector<cx> plus_i{cx{0.5, 0}, cx{0, -0.5}, cx{0, 0.5}, cx{0.5, 0}};
  LabeledOperator rho({kAI});
  rho.data = plus_i;
  ProcessMatrix w = state_process(rho, {kAO});
  Instrument meas = measure_instrument(
      'A', {kAI}, {kAO}, {plus_i, [] {
        std::vector<cx> c{cx{0.5, 0}, cx{0, 0.5}, cx{0, -0.5}, cx{0.5, 0}};
        return c;
      }()},
      ket_density(0, 2));
  double p0 = born_probability(w.op, {&meas.element(0, 0).choi});
  double p1 = born_probability(w.op, {&meas.element(1, 0).choi});
  CHECK(p0 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p1 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("born probability agrees with the naive oracle on random input") {
  Rng rng(78);
  ProcessMatrix base = opposite_order_pair(2).first;
  Instrument alice = sample_instrument(rng, 'A', {kAI}, {kAO}, 2, 1);
  Instrument bob = sample_instrument(rng, 'B', {kBI}, {kBO}, 2, 1);
  double total = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const LabeledOperator& ma = alice.element(a, 0).choi;
      const LabeledOperator& mb = bob.element(b, 0).choi;
      double got = born_probability(base.op, {&ma, &mb});
      double want = oracle::naive_born(base.op, {&ma, &mb});
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
      CHECK(got >= -1e-10);
      total += got;
    }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  // mismatched coverage of the process factors is rejected
  const LabeledOperator& ma = alice.element(0, 0).choi;
  CHECK_THROWS_AS(born_probability(base.op, {&ma}), Error);
}

TEST_CASE("probability tables are normalized and expose signaling") {
  LabeledOperator choi = identity_channel_choi();
  ProcessMatrix w = channel_process(choi, Direction::AtoB, 2, 2);

  Instrument alice = prepare_instrument('A', {kAI}, {kAO}, ket_density(0, 2));
  Instrument send1 = prepare_instrument('A', {kAI}, {kAO}, ket_density(1, 2));
  send1.elements[0].setting = 1;
  alice.elements.push_back(send1.elements[0]);

  Instrument bob = measure_instrument(
      'B', {kBI}, {kBO}, {ket_density(0, 2), ket_density(1, 2)},
      ket_density(0, 2));

  ProbabilityTable table = probability_table(w.op, alice, bob);
  CHECK(table.max_sum_deviation() <= 1e-9);
  // Bob reads Alice's preparation through the identity channel
  CHECK(table.cells[0][0][0].p == doctest::Approx(1.0).epsilon(1e-9));
  SignalingReport sig = signaling_deficit(table);
  CHECK(sig.alice_to_bob == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sig.bob_to_alice <= 1e-9);
}
