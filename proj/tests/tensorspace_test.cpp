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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "procmat/kernels.hpp"
#include "procmat/operator.hpp"
#include "procmat/rng.hpp"
#include "support/oracles.hpp"

using namespace procmat;

namespace {

std::vector<FactorLabel> abc_factors() {
  return {FactorLabel{'A', Port::In, 0, 2}, FactorLabel{'A', Port::Out, 0, 3},
          FactorLabel{'B', Port::In, 0, 2}};
}

}  // namespace

TEST_CASE("factor labels print and sort canonically") {
  FactorLabel ai{'A', Port::In, 0, 2}, ao{'A', Port::Out, 0, 2};
  FactorLabel ai1{'A', Port::In, 1, 2}, bi{'B', Port::In, 0, 2};
  CHECK(ai.name() == "A_I");
  CHECK(ao.name() == "A_O");
  CHECK(ai1.name() == "A'_I");
  CHECK(bi.name() == "B_I");
  CHECK(canonical_less(ai, ao));
  CHECK(canonical_less(ao, ai1));   // copy outranks port direction
  CHECK(canonical_less(ai1, bi));   // party outranks copy
  std::vector<FactorLabel> fs{bi, ai1, ao, ai};
  auto sorted = canonical_order(fs);
  CHECK(sorted[0].name() == "A_I");
  CHECK(sorted[1].name() == "A_O");
  CHECK(sorted[2].name() == "A'_I");
  CHECK(sorted[3].name() == "B_I");
}

TEST_CASE("operator construction guards total dimension and duplicates") {
  std::vector<FactorLabel> big;
  for (int c = 0; c < 11; ++c) big.push_back(FactorLabel{'A', Port::In, c, 2});
  CHECK_THROWS_AS(LabeledOperator{big}, Error);  // 2^11 > 1024
  std::vector<FactorLabel> dup{FactorLabel{'A', Port::In, 0, 2},
                               FactorLabel{'A', Port::In, 0, 3}};
  CHECK_THROWS_AS(LabeledOperator{dup}, Error);
}

TEST_CASE("reorder_factors matches the naive oracle and is an involution") {
  Rng rng(10);
  LabeledOperator w = random_hermitian(rng, abc_factors());
  std::vector<FactorLabel> perm{w.factors[2], w.factors[0], w.factors[1]};
  LabeledOperator r = reorder_factors(w, perm);
  std::vector<cx> want = oracle::naive_reorder(w, perm);
  CHECK(kernels::serial::max_abs_diff(r.data.data(), want.data(),
                                      want.size()) == 0.0);
  LabeledOperator back = reorder_factors(r, w.factors);
  CHECK(max_abs_diff(back, w) == 0.0);
  LabeledOperator canon = to_canonical_order(r);
  CHECK(canon.factors[0].name() == "A_I");
  CHECK(max_abs_diff(canon, w) == 0.0);
}

TEST_CASE("kron concatenates factors and multiplies traces") {
  Rng rng(11);
  LabeledOperator a = random_hermitian(
      rng, {FactorLabel{'A', Port::In, 0, 2}, FactorLabel{'A', Port::Out, 0, 2}});
  LabeledOperator b = random_hermitian(rng, {FactorLabel{'B', Port::In, 0, 3}});
  LabeledOperator k = kron(a, b);
  CHECK(k.factors.size() == 3);
  CHECK(k.dim() == 12);
  CHECK(std::abs(trace_of(k) - trace_of(a) * trace_of(b)) <= 1e-10);
  std::vector<cx> want =
      oracle::naive_kron(a.data, a.dim(), b.data, b.dim());
  CHECK(kernels::serial::max_abs_diff(k.data.data(), want.data(),
                                      want.size()) == 0.0);
}

TEST_CASE("partial_trace matches the naive oracle") {
  Rng rng(12);
  LabeledOperator w = random_hermitian(rng, abc_factors());
  for (const auto& keep : std::vector<std::vector<std::string>>{
           {"A_I", "B_I"}, {"A_O"}, {"A_I"}, {}}) {
    std::vector<FactorLabel> traced;
    std::vector<std::string> traced_names;
    for (const auto& f : w.factors) {
      bool kept = std::any_of(keep.begin(), keep.end(),
                              [&](const std::string& n) { return f.name() == n; });
      if (!kept) {
        traced.push_back(f);
        traced_names.push_back(f.name());
      }
    }
    LabeledOperator got = partial_trace(w, traced);
    std::vector<FactorLabel> kept_fs;
    std::vector<cx> want = oracle::naive_partial_trace(w, traced_names, &kept_fs);
    REQUIRE(got.data.size() == want.size());
    CHECK(kernels::serial::max_abs_diff(got.data.data(), want.data(),
                                        want.size()) <= 1e-12);
  }
  LabeledOperator full = partial_trace(w, w.factors);
  CHECK(full.factors.empty());
  CHECK(std::abs(full.data[0] - trace_of(w)) <= 1e-10);
}

TEST_CASE("trace_and_replace is an orthogonal projector") {
  Rng rng(13);
  LabeledOperator w = random_hermitian(rng, abc_factors());
  std::vector<FactorLabel> s1{w.factors[1]};            // A_O
  std::vector<FactorLabel> s2{w.factors[0], w.factors[2]};  // A_I, B_I
  LabeledOperator p1 = trace_and_replace(w, s1);
  CHECK(max_abs_diff(trace_and_replace(p1, s1), p1) <= 1e-12);  // idempotent
  // commutes across disjoint factor sets
  LabeledOperator ab = trace_and_replace(trace_and_replace(w, s1), s2);
  LabeledOperator ba = trace_and_replace(trace_and_replace(w, s2), s1);
  CHECK(max_abs_diff(ab, ba) <= 1e-12);
  // preserves trace and hermiticity
  CHECK(std::abs(trace_of(p1) - trace_of(w)) <= 1e-10);
  CHECK(hermiticity_deviation(p1) <= 1e-12);
  // self-adjoint: <P(A), B> == <A, P(B)>
  LabeledOperator v = random_hermitian(rng, abc_factors());
  cx lhs = trace_inner(trace_and_replace(w, s1), v);
  cx rhs = trace_inner(w, trace_and_replace(v, s1));
  CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("transpose is an involution and fixes the trace") {
  Rng rng(14);
  LabeledOperator w = random_hermitian(rng, abc_factors());
  LabeledOperator t = transpose_op(w);
  CHECK(max_abs_diff(transpose_op(t), w) == 0.0);
  CHECK(std::abs(trace_of(t) - trace_of(w)) <= 1e-12);
}

TEST_CASE("hermitian eigendecomposition reconstructs the operator") {
  Rng rng(15);
  LabeledOperator w = random_hermitian(rng, abc_factors());
  EigResult e = eig_hermitian(w, true);
  const std::size_t d = w.dim();
  REQUIRE(e.evals.size() == d);
  std::vector<cx> rec(d * d, cx{0, 0});
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        rec[i * d + j] +=
            e.evals[k] * e.evecs[k][i] * std::conj(e.evecs[k][j]);
  double dev = 0;
  for (std::size_t x = 0; x < d * d; ++x)
    dev = std::max(dev, std::abs(rec[x] - w.data[x]));
  CHECK(dev <= 1e-10);
  CHECK(std::is_sorted(e.evals.begin(), e.evals.end()));
}

TEST_CASE("norms and extremal eigenvalues on a known spectrum") {
  // diag(3, -1, 0) on a single qutrit factor
  LabeledOperator w({FactorLabel{'A', Port::In, 0, 3}});
  w.at(0, 0) = 3.0;
  w.at(1, 1) = -1.0;
  CHECK(op_norm(w) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(trace_norm(w) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(min_eig(w) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fro_norm(w) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(max_abs(w) == doctest::Approx(3.0));
}

TEST_CASE("add_scaled and scale combine operators") {
  Rng rng(16);
  LabeledOperator a = random_hermitian(rng, abc_factors());
  LabeledOperator b = random_hermitian(rng, abc_factors());
  LabeledOperator sum = scale(add_scaled(a, cx{-2.0, 0.0}, b), cx{0.5, 0.0});
  for (std::size_t x = 0; x < sum.data.size(); ++x)
    CHECK(std::abs(sum.data[x] - (0.5 * a.data[x] - b.data[x])) <= 1e-12);
  // mismatched factor sets are rejected
  LabeledOperator c({FactorLabel{'C', Port::In, 0, 2}});
  CHECK_THROWS_AS(add_scaled(sum, cx{1.0, 0.0}, c), Error);
}

TEST_CASE("identity operator has unit diagonal and full trace") {
  LabeledOperator id = LabeledOperator::identity(abc_factors());
  CHECK(std::abs(trace_of(id) - 12.0) <= 1e-12);
  LabeledOperator unit = LabeledOperator::identity(std::vector<FactorLabel>{});
  CHECK(unit.dim() == 1);
  CHECK(max_abs_diff(kron(id, unit), id) == 0.0);
}
