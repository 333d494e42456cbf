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
#include <set>
#include <vector>

#include "doctest.h"
#include "procmat/basis.hpp"
#include "procmat/processes.hpp"
#include "procmat/rng.hpp"
#include "support/oracles.hpp"

using namespace procmat;

namespace {

double eigvec_residual(const GellMannElement& g, int q) {
  const int d = g.d;
  double dev = 0;
  for (int r = 0; r < d; ++r) {
    cx mv = 0;
    for (int c = 0; c < d; ++c)
      mv += g.mat[static_cast<std::size_t>(r) * d + c] * g.evecs[q][c];
    dev = std::max(dev, std::abs(mv - g.evals[q] * g.evecs[q][r]));
  }
  return dev;
}

Bipartition bipartition_from(const PtiBasis& b) {
  return Bipartition{b.parties[0].ins, b.parties[0].outs, b.parties[1].ins,
                     b.parties[1].outs};
}

// max over elements of the projector-fixed-point residual, and of the
// smaller of the two one-way ordering residuals
std::pair<double, double> exhaustive_residuals(const PtiBasis& b) {
  Bipartition bp = bipartition_from(b);
  double fixed = 0, one_way = 0;
  for (const auto& e : b.elements) {
    fixed = std::max(fixed, max_abs_diff(project_LV(e.op, bp), e.op));
    double r_ab = max_abs_diff(trace_and_replace(e.op, bp.b_out), e.op);
    double r_ba = max_abs_diff(trace_and_replace(e.op, bp.a_out), e.op);
    one_way = std::max(one_way, std::min(r_ab, r_ba));
  }
  return {fixed, one_way};
}

}  // namespace

TEST_CASE("qubit operator basis reproduces the Pauli matrices") {
  auto gs = gellmann_basis(2);
  REQUIRE(gs.size() == 4);
  CHECK(gs[0].name() == "I");
  CHECK(gs[1].name() == "Z1");
  CHECK(gs[2].name() == "X12");
  CHECK(gs[3].name() == "Y12");
  CHECK(std::abs(gs[1].mat[0] - cx{1, 0}) <= 1e-15);
  CHECK(std::abs(gs[1].mat[3] - cx{-1, 0}) <= 1e-15);
  CHECK(std::abs(gs[2].mat[1] - cx{1, 0}) <= 1e-15);
  CHECK(std::abs(gs[2].mat[2] - cx{1, 0}) <= 1e-15);
  // the antisymmetric element carries the sign of i|1><2| - i|2><1|
  CHECK(std::abs(gs[3].mat[1] - cx{0, 1}) <= 1e-15);
  CHECK(std::abs(gs[3].mat[2] - cx{0, -1}) <= 1e-15);
}

TEST_CASE("operator bases are Hermitian with analytic spectra in {-1,0,1}") {
  for (int d : {2, 3, 4}) {
    auto gs = gellmann_basis(d);
    REQUIRE(static_cast<int>(gs.size()) == d * d);
    for (const auto& g : gs) {
      REQUIRE(static_cast<int>(g.evals.size()) == d);
      REQUIRE(static_cast<int>(g.evecs.size()) == d);
      for (int q = 0; q < d; ++q) {
        CHECK(std::abs(g.evals[q] - std::round(g.evals[q])) <= 1e-15);
        CHECK(std::abs(g.evals[q]) <= 1.0 + 1e-15);
        CHECK(eigvec_residual(g, q) <= 1e-12);
        // orthonormal eigenvector system
        for (int r = 0; r <= q; ++r) {
          cx ip = 0;
          for (int c = 0; c < d; ++c)
            ip += std::conj(g.evecs[q][c]) * g.evecs[r][c];
          CHECK(std::abs(ip - (q == r ? cx{1, 0} : cx{0, 0})) <= 1e-12);
        }
      }
      // Hermiticity of the matrix itself
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          CHECK(std::abs(g.mat[static_cast<std::size_t>(r) * d + c] -
                         std::conj(g.mat[static_cast<std::size_t>(c) * d + r])) <=
                1e-15);
      if (g.traceless()) {
        cx tr = 0;
        for (int r = 0; r < d; ++r) tr += g.mat[static_cast<std::size_t>(r) * d + r];
        CHECK(std::abs(tr) <= 1e-15);
      }
    }
  }
}

TEST_CASE("pairwise overlaps form the expected Gram pattern") {
  const int d = 4;
  auto gs = gellmann_basis(d);
  auto overlap = [&](const GellMannElement& a, const GellMannElement& b) {
    cx s = 0;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        s += std::conj(a.mat[static_cast<std::size_t>(r) * d + c]) *
             b.mat[static_cast<std::size_t>(r) * d + c];
    return s;
  };
  // X and Y elements are orthogonal to everything else, with norm^2 = 2
  for (std::size_t p = 0; p < gs.size(); ++p)
    for (std::size_t q = 0; q < p; ++q) {
      cx o = overlap(gs[p], gs[q]);
      bool both_z = gs[p].kind == GellMannElement::Kind::Z &&
                    gs[q].kind == GellMannElement::Kind::Z;
      if (both_z) {
        int want = std::abs(gs[p].i - gs[q].i) == 1 ? -1 : 0;
        CHECK(std::abs(o - cx{static_cast<double>(want), 0}) <= 1e-12);
      } else {
        CHECK(std::abs(o) <= 1e-12);
      }
    }
  for (const auto& g : gs)
    if (g.kind != GellMannElement::Kind::I)
      CHECK(std::abs(overlap(g, g) - cx{2, 0}) <= 1e-12);
}

TEST_CASE("product basis counts match the census and the numeric rank") {
  PtiBasis b = pti_basis({2, 2, 2, 2});
  CHECK(b.total_products == 256);
  CHECK(b.elements.size() == 88);
  CHECK(predicted_count({2, 2, 2, 2}) == 88);
  CHECK(oracle::signature_census({2, 2, 2, 2}) == 88);
  CHECK(projector_rank_trace({2, 2, 2, 2}) == doctest::Approx(88.0).epsilon(1e-9));
  CHECK(oracle::numeric_projector_rank({2, 2, 2, 2}) == 88);

  PtiBasis b3 = pti_basis({3, 2, 2, 2});
  CHECK(b3.elements.size() == 213);
  CHECK(predicted_count({3, 2, 2, 2}) == 213);
  CHECK(oracle::signature_census({3, 2, 2, 2}) == 213);
  CHECK(projector_rank_trace({3, 2, 2, 2}) ==
        doctest::Approx(213.0).epsilon(1e-9));

  CHECK(predicted_count({4, 2, 2, 2}) == 388);
  CHECK(oracle::signature_census({4, 2, 2, 2}) == 388);

  PtiBasis s = pti_basis_single(2, 2);
  CHECK(s.elements.size() == 4);
  CHECK(s.total_products == 16);
  CHECK_THROWS_AS(pti_basis({2, 2, 2, 1}), Error);
}

TEST_CASE("every kept product is a projector fixed point with one-way order") {
  for (const std::vector<int> dims :
       {std::vector<int>{2, 2, 2, 2}, std::vector<int>{3, 2, 2, 2}}) {
    PtiBasis b = pti_basis(dims);
    auto [fixed, one_way] = exhaustive_residuals(b);
    CHECK(fixed <= 1e-9);
    CHECK(one_way <= 1e-9);
  }
}

TEST_CASE("signatures recorded on elements are the allowed ones") {
  PtiBasis b = pti_basis({2, 2, 2, 2});
  std::set<std::vector<int>> seen;
  for (const auto& e : b.elements) seen.insert(e.signature);
  // ports are indexed A_I=0, A_O=1, B_I=2, B_O=3
  std::set<std::vector<int>> want{{},        {0},       {2},       {0, 2},
                                  {1, 2},    {0, 1, 2}, {0, 3},    {0, 2, 3}};
  CHECK(seen == want);
}

TEST_CASE("product eigensystem matches a direct matrix action") {
  Rng rng(40);
  PtiBasis b = pti_basis({3, 2, 2, 2});
  const int n_ports = static_cast<int>(b.ports.size());
  for (int t = 0; t < 30; ++t) {
    const PtiElement& e =
        b.elements[rng.next_u64() % b.elements.size()];
    std::vector<int> slots(n_ports);
    for (int p = 0; p < n_ports; ++p)
      slots[p] = static_cast<int>(rng.next_u64() %
                                  static_cast<std::size_t>(b.ports[p].dim));
    double lam = b.product_eval(e, slots);
    std::vector<cx> v = b.product_evec(e, slots);
    const std::size_t D = e.op.dim();
    REQUIRE(v.size() == D);
    double dev = 0;
    for (std::size_t r = 0; r < D; ++r) {
      cx mv = 0;
      for (std::size_t c = 0; c < D; ++c) mv += e.op.data[r * D + c] * v[c];
      dev = std::max(dev, std::abs(mv - lam * v[r]));
    }
    CHECK(dev <= 1e-12);
    CHECK(std::abs(lam - std::round(lam)) <= 1e-15);
    CHECK(std::abs(lam) <= 1.0 + 1e-15);
  }
}

TEST_CASE("the basis frame inverts overlaps and flags off-span input") {
  PtiBasis b = pti_basis({2, 2, 2, 2});
  BasisFrame frame(b);
  // each element's own coordinates are a unit vector
  for (std::size_t k = 0; k < b.elements.size(); k += 17) {
    std::vector<double> x = frame.coordinates(b.elements[k].op, 1e-9);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(std::abs(x[i] - (i == k ? 1.0 : 0.0)) <= 1e-9);
  }
  // random in-span operators round-trip through coordinates
  Rng rng(41);
  std::vector<double> mix(b.elements.size());
  for (auto& c : mix) c = rng.gaussian();
  LabeledOperator v = frame.materialize(mix);
  std::vector<double> back = frame.coordinates(v, 1e-9);
  for (std::size_t i = 0; i < mix.size(); ++i)
    CHECK(std::abs(back[i] - mix[i]) <= 1e-8);

  // a product with a forbidden signature is outside the span
  auto gs = gellmann_basis(2);
  LabeledOperator z_ao({b.ports[1]});
  z_ao.data = gs[1].mat;
  LabeledOperator off = kron(LabeledOperator::identity({b.ports[0]}), z_ao);
  off = kron(off, LabeledOperator::identity({b.ports[2], b.ports[3]}));
  off = to_canonical_order(off);
  CHECK_THROWS_AS(frame.coordinates(off, 1e-9), Error);
  double residual = 0;
  frame.coordinates_lenient(off, &residual);
  CHECK(residual > 1e-3);
}
