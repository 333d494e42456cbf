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

#include "procmat/rng.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace procmat {

std::uint64_t Rng::next_u64() {
  // splitmix64 (Steele, Lea, Flood 2014); public-domain reference constants.
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cx Rng::cgaussian() {
  const double re = gaussian();
  return {re, gaussian()};
}

std::vector<cx> haar_isometry(Rng& rng, int rows, int cols) {
  if (rows < cols) throw Error("haar_isometry: need rows >= cols");
  using EMat = Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic>;
  EMat g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = rng.cgaussian();
  Eigen::HouseholderQR<EMat> qr(g);
  EMat q = qr.householderQ() * EMat::Identity(rows, cols);
  EMat rmat = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  // Phase fix so the distribution is Haar rather than QR-convention biased.
  for (int c = 0; c < cols; ++c) {
    const cx d = rmat(c, c);
    const double a = std::abs(d);
    if (a > 0) q.col(c) *= d / a;
  }
  std::vector<cx> out(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      out[static_cast<std::size_t>(r) * cols + c] = q(r, c);
  return out;
}

LabeledOperator random_hermitian(Rng& rng, std::vector<FactorLabel> fs) {
  LabeledOperator op(std::move(fs));
  const int D = op.dim();
  for (int r = 0; r < D; ++r) {
    op.at(r, r) = rng.gaussian();
    for (int c = r + 1; c < D; ++c) {
      const cx v = rng.cgaussian();
      op.at(r, c) = v;
      op.at(c, r) = std::conj(v);
    }
  }
  return op;
}

std::vector<cx> random_density(Rng& rng, int d) {
  std::vector<cx> v(static_cast<std::size_t>(d) * d);
  for (auto& x : v) x = rng.cgaussian();
  std::vector<cx> rho(static_cast<std::size_t>(d) * d, cx{0.0, 0.0});
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      cx acc = 0.0;
      for (int k = 0; k < d; ++k)
        acc += v[static_cast<std::size_t>(r) * d + k] *
               std::conj(v[static_cast<std::size_t>(c) * d + k]);
      rho[static_cast<std::size_t>(r) * d + c] = acc;
    }
  cx tr = 0.0;
  for (int i = 0; i < d; ++i) tr += rho[static_cast<std::size_t>(i) * d + i];
  for (auto& x : rho) x /= tr.real();
  return rho;
}

}  // namespace procmat
