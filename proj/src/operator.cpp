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

#include "procmat/operator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "procmat/kernels.hpp"

namespace procmat {

//==========================================================================
// FactorLabel
//==========================================================================

std::string FactorLabel::name() const {
  std::string s(1, party);
  for (int i = 0; i < copy; ++i) s += '\'';
  s += '_';
  s += (port == Port::In) ? 'I' : 'O';
  return s;
}

bool canonical_less(const FactorLabel& a, const FactorLabel& b) {
  if (a.party != b.party) return a.party < b.party;
  if (a.copy != b.copy) return a.copy < b.copy;
  return a.port == Port::In && b.port == Port::Out;
}

std::vector<FactorLabel> canonical_order(std::vector<FactorLabel> fs) {
  std::stable_sort(fs.begin(), fs.end(), canonical_less);
  return fs;
}

int checked_product_dim(const std::vector<FactorLabel>& fs) {
  long long d = 1;
  for (const auto& f : fs) {
    if (f.dim < 1) throw Error("factor " + f.name() + " has dimension < 1");
    d *= f.dim;
    if (d > kMaxTotalDim)
      throw Error("total dimension exceeds the dense-storage guard of " +
                  std::to_string(kMaxTotalDim));
  }
  return static_cast<int>(d);
}

int find_factor(const std::vector<FactorLabel>& fs, const FactorLabel& f) {
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (fs[i].same_id(f)) return static_cast<int>(i);
  return -1;
}

void check_no_duplicates(const std::vector<FactorLabel>& fs) {
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      if (fs[i].same_id(fs[j]))
        throw Error("duplicate factor label " + fs[i].name());
}

std::vector<FactorLabel> with_copy(std::vector<FactorLabel> fs, int copy) {
  for (auto& f : fs) f.copy = copy;
  return fs;
}

//==========================================================================
// LabeledOperator
//==========================================================================

LabeledOperator::LabeledOperator(std::vector<FactorLabel> fs)
    : factors(std::move(fs)) {
  check_no_duplicates(factors);
  dim_ = checked_product_dim(factors);
  data.assign(static_cast<std::size_t>(dim_) * dim_, cx{0.0, 0.0});
}

LabeledOperator LabeledOperator::identity(std::vector<FactorLabel> fs) {
  LabeledOperator op(std::move(fs));
  for (int i = 0; i < op.dim_; ++i) op.at(i, i) = 1.0;
  return op;
}

std::string LabeledOperator::factor_names() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << ' ';
    os << factors[i].name() << '(' << factors[i].dim << ')';
  }
  return os.str();
}

//==========================================================================
// Index helpers
//==========================================================================

namespace {

// stride[i] = product of dims of factors after i (row-major mixed radix).
std::vector<std::size_t> strides_of(const std::vector<FactorLabel>& fs) {
  std::vector<std::size_t> s(fs.size(), 1);
  for (int i = static_cast<int>(fs.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * static_cast<std::size_t>(fs[i + 1].dim);
  return s;
}

// Embedding map for a subset of factor positions: enumerate all mixed-radix
// tuples over the subset and return their contributions to the full index.
std::vector<std::size_t> embed_map(const std::vector<FactorLabel>& fs,
                                   const std::vector<std::size_t>& strides,
                                   const std::vector<int>& positions) {
  std::size_t n = 1;
  for (int p : positions) n *= static_cast<std::size_t>(fs[p].dim);
  std::vector<std::size_t> map(n, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx, acc = 0;
    for (int k = static_cast<int>(positions.size()) - 1; k >= 0; --k) {
      const int p = positions[k];
      const std::size_t d = static_cast<std::size_t>(fs[p].dim);
      acc += (rest % d) * strides[p];
      rest /= d;
    }
    map[idx] = acc;
  }
  return map;
}

// Positions of the given labels inside fs; throws on unknown or duplicate.
std::vector<int> positions_of(const std::vector<FactorLabel>& fs,
                              const std::vector<FactorLabel>& labels,
                              const char* what) {
  check_no_duplicates(labels);
  std::vector<int> pos;
  pos.reserve(labels.size());
  for (const auto& l : labels) {
    const int p = find_factor(fs, l);
    if (p < 0)
      throw Error(std::string(what) + ": factor " + l.name() +
                  " not present in operator");
    if (l.dim != fs[p].dim)
      throw Error(std::string(what) + ": factor " + l.name() +
                  " dimension mismatch");
    pos.push_back(p);
  }
  return pos;
}

LabeledOperator align_to(const LabeledOperator& ref,
                         const LabeledOperator& other, const char* what) {
  if (ref.factors.size() != other.factors.size())
    throw Error(std::string(what) + ": factor lists differ (" +
                ref.factor_names() + " vs " + other.factor_names() + ")");
  for (std::size_t i = 0; i < ref.factors.size(); ++i)
    if (!(ref.factors[i] == other.factors[i]))
      return reorder_factors(other, ref.factors);
  return other;
}

}  // namespace

//==========================================================================
// Operations
//==========================================================================

LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b) {
  std::vector<FactorLabel> fs = a.factors;
  fs.insert(fs.end(), b.factors.begin(), b.factors.end());
  LabeledOperator out(std::move(fs));  // checks collisions and the guard
  kernels::kron2(a.data.data(), static_cast<std::size_t>(a.dim()),
                 b.data.data(), static_cast<std::size_t>(b.dim()),
                 out.data.data());
  return out;
}

LabeledOperator reorder_factors(const LabeledOperator& op,
                                const std::vector<FactorLabel>& order) {
  if (order.size() != op.factors.size())
    throw Error("reorder_factors: order is not a permutation of the factors");
  const auto pos = positions_of(op.factors, order, "reorder_factors");
  // positions_of rejects duplicates, so equal size means a bijection.
  const auto strides = strides_of(op.factors);
  const std::size_t D = static_cast<std::size_t>(op.dim());
  std::vector<std::size_t> map = embed_map(op.factors, strides, pos);
  LabeledOperator out(order);
  kernels::gather(op.data.data(), out.data.data(), D, map);
  return out;
}

LabeledOperator to_canonical_order(const LabeledOperator& op) {
  auto order = canonical_order(op.factors);
  return reorder_factors(op, order);
}

LabeledOperator partial_trace(const LabeledOperator& op,
                              const std::vector<FactorLabel>& traced) {
  const auto tpos = positions_of(op.factors, traced, "partial_trace");
  std::vector<char> is_traced(op.factors.size(), 0);
  for (int p : tpos) is_traced[p] = 1;
  std::vector<int> kpos;
  std::vector<FactorLabel> kept;
  for (std::size_t i = 0; i < op.factors.size(); ++i)
    if (!is_traced[i]) {
      kpos.push_back(static_cast<int>(i));
      kept.push_back(op.factors[i]);
    }
  const auto strides = strides_of(op.factors);
  const auto kmap = embed_map(op.factors, strides, kpos);
  const auto tmap = embed_map(op.factors, strides,
                              std::vector<int>(tpos.begin(), tpos.end()));
  LabeledOperator out(kept);
  kernels::partial_trace(op.data.data(), static_cast<std::size_t>(op.dim()),
                         out.data.data(), kmap, tmap);
  return out;
}

LabeledOperator trace_and_replace(const LabeledOperator& op,
                                  const std::vector<FactorLabel>& replaced) {
  if (replaced.empty()) return op;
  LabeledOperator reduced = partial_trace(op, replaced);
  // Identity on the replaced factors, normalized by their dimension.
  std::vector<FactorLabel> rep;
  for (const auto& l : replaced) rep.push_back(op.factors[static_cast<std::size_t>(
      find_factor(op.factors, l))]);
  LabeledOperator id = LabeledOperator::identity(rep);
  const double dX = static_cast<double>(id.dim());
  for (auto& v : id.data) v /= dX;
  LabeledOperator prod = kron(reduced, id);
  return reorder_factors(prod, op.factors);
}

LabeledOperator transpose_op(const LabeledOperator& op) {
  LabeledOperator out(op.factors);
  const int D = op.dim();
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) out.at(r, c) = op.at(c, r);
  return out;
}

cx trace_of(const LabeledOperator& op) {
  cx t = 0.0;
  for (int i = 0; i < op.dim(); ++i) t += op.at(i, i);
  return t;
}

cx trace_inner(const LabeledOperator& a, const LabeledOperator& b) {
  const LabeledOperator bb = align_to(a, b, "trace_inner");
  return kernels::dot_conj(a.data.data(), bb.data.data(), a.data.size());
}

double max_abs(const LabeledOperator& op) {
  return kernels::max_abs_diff(op.data.data(), nullptr, op.data.size());
}

double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b) {
  const LabeledOperator bb = align_to(a, b, "max_abs_diff");
  return kernels::max_abs_diff(a.data.data(), bb.data.data(), a.data.size());
}

double fro_norm(const LabeledOperator& op) {
  double s = 0.0;
  for (const auto& v : op.data) s += std::norm(v);
  return std::sqrt(s);
}

double hermiticity_deviation(const LabeledOperator& op) {
  double m = 0.0;
  const int D = op.dim();
  for (int r = 0; r < D; ++r)
    for (int c = r; c < D; ++c)
      m = std::max(m, std::abs(op.at(r, c) - std::conj(op.at(c, r))));
  return m;
}

LabeledOperator add_scaled(const LabeledOperator& a, cx s,
                           const LabeledOperator& b) {
  const LabeledOperator bb = align_to(a, b, "add_scaled");
  LabeledOperator out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += s * bb.data[i];
  return out;
}

LabeledOperator scale(const LabeledOperator& a, cx s) {
  LabeledOperator out = a;
  for (auto& v : out.data) v *= s;
  return out;
}

//==========================================================================
// Eigendecomposition (Eigen-backed)
//==========================================================================

namespace {

using EMat =
    Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMat require_hermitian(const LabeledOperator& op, double herm_tol,
                       const char* what) {
  const double dev = hermiticity_deviation(op);
  if (!(dev <= herm_tol)) {
    std::ostringstream os;
    os << what << ": operator is not Hermitian (deviation " << dev
       << " > tolerance " << herm_tol << ")";
    throw Error(os.str());
  }
  const int D = op.dim();
  Eigen::Map<const EMat> m(op.data.data(), D, D);
  // Symmetrize away the sub-tolerance asymmetry before factorizing.
  return 0.5 * (m + m.adjoint().eval());
}

}  // namespace

EigResult eig_hermitian(const LabeledOperator& op, double herm_tol) {
  const EMat m = require_hermitian(op, herm_tol, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<EMat> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error("eig_hermitian: eigensolver failed to converge");
  const int D = op.dim();
  EigResult res;
  res.evals.assign(solver.eigenvalues().data(),
                   solver.eigenvalues().data() + D);
  res.evecs.resize(static_cast<std::size_t>(D));
  for (int i = 0; i < D; ++i) {
    res.evecs[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(D));
    for (int r = 0; r < D; ++r)
      res.evecs[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] =
          solver.eigenvectors()(r, i);
  }
  // Self-check the factorization residual against the input scale.
  const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = 0; i < D; ++i) {
    Eigen::VectorXcd v = solver.eigenvectors().col(i);
    const double resid = (m * v - res.evals[static_cast<std::size_t>(i)] * v)
                             .cwiseAbs()
                             .maxCoeff();
    if (resid > 1e-10 * scale)
      throw Error("eig_hermitian: factorization residual check failed");
  }
  return res;
}

double op_norm(const LabeledOperator& op, double herm_tol) {
  const EMat m = require_hermitian(op, herm_tol, "op_norm");
  Eigen::SelfAdjointEigenSolver<EMat> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double trace_norm(const LabeledOperator& op, double herm_tol) {
  const EMat m = require_hermitian(op, herm_tol, "trace_norm");
  Eigen::SelfAdjointEigenSolver<EMat> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double min_eig(const LabeledOperator& op, double herm_tol) {
  const EMat m = require_hermitian(op, herm_tol, "min_eig");
  Eigen::SelfAdjointEigenSolver<EMat> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace procmat
