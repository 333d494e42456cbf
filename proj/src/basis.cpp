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

#include "procmat/basis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace procmat {

//==========================================================================
// Generalized Gell-Mann elements
//==========================================================================

std::string GellMannElement::name() const {
  switch (kind) {
    case Kind::I: return "I";
    case Kind::Z: return "Z" + std::to_string(i);
    case Kind::X: return "X" + std::to_string(i) + std::to_string(j);
    case Kind::Y: return "Y" + std::to_string(i) + std::to_string(j);
  }
  return "?";
}

namespace {

std::vector<cx> unit_vec(int d, int q) {
  std::vector<cx> v(d, cx(0, 0));
  v[static_cast<std::size_t>(q)] = 1;
  return v;
}

GellMannElement blank(GellMannElement::Kind kind, int i, int j, int d) {
  GellMannElement e;
  e.kind = kind;
  e.i = i;
  e.j = j;
  e.d = d;
  e.mat.assign(static_cast<std::size_t>(d) * d, cx(0, 0));
  e.evals.assign(static_cast<std::size_t>(d), 0.0);
  e.evecs.resize(static_cast<std::size_t>(d));
  for (int q = 0; q < d; ++q) e.evecs[q] = unit_vec(d, q);
  return e;
}

}  // namespace

std::vector<GellMannElement> gellmann_basis(int d) {
  if (d < 2) throw Error("gellmann_basis: need dimension >= 2");
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<GellMannElement> out;

  GellMannElement id = blank(GellMannElement::Kind::I, 0, 0, d);
  for (int q = 0; q < d; ++q) {
    id.mat[static_cast<std::size_t>(q) * d + q] = 1;
    id.evals[q] = 1.0;
  }
  out.push_back(std::move(id));

  for (int i = 1; i <= d - 1; ++i) {
    GellMannElement z = blank(GellMannElement::Kind::Z, i, 0, d);
    z.mat[static_cast<std::size_t>(i - 1) * d + (i - 1)] = 1;
    z.mat[static_cast<std::size_t>(i) * d + i] = -1;
    z.evals[i - 1] = 1.0;
    z.evals[i] = -1.0;
    out.push_back(std::move(z));
  }

  for (int j = 1; j <= d; ++j)
    for (int k = j + 1; k <= d; ++k) {
      GellMannElement x = blank(GellMannElement::Kind::X, j, k, d);
      x.mat[static_cast<std::size_t>(j - 1) * d + (k - 1)] = 1;
      x.mat[static_cast<std::size_t>(k - 1) * d + (j - 1)] = 1;
      x.evals[j - 1] = 1.0;
      x.evals[k - 1] = -1.0;
      // (|j> +- |k>) / sqrt(2), anchored at slots j-1 and k-1.
      x.evecs[j - 1] = unit_vec(d, j - 1);
      x.evecs[j - 1][k - 1] = s;
      x.evecs[j - 1][j - 1] = s;
      x.evecs[k - 1] = unit_vec(d, j - 1);
      x.evecs[k - 1][j - 1] = s;
      x.evecs[k - 1][k - 1] = -s;
      out.push_back(std::move(x));

      GellMannElement y = blank(GellMannElement::Kind::Y, j, k, d);
      y.mat[static_cast<std::size_t>(j - 1) * d + (k - 1)] = cx(0, 1);
      y.mat[static_cast<std::size_t>(k - 1) * d + (j - 1)] = cx(0, -1);
      y.evals[j - 1] = 1.0;
      y.evals[k - 1] = -1.0;
      // (|j> -+ i|k>) / sqrt(2).
      y.evecs[j - 1][j - 1] = s;
      y.evecs[j - 1][k - 1] = cx(0, -s);
      y.evecs[k - 1][j - 1] = s;
      y.evecs[k - 1][k - 1] = cx(0, s);
      out.push_back(std::move(y));
    }
  return out;
}

//==========================================================================
// Product basis of the valid subspace
//==========================================================================

double PtiBasis::product_eval(const PtiElement& e,
                              const std::vector<int>& slots) const {
  double v = 1.0;
  for (std::size_t p = 0; p < ports.size(); ++p)
    v *= factor(e, static_cast<int>(p)).evals[slots[p]];
  return v;
}

std::vector<cx> PtiBasis::product_evec(const PtiElement& e,
                                       const std::vector<int>& slots) const {
  std::vector<cx> acc{cx(1, 0)};
  for (std::size_t p = 0; p < ports.size(); ++p) {
    const auto& v = factor(e, static_cast<int>(p)).evecs[slots[p]];
    std::vector<cx> next(acc.size() * v.size());
    for (std::size_t a = 0; a < acc.size(); ++a)
      for (std::size_t b = 0; b < v.size(); ++b)
        next[a * v.size() + b] = acc[a] * v[b];
    acc = std::move(next);
  }
  return acc;
}

bool signature_allowed(
    const std::vector<int>& traceless_ports,
    const std::vector<std::pair<std::vector<FactorLabel>, double>>& terms,
    const std::vector<FactorLabel>& ports) {
  // A trace-and-replace term maps the product term to itself when its
  // replaced group avoids every traceless port, and to zero otherwise.
  double c = 0.0;
  for (const auto& [group, coeff] : terms) {
    bool hits = false;
    for (int p : traceless_ports) {
      for (const auto& f : group)
        if (f.same_id(ports[static_cast<std::size_t>(p)])) {
          hits = true;
          break;
        }
      if (hits) break;
    }
    if (!hits) c += coeff;
  }
  if (std::abs(c) > 1e-9 && std::abs(c - 1.0) > 1e-9)
    throw Error("signature filter: polynomial is not a projector on "
                "product terms (coefficient " + std::to_string(c) + ")");
  return std::abs(c - 1.0) <= 1e-9;
}

namespace {

PtiBasis build_pti(std::vector<FactorLabel> ports,
                   std::vector<PartyPorts> parties) {
  PtiBasis basis;
  basis.ports = std::move(ports);
  basis.parties = std::move(parties);
  for (const auto& f : basis.ports)
    basis.port_bases.push_back(gellmann_basis(f.dim));

  const auto terms = lvn_terms(basis.parties);
  const std::size_t np = basis.ports.size();
  std::vector<int> choice(np, 0);
  basis.total_products = 1;
  for (const auto& pb : basis.port_bases)
    basis.total_products *= static_cast<int>(pb.size());

  while (true) {
    std::vector<int> sig;
    for (std::size_t p = 0; p < np; ++p)
      if (choice[p] != 0) sig.push_back(static_cast<int>(p));
    if (signature_allowed(sig, terms, basis.ports)) {
      LabeledOperator op(std::vector<FactorLabel>{});
      for (std::size_t p = 0; p < np; ++p) {
        LabeledOperator f({basis.ports[p]});
        f.data = basis.port_bases[p][choice[p]].mat;
        op = p == 0 ? f : kron(op, f);
      }
      basis.elements.push_back({choice, sig, std::move(op)});
    }
    std::size_t k = np;
    while (k > 0) {
      --k;
      if (++choice[k] < static_cast<int>(basis.port_bases[k].size())) break;
      choice[k] = 0;
      if (k == 0) return basis;
    }
  }
}

}  // namespace

PtiBasis pti_basis(const std::vector<int>& port_dims, int copy) {
  if (port_dims.size() != 4)
    throw Error("pti_basis: need four port dimensions");
  for (int d : port_dims)
    if (d < 2) throw Error("pti_basis: port dimensions must be >= 2");
  auto parties = bipartite_parties(port_dims[0], port_dims[1], port_dims[2],
                                   port_dims[3], copy);
  std::vector<FactorLabel> fs = party_factors(parties);
  return build_pti(std::move(fs), std::move(parties));
}

PtiBasis pti_basis_single(int d_in, int d_out, int copy) {
  if (d_in < 2 || d_out < 2)
    throw Error("pti_basis_single: port dimensions must be >= 2");
  PartyPorts a{'A',
               {FactorLabel{'A', Port::In, copy, d_in}},
               {FactorLabel{'A', Port::Out, copy, d_out}}};
  return build_pti(party_factors({a}), {a});
}

long long predicted_count(const std::vector<int>& port_dims) {
  if (port_dims.size() != 4)
    throw Error("predicted_count: need four port dimensions");
  auto parties = bipartite_parties(port_dims[0], port_dims[1], port_dims[2],
                                   port_dims[3], 0);
  auto ports = party_factors(parties);
  const auto terms = lvn_terms(parties);
  long long total = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> sig;
    for (int p = 0; p < 4; ++p)
      if (mask & (1 << p)) sig.push_back(p);
    if (!signature_allowed(sig, terms, ports)) continue;
    long long n = 1;
    for (int p : sig) {
      const long long d = ports[static_cast<std::size_t>(p)].dim;
      n *= d * d - 1;
    }
    total += n;
  }
  return total;
}

double projector_rank_trace(const std::vector<int>& port_dims, int copy) {
  if (port_dims.size() != 4)
    throw Error("projector_rank_trace: need four port dimensions");
  auto parties = bipartite_parties(port_dims[0], port_dims[1], port_dims[2],
                                   port_dims[3], copy);
  auto ports = party_factors(parties);
  Bipartition bp{parties[0].ins, parties[0].outs, parties[1].ins,
                 parties[1].outs};
  const int D = checked_product_dim(ports);
  double tr = 0.0;
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) {
      LabeledOperator unit(ports);
      unit.at(r, c) = 1;
      tr += project_LV(unit, bp).at(r, c).real();
    }
  return tr;
}

//==========================================================================
// Coordinates
//==========================================================================

BasisFrame::BasisFrame(const PtiBasis& b) : basis(&b) {
  n = static_cast<int>(b.elements.size());
  Eigen::MatrixXd g(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      double v = trace_inner(b.elements[k].op, b.elements[l].op).real();
      g(k, l) = v;
      g(l, k) = v;
    }
  gram.assign(g.data(), g.data() + static_cast<std::size_t>(n) * n);
  Eigen::MatrixXd inv = g.ldlt().solve(Eigen::MatrixXd::Identity(n, n));
  double recon = (g * inv - Eigen::MatrixXd::Identity(n, n))
                     .cwiseAbs()
                     .maxCoeff();
  if (recon > 1e-8)
    throw Error("basis Gram matrix is numerically singular (inverse "
                "residual " + std::to_string(recon) + ")");
  gram_factor.assign(inv.data(),
                     inv.data() + static_cast<std::size_t>(n) * n);
}

std::vector<double> BasisFrame::coordinates_lenient(const LabeledOperator& v,
                                                    double* residual) const {
  Eigen::VectorXd b(n);
  for (int k = 0; k < n; ++k)
    b(k) = trace_inner(basis->elements[k].op, v).real();
  Eigen::Map<const Eigen::MatrixXd> inv(gram_factor.data(), n, n);
  Eigen::VectorXd x = inv * b;
  std::vector<double> out(x.data(), x.data() + n);
  if (residual) *residual = max_abs_diff(v, materialize(out));
  return out;
}

std::vector<double> BasisFrame::coordinates(const LabeledOperator& v,
                                            double tol) const {
  double res = 0.0;
  std::vector<double> x = coordinates_lenient(v, &res);
  if (res > tol * std::max(1.0, max_abs(v)))
    throw Error("operator is not in the basis span (residual " +
                std::to_string(res) + ")");
  return x;
}

LabeledOperator BasisFrame::materialize(const std::vector<double>& x) const {
  LabeledOperator acc(basis->elements[0].op.factors);
  for (int k = 0; k < n; ++k)
    acc = add_scaled(acc, cx(x[static_cast<std::size_t>(k)], 0),
                     basis->elements[static_cast<std::size_t>(k)].op);
  return acc;
}

}  // namespace procmat
