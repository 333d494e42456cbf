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

#include "procmat/nogo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "procmat/rng.hpp"

namespace procmat {

namespace {

constexpr int kMaxDenseFit = 4096;  // largest product family a dense fit
                                    // will materialize

std::vector<cx> matvec(const LabeledOperator& m, const std::vector<cx>& v) {
  const int d = m.dim();
  std::vector<cx> out(static_cast<std::size_t>(d), cx(0, 0));
  for (int r = 0; r < d; ++r) {
    cx acc = 0;
    for (int c = 0; c < d; ++c) acc += m.at(r, c) * v[c];
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

std::vector<cx> vec_kron(const std::vector<cx>& a, const std::vector<cx>& b) {
  std::vector<cx> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i * b.size() + j] = a[i] * b[j];
  return out;
}

double vec_max_abs_diff(const std::vector<cx>& a, const std::vector<cx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Bipartition bipartition_of_parties(const std::vector<PartyPorts>& ps) {
  if (ps.size() != 2) throw Error("expected two parties");
  return {ps[0].ins, ps[0].outs, ps[1].ins, ps[1].outs};
}

double one_way_residual(const LabeledOperator& m, const Bipartition& bp) {
  double r_ab = max_abs_diff(trace_and_replace(m, bp.b_out), m);
  double r_ba = max_abs_diff(trace_and_replace(m, bp.a_out), m);
  return std::min(r_ab, r_ba);
}

}  // namespace

//==========================================================================
// Tensor composition
//==========================================================================

ProcessMatrix tensor_compose(const ProcessMatrix& w1,
                             const ProcessMatrix& w2) {
  for (const auto& f : w1.op.factors)
    for (const auto& g : w2.op.factors)
      if (f.same_id(g))
        throw Error("tensor_compose: factor " + f.name() +
                    " appears in both processes; relabel one copy first");
  LabeledOperator op = to_canonical_order(kron(w1.op, w2.op));
  return ProcessMatrix{op, parties_from_factors(op.factors),
                       w1.normalized && w2.normalized};
}

//==========================================================================
// BilinearRule
//==========================================================================

int BilinearRule::n1() const {
  return static_cast<int>(basis1->elements.size());
}
int BilinearRule::n2() const {
  return static_cast<int>(basis2->elements.size());
}

std::vector<double> BilinearRule::pair_coeff(int i, int j) const {
  const std::size_t nn = static_cast<std::size_t>(n1()) * n2();
  std::vector<double> row(nn, 0.0);
  const std::size_t r = static_cast<std::size_t>(i) * n2() + j;
  if (tensor_rule) {
    row[r] = 1.0;
  } else {
    std::copy(coeff.begin() + static_cast<std::ptrdiff_t>(r * nn),
              coeff.begin() + static_cast<std::ptrdiff_t>((r + 1) * nn),
              row.begin());
  }
  return row;
}

LabeledOperator BilinearRule::eval(const BasisFrame& f1,
                                   const BasisFrame& f2,
                                   const LabeledOperator& w1,
                                   const LabeledOperator& w2,
                                   double tol) const {
  if (tensor_rule) return to_canonical_order(kron(w1, w2));

  std::vector<double> c = f1.coordinates(w1, tol);
  std::vector<double> d = f2.coordinates(w2, tol);
  const int i_n = n1(), j_n = n2();
  const std::size_t nn = static_cast<std::size_t>(i_n) * j_n;
  std::vector<double> y(nn, 0.0);
  for (int i = 0; i < i_n; ++i)
    for (int j = 0; j < j_n; ++j) {
      const double w = c[static_cast<std::size_t>(i)] *
                       d[static_cast<std::size_t>(j)];
      if (std::abs(w) < 1e-300) continue;
      const std::size_t r = (static_cast<std::size_t>(i) * j_n + j) * nn;
      for (std::size_t kl = 0; kl < nn; ++kl) y[kl] += w * coeff[r + kl];
    }

  LabeledOperator acc(std::vector<FactorLabel>{});
  bool first = true;
  for (int k = 0; k < i_n; ++k)
    for (int l = 0; l < j_n; ++l) {
      const double v = y[static_cast<std::size_t>(k) * j_n + l];
      if (std::abs(v) < 1e-14 && !first) continue;
      LabeledOperator prod = to_canonical_order(
          kron(basis1->elements[static_cast<std::size_t>(k)].op,
               basis2->elements[static_cast<std::size_t>(l)].op));
      if (first) {
        acc = scale(prod, cx(v, 0));
        first = false;
      } else {
        acc = add_scaled(acc, cx(v, 0), prod);
      }
    }
  return acc;
}

BilinearRule rule_from_tensor_product(const PtiBasis& basis1,
                                      const PtiBasis& basis2) {
  BilinearRule r;
  r.basis1 = &basis1;
  r.basis2 = &basis2;
  r.tensor_rule = true;
  return r;
}

//==========================================================================
// Fitting
//==========================================================================

FitResult fit_bilinear_rule(const std::vector<RuleSample>& samples,
                            const PtiBasis& basis1, const PtiBasis& basis2,
                            double tol) {
  const int i_n = static_cast<int>(basis1.elements.size());
  const int j_n = static_cast<int>(basis2.elements.size());
  const long long nn = static_cast<long long>(i_n) * j_n;
  if (nn > kMaxDenseFit)
    throw Error("fit_bilinear_rule: product family of size " +
                std::to_string(nn) + " exceeds the dense-solve guard (" +
                std::to_string(kMaxDenseFit) +
                "); use the streamed round-trip check at this scale");
  if (samples.empty()) throw Error("fit_bilinear_rule: no samples");

  BasisFrame f1(basis1), f2(basis2);
  const int s_n = static_cast<int>(samples.size());
  const int d1 = basis1.elements[0].op.dim();
  const int d2 = basis2.elements[0].op.dim();

  // Cache the product operators in canonical composite order.
  const auto composite_factors = to_canonical_order(
      kron(basis1.elements[0].op, basis2.elements[0].op)).factors;
  std::vector<LabeledOperator> prods;
  prods.reserve(static_cast<std::size_t>(nn));
  for (int k = 0; k < i_n; ++k)
    for (int l = 0; l < j_n; ++l)
      prods.push_back(to_canonical_order(
          kron(basis1.elements[static_cast<std::size_t>(k)].op,
               basis2.elements[static_cast<std::size_t>(l)].op)));

  Eigen::Map<const Eigen::MatrixXd> inv1(f1.gram_factor.data(), i_n, i_n);
  Eigen::Map<const Eigen::MatrixXd> inv2(f2.gram_factor.data(), j_n, j_n);

  Eigen::MatrixXd design(s_n, nn);
  Eigen::MatrixXd rhs(s_n, nn);
  for (int s = 0; s < s_n; ++s) {
    std::vector<double> c = f1.coordinates(samples[s].w1, tol);
    std::vector<double> d = f2.coordinates(samples[s].w2, tol);
    for (int i = 0; i < i_n; ++i)
      for (int j = 0; j < j_n; ++j)
        design(s, i * j_n + j) = c[static_cast<std::size_t>(i)] *
                                 d[static_cast<std::size_t>(j)];
    // Output coordinates over the product family: raw inner products,
    // then the factorized Gram solve B -> inv1 * B * inv2.
    LabeledOperator out = reorder_factors(samples[s].out, composite_factors);
    Eigen::MatrixXd b(i_n, j_n);
    for (int k = 0; k < i_n; ++k)
      for (int l = 0; l < j_n; ++l)
        b(k, l) = trace_inner(prods[static_cast<std::size_t>(k) * j_n + l],
                              out)
                      .real();
    Eigen::MatrixXd x = inv1 * b * inv2;
    for (int k = 0; k < i_n; ++k)
      for (int l = 0; l < j_n; ++l) rhs(s, k * j_n + l) = x(k, l);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-9);
  if (qr.rank() < nn) {
    // Name a few unexcited product directions from the kernel of the
    // design matrix's column space.
    Eigen::FullPivLU<Eigen::MatrixXd> lu(design);
    lu.setThreshold(1e-9);
    Eigen::MatrixXd ker = lu.kernel();
    std::string missing;
    int listed = 0;
    for (int col = 0; col < ker.cols() && listed < 4; ++col) {
      int arg = 0;
      ker.col(col).cwiseAbs().maxCoeff(&arg);
      missing += (listed ? ", " : "") + std::string("(") +
                 std::to_string(arg / j_n) + "," +
                 std::to_string(arg % j_n) + ")";
      ++listed;
    }
    throw Error("fit_bilinear_rule: samples span only " +
                std::to_string(qr.rank()) + " of " + std::to_string(nn) +
                " product directions; missing e.g. " + missing);
  }
  Eigen::MatrixXd x_c = qr.solve(rhs);

  FitResult res;
  res.rule.basis1 = &basis1;
  res.rule.basis2 = &basis2;
  res.rule.tensor_rule = false;
  res.rule.coeff.assign(static_cast<std::size_t>(nn) * nn, 0.0);
  for (long long r = 0; r < nn; ++r)
    for (long long c2 = 0; c2 < nn; ++c2)
      res.rule.coeff[static_cast<std::size_t>(r) * nn + c2] = x_c(r, c2);

  // End-to-end reconstruction residual per sample.
  const std::size_t composite_elems =
      static_cast<std::size_t>(d1) * d1 * d2 * d2;
  for (int s = 0; s < s_n; ++s) {
    Eigen::VectorXd y = x_c.transpose() * design.row(s).transpose();
    LabeledOperator recon(composite_factors);
    for (long long kl = 0; kl < nn; ++kl) {
      const double v = y(kl);
      if (std::abs(v) < 1e-14) continue;
      const cx* p = prods[static_cast<std::size_t>(kl)].data.data();
      for (std::size_t e = 0; e < composite_elems; ++e)
        recon.data[e] += v * p[e];
    }
    LabeledOperator out = reorder_factors(samples[s].out, composite_factors);
    res.max_sample_residual =
        std::max(res.max_sample_residual, max_abs_diff(recon, out));
  }
  return res;
}

double verify_tensor_fit_roundtrip(const PtiBasis& basis1,
                                   const PtiBasis& basis2) {
  BasisFrame f1(basis1), f2(basis2);
  const int i_n = f1.n, j_n = f2.n;
  double worst = 0.0;

  // Coordinates of each basis element over its own basis must be a unit
  // vector; by the Gram factorization <M_k (x) N_l, M_i (x) N_j> =
  // <M_k, M_i><N_l, N_j>, the product sample's coordinates over the
  // product family are then exactly e_i (x) e_j for every pair.
  auto side_dev = [&](const BasisFrame& f) {
    double dev = 0.0;
    for (int i = 0; i < f.n; ++i) {
      std::vector<double> c =
          f.coordinates(f.basis->elements[static_cast<std::size_t>(i)].op);
      for (int k = 0; k < f.n; ++k)
        dev = std::max(dev, std::abs(c[static_cast<std::size_t>(k)] -
                                     (k == i ? 1.0 : 0.0)));
    }
    return dev;
  };
  worst = std::max(side_dev(f1), side_dev(f2));

  // Anchor the factorization premise on dense tensor samples: seeded pairs
  // (i, j) and probes (k, l), compared entrywise against the separable
  // inner-product product.
  Rng rng(20260822);
  const int n_pairs = std::min(64, i_n * j_n);
  for (int t = 0; t < n_pairs; ++t) {
    const int i = static_cast<int>(rng.next_u64() %
                                   static_cast<unsigned long long>(i_n));
    const int j = static_cast<int>(rng.next_u64() %
                                   static_cast<unsigned long long>(j_n));
    LabeledOperator sample =
        kron(basis1.elements[static_cast<std::size_t>(i)].op,
             basis2.elements[static_cast<std::size_t>(j)].op);
    for (int probe = 0; probe < 16; ++probe) {
      const int k = static_cast<int>(rng.next_u64() %
                                     static_cast<unsigned long long>(i_n));
      const int l = static_cast<int>(rng.next_u64() %
                                     static_cast<unsigned long long>(j_n));
      const cx lhs = trace_inner(
          kron(basis1.elements[static_cast<std::size_t>(k)].op,
               basis2.elements[static_cast<std::size_t>(l)].op),
          sample);
      const cx rhs =
          trace_inner(basis1.elements[static_cast<std::size_t>(k)].op,
                      basis1.elements[static_cast<std::size_t>(i)].op) *
          trace_inner(basis2.elements[static_cast<std::size_t>(l)].op,
                      basis2.elements[static_cast<std::size_t>(j)].op);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

//==========================================================================
// Requirement checks
//==========================================================================

std::vector<CheckEntry> check_R1(const BilinearRule& rule,
                                 const BasisFrame& f1, const BasisFrame& f2,
                                 const ProcessMatrix& w1,
                                 const ProcessMatrix& w2, double tol) {
  LabeledOperator out = rule.eval(f1, f2, w1.op, w2.op, tol);
  ProcessMatrix composite{out, parties_from_factors(out.factors),
                          w1.normalized && w2.normalized};
  ValidityReport rep = validate_process(composite, tol);
  std::vector<CheckEntry> es;
  es.push_back({"R1-psd", "composed output is positive semidefinite",
                std::max(0.0, -rep.min_eig), tol,
                rep.min_eig >= -tol, ""});
  es.push_back({"R1-trace", "composed output has trace = product of output "
                "dimensions", rep.trace_dev, tol, rep.trace_dev <= tol, ""});
  es.push_back({"R1-constraints", "composed output satisfies the validity "
                "projector", rep.projector_residual, tol,
                rep.projector_residual <= tol,
                "joint-output residual " +
                    std::to_string(rep.joint_output_residual)});
  return es;
}

std::vector<CheckEntry> check_R1prime(const BilinearRule& rule,
                                      const BasisFrame& f1,
                                      const BasisFrame& f2,
                                      const ProcessMatrix& w1,
                                      const ProcessMatrix& w2, double tol) {
  LabeledOperator out = rule.eval(f1, f2, w1.op, w2.op, tol);
  const double me = min_eig(out, 1e300);
  return {{"R1prime-positivity", "composed output is positive semidefinite",
           std::max(0.0, -me), tol, me >= -tol, ""}};
}

std::vector<CheckEntry> check_R2(const BilinearRule& rule,
                                 const BasisFrame& f1, const BasisFrame& f2,
                                 const ProcessMatrix& w1,
                                 const ProcessMatrix& w2, double tol) {
  OrderResiduals r1 = order_residuals(w1);
  OrderResiduals r2 = order_residuals(w2);
  const bool same_ab = r1.a_prec_b <= tol && r2.a_prec_b <= tol;
  const bool same_ba = r1.b_prec_a <= tol && r2.b_prec_a <= tol;
  if (!same_ab && !same_ba)
    throw Error("check_R2: inputs do not share a definite causal order");
  LabeledOperator out = rule.eval(f1, f2, w1.op, w2.op, tol);
  LabeledOperator expected = to_canonical_order(kron(w1.op, w2.op));
  const double res = max_abs_diff(out, expected);
  return {{"R2-consistency",
           "same-order inputs compose to their tensor product", res, tol,
           res <= tol,
           same_ab ? "order A before B" : "order B before A"}};
}

std::vector<CheckEntry> check_R3(const BilinearRule& rule,
                                 const BasisFrame& f1, const BasisFrame& f2,
                                 const std::vector<ProcessMatrix>& ws1,
                                 const std::vector<double>& p1,
                                 const std::vector<ProcessMatrix>& ws2,
                                 const std::vector<double>& p2, double tol) {
  ProcessMatrix m1 = mixture(ws1, p1);
  ProcessMatrix m2 = mixture(ws2, p2);
  LabeledOperator lhs = rule.eval(f1, f2, m1.op, m2.op, tol);
  LabeledOperator acc(lhs.factors);
  for (std::size_t a = 0; a < ws1.size(); ++a)
    for (std::size_t b = 0; b < ws2.size(); ++b)
      acc = add_scaled(acc, cx(p1[a] * p2[b], 0),
                       rule.eval(f1, f2, ws1[a].op, ws2[b].op, tol));
  const double res = max_abs_diff(lhs, acc);
  return {{"R3-mixtures",
           "composing mixtures equals mixing compositions", res, tol,
           res <= tol, ""}};
}

//==========================================================================
// Lemma certificates
//==========================================================================

Certificate norm_product_certificate(const LabeledOperator& a1,
                               const Bipartition& bp1,
                               const LabeledOperator& a2,
                               const Bipartition& bp2, double tol) {
  Certificate c;
  c.title = "norm-bound premises for composition rules";
  for (const LabeledOperator* a : {&a1, &a2}) {
    if (hermiticity_deviation(*a) > tol)
      throw Error("norm_product_certificate: input is not Hermitian");
  }
  if (max_abs_diff(project_LV(a1, bp1), a1) > tol * std::max(1.0, max_abs(a1)))
    throw Error("norm_product_certificate: first operand is outside the valid "
                "subspace");
  if (max_abs_diff(project_LV(a2, bp2), a2) > tol * std::max(1.0, max_abs(a2)))
    throw Error("norm_product_certificate: second operand is outside the valid "
                "subspace");

  const double l1 = op_norm(a1), l2 = op_norm(a2);
  c.note_input("norm-1", std::to_string(l1));
  c.note_input("norm-2", std::to_string(l2));

  int side = 1;
  for (const auto& [a, bp, l] :
       {std::tuple<const LabeledOperator&, const Bipartition&, double>(
            a1, bp1, l1),
        std::tuple<const LabeledOperator&, const Bipartition&, double>(
            a2, bp2, l2)}) {
    for (double sign : {1.0, -1.0}) {
      LabeledOperator w = add_scaled(
          scale(LabeledOperator::identity(a.factors), cx(l, 0)),
          cx(sign, 0), a);
      const double me = min_eig(w);
      const double fix = max_abs_diff(project_LV(w, bp), w);
      const std::string tag =
          std::to_string(side) + (sign > 0 ? "+" : "-");
      c.add("premise-psd-" + tag,
            "norm * identity plus/minus the operand is positive",
            std::max(0.0, -me), tol * std::max(1.0, l));
      c.add("premise-fixed-" + tag,
            "that shifted operand stays in the valid subspace", fix,
            tol * std::max(1.0, l));
    }
    ++side;
  }

  LabeledOperator prod = kron(a1, a2);
  c.add("conclusion-hermitian", "the tensor instance is Hermitian",
        hermiticity_deviation(prod), tol);
  const double pn = (l1 == 0.0 || l2 == 0.0) ? 0.0 : op_norm(prod);
  c.add("conclusion-norm",
        "the tensor instance attains the norm product bound",
        std::abs(pn - l1 * l2), tol * std::max(1.0, l1 * l2));
  return c;
}

namespace {

struct SideData {
  const PtiBasis* basis;
  const PtiElement* elem;
  std::vector<int> slots;
  double eval;            // product eigenvalue
  std::vector<cx> evec;   // product eigenvector
};

SideData side_data(const PtiBasis& b, int elem, const std::vector<int>& slots) {
  if (elem < 0 || elem >= static_cast<int>(b.elements.size()))
    throw Error("basis element index out of range");
  if (slots.size() != b.ports.size())
    throw Error("need one eigenvector slot per port");
  const PtiElement& e = b.elements[static_cast<std::size_t>(elem)];
  return {&b, &e, slots, b.product_eval(e, slots), b.product_evec(e, slots)};
}

bool has_zero_slot(const SideData& s) {
  for (std::size_t p = 0; p < s.basis->ports.size(); ++p)
    if (s.basis->factor(*s.elem, static_cast<int>(p))
            .evals[s.slots[p]] == 0.0)
      return true;
  return false;
}

void audit_unnormalized_process(Certificate& c, const SideData& s,
                                const char* tag, double tol) {
  const Bipartition bp = bipartition_of_parties(s.basis->parties);
  const LabeledOperator& m = s.elem->op;
  // W = I + (-1)^{k+1} M = I - lambda M for the chosen eigenvector.
  LabeledOperator w = add_scaled(LabeledOperator::identity(m.factors),
                                 cx(-s.eval, 0), m);
  c.add(std::string("process-psd-") + tag,
        "the pinning input I - eigenvalue * element is positive",
        std::max(0.0, -min_eig(w)), tol);
  c.add(std::string("process-fixed-") + tag,
        "the pinning input stays in the valid subspace",
        max_abs_diff(project_LV(w, bp), w), tol);
  c.add(std::string("one-way-order-") + tag,
        "the element is causally one-way ordered",
        one_way_residual(m, bp), tol);
  c.add(std::string("eigvec-") + tag,
        "the chosen product vector is an eigenvector",
        vec_max_abs_diff(matvec(m, s.evec), [&] {
          std::vector<cx> t = s.evec;
          for (auto& v : t) v *= s.eval;
          return t;
        }()),
        tol);
}

}  // namespace

Certificate pinning_certificate(const PtiBasis& b1, int elem1,
                               const std::vector<int>& slots1,
                               const PtiBasis& b2, int elem2,
                               const std::vector<int>& slots2, double tol) {
  SideData s1 = side_data(b1, elem1, slots1);
  SideData s2 = side_data(b2, elem2, slots2);
  if (has_zero_slot(s1) || has_zero_slot(s2))
    throw Error("pinning_certificate: a per-port eigenvalue is 0; use the "
                "zero-eigenvalue reduction (zero_split_certificate)");

  Certificate c;
  c.title = "eigenvector pinning at +-1 product eigenvectors";
  c.note_input("eigenvalue-1", std::to_string(s1.eval));
  c.note_input("eigenvalue-2", std::to_string(s2.eval));
  audit_unnormalized_process(c, s1, "1", tol);
  audit_unnormalized_process(c, s2, "2", tol);

  // (M (x) N)|k, j> computed factorwise.
  std::vector<cx> lhs = vec_kron(matvec(s1.elem->op, s1.evec),
                                 matvec(s2.elem->op, s2.evec));
  std::vector<cx> rhs = vec_kron(s1.evec, s2.evec);
  for (auto& v : rhs) v *= s1.eval * s2.eval;
  c.add("pinned-product",
        "the tensor rule pins the product eigenvector to the eigenvalue "
        "product", vec_max_abs_diff(lhs, rhs), tol);
  return c;
}

namespace {

// Split the first zero factor of the side: X = X' + X'' with
// X'|k1> = |k1>, X''|k1> = -|k1>, both traceless with spectra in
// {-1, 0, 1}. The partner vector is another zero eigenvector when one
// exists, else a +1 eigenvector.
void audit_zero_split(Certificate& c, const SideData& s, const SideData& o,
                      bool side_first, const char* tag, double tol) {
  int port = -1;
  for (std::size_t p = 0; p < s.basis->ports.size(); ++p)
    if (s.basis->factor(*s.elem, static_cast<int>(p))
            .evals[s.slots[p]] == 0.0) {
      port = static_cast<int>(p);
      break;
    }
  if (port < 0) return;

  const GellMannElement& x = s.basis->factor(*s.elem, port);
  const int d = x.d;
  const int k_slot = s.slots[static_cast<std::size_t>(port)];
  int v_slot = -1;
  for (int q = 0; q < d; ++q) {
    if (q == k_slot) continue;
    if (x.evals[static_cast<std::size_t>(q)] == 0.0) {
      v_slot = q;
      break;
    }
  }
  if (v_slot < 0)
    for (int q = 0; q < d; ++q)
      if (x.evals[static_cast<std::size_t>(q)] == 1.0) {
        v_slot = q;
        break;
      }
  if (v_slot < 0)
    throw Error("zero split: no partner eigenvector available");

  const auto& k1 = x.evecs[static_cast<std::size_t>(k_slot)];
  const auto& v = x.evecs[static_cast<std::size_t>(v_slot)];
  auto outer = [d](const std::vector<cx>& a, double sign) {
    std::vector<cx> m(static_cast<std::size_t>(d) * d, cx(0, 0));
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col)
        m[static_cast<std::size_t>(r) * d + col] =
            sign * a[static_cast<std::size_t>(r)] *
            std::conj(a[static_cast<std::size_t>(col)]);
    return m;
  };
  std::vector<cx> xp = x.mat, xpp(static_cast<std::size_t>(d) * d, cx(0, 0));
  {
    auto kk = outer(k1, 1.0), vv = outer(v, 1.0);
    for (std::size_t e = 0; e < xp.size(); ++e) {
      xp[e] += kk[e] - vv[e];
      xpp[e] = vv[e] - kk[e];
    }
  }

  const FactorLabel port_label = s.basis->ports[static_cast<std::size_t>(port)];
  LabeledOperator xp_op({port_label}), xpp_op({port_label});
  xp_op.data = xp;
  xpp_op.data = xpp;

  c.add(std::string("split-traceless-") + tag,
        "both split parts are traceless",
        std::max(std::abs(trace_of(xp_op)), std::abs(trace_of(xpp_op))),
        tol);
  auto act = [&](const LabeledOperator& m, double want) {
    std::vector<cx> got = matvec(m, k1);
    std::vector<cx> expect = k1;
    for (auto& e : expect) e *= want;
    return vec_max_abs_diff(got, expect);
  };
  c.add(std::string("split-action-") + tag,
        "the split parts act as +1 and -1 on the zero eigenvector",
        std::max(act(xp_op, 1.0), act(xpp_op, -1.0)), tol);

  EigResult eg = eig_hermitian(xp_op);
  double spec_dev = 0.0;
  for (double ev : eg.evals) {
    double best = std::min({std::abs(ev + 1.0), std::abs(ev),
                            std::abs(ev - 1.0)});
    spec_dev = std::max(spec_dev, best);
  }
  c.add(std::string("split-spectrum-") + tag,
        "the split part's eigenvalues stay in {-1, 0, 1}", spec_dev, tol);

  // Substitute the split parts into the product element; membership in the
  // valid subspace is preserved because the signature is unchanged.
  auto substitute = [&](const LabeledOperator& repl) {
    LabeledOperator op(std::vector<FactorLabel>{});
    for (std::size_t p = 0; p < s.basis->ports.size(); ++p) {
      LabeledOperator f({s.basis->ports[p]});
      f.data = static_cast<int>(p) == port
                   ? repl.data
                   : s.basis->factor(*s.elem, static_cast<int>(p)).mat;
      op = p == 0 ? f : kron(op, f);
    }
    return op;
  };
  LabeledOperator mp = substitute(xp_op), mpp = substitute(xpp_op);
  const Bipartition bp = bipartition_of_parties(s.basis->parties);
  c.add(std::string("split-fixed-") + tag,
        "both substituted elements stay in the valid subspace",
        std::max(max_abs_diff(project_LV(mp, bp), mp),
                 max_abs_diff(project_LV(mpp, bp), mpp)),
        tol);

  // Cancellation on the chosen product eigenvector: the split halves pin
  // to +1 and -1 and sum to zero, matching the zero product eigenvalue.
  std::vector<cx> mv = matvec(mp, s.evec), mvv = matvec(mpp, s.evec);
  std::vector<cx> sum(mv.size());
  for (std::size_t e = 0; e < mv.size(); ++e) sum[e] = mv[e] + mvv[e];
  std::vector<cx> other = matvec(o.elem->op, o.evec);
  std::vector<cx> lhs = side_first ? vec_kron(sum, other)
                                   : vec_kron(other, sum);
  double cancel = 0.0;
  for (const auto& e : lhs) cancel = std::max(cancel, std::abs(e));
  c.add(std::string("split-cancel-") + tag,
        "the split halves cancel on the product eigenvector", cancel, tol);
}

}  // namespace

Certificate zero_split_certificate(const PtiBasis& b1, int elem1,
                               const std::vector<int>& slots1,
                               const PtiBasis& b2, int elem2,
                               const std::vector<int>& slots2, double tol) {
  SideData s1 = side_data(b1, elem1, slots1);
  SideData s2 = side_data(b2, elem2, slots2);
  if (!has_zero_slot(s1) && !has_zero_slot(s2))
    throw Error("zero_split_certificate: every per-port eigenvalue is +-1; "
                "use pinning_certificate");

  Certificate c;
  c.title = "zero-eigenvalue reduction by factor splitting";
  c.note_input("eigenvalue-1", std::to_string(s1.eval));
  c.note_input("eigenvalue-2", std::to_string(s2.eval));

  if (has_zero_slot(s1)) audit_zero_split(c, s1, s2, true, "1", tol);
  if (has_zero_slot(s2)) audit_zero_split(c, s2, s1, false, "2", tol);

  // The product eigenvalue is zero, and the tensor rule pins exactly that.
  std::vector<cx> lhs = vec_kron(matvec(s1.elem->op, s1.evec),
                                 matvec(s2.elem->op, s2.evec));
  double res = 0.0;
  for (const auto& e : lhs) res = std::max(res, std::abs(e));
  c.add("pinned-zero", "the tensor rule sends the product eigenvector to "
        "zero", res, tol);
  return c;
}

}  // namespace procmat
