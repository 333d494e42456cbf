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

#include "procmat/processes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "procmat/instruments.hpp"

namespace procmat {

namespace {

std::vector<FactorLabel> concat(std::vector<FactorLabel> a,
                                const std::vector<FactorLabel>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string names_of(const std::vector<FactorLabel>& fs) {
  std::string s;
  for (const auto& f : fs) {
    if (!s.empty()) s += ",";
    s += f.name();
  }
  return s;
}

double out_dim_of(const std::vector<PartyPorts>& ps) {
  double d = 1.0;
  for (const auto& p : ps)
    for (const auto& f : p.outs) d *= f.dim;
  return d;
}

}  // namespace

//==========================================================================
// Party structure
//==========================================================================

std::vector<PartyPorts> bipartite_parties(int d_ai, int d_ao, int d_bi,
                                          int d_bo, int copy) {
  PartyPorts a{'A',
               {FactorLabel{'A', Port::In, copy, d_ai}},
               {FactorLabel{'A', Port::Out, copy, d_ao}}};
  PartyPorts b{'B',
               {FactorLabel{'B', Port::In, copy, d_bi}},
               {FactorLabel{'B', Port::Out, copy, d_bo}}};
  return {a, b};
}

std::vector<FactorLabel> party_factors(const std::vector<PartyPorts>& ps) {
  std::vector<FactorLabel> fs;
  for (const auto& p : ps) fs = concat(concat(std::move(fs), p.ins), p.outs);
  return canonical_order(std::move(fs));
}

std::vector<PartyPorts> parties_from_factors(std::vector<FactorLabel> fs) {
  fs = canonical_order(std::move(fs));
  std::vector<PartyPorts> ps;
  for (const auto& f : fs) {
    auto it = std::find_if(ps.begin(), ps.end(), [&](const PartyPorts& p) {
      return p.party == f.party;
    });
    if (it == ps.end()) {
      ps.push_back({f.party, {}, {}});
      it = ps.end() - 1;
    }
    (f.port == Port::In ? it->ins : it->outs).push_back(f);
  }
  return ps;
}

Bipartition bipartition_of(const ProcessMatrix& w) {
  if (w.parties.size() != 2)
    throw Error("expected a two-party process, got " +
                std::to_string(w.parties.size()) + " parties");
  const PartyPorts& a = w.parties[0];
  const PartyPorts& b = w.parties[1];
  return {a.ins, a.outs, b.ins, b.outs};
}

ProcessMatrix relabel_copy(const ProcessMatrix& w, int copy) {
  ProcessMatrix out = w;
  out.op.factors = with_copy(out.op.factors, copy);
  for (auto& p : out.parties) {
    p.ins = with_copy(p.ins, copy);
    p.outs = with_copy(p.outs, copy);
  }
  return out;
}

//==========================================================================
// Validity projectors
//==========================================================================

namespace {

// Evaluate a trace-and-replace polynomial, summing in sorted-key order so
// the hand-written bipartite route and the expanded N-party route produce
// identical floating point results.
LabeledOperator apply_terms(
    const LabeledOperator& op,
    std::vector<std::pair<std::vector<FactorLabel>, double>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    return names_of(x.first) < names_of(y.first);
  });
  LabeledOperator acc(op.factors);  // zero
  for (const auto& [group, coeff] : terms) {
    if (group.empty()) {
      acc = add_scaled(acc, cx(coeff, 0), op);
    } else {
      acc = add_scaled(acc, cx(coeff, 0), trace_and_replace(op, group));
    }
  }
  return acc;
}

}  // namespace

LabeledOperator project_LV(const LabeledOperator& op, const Bipartition& bp) {
  const auto ai = bp.a_in, ao = bp.a_out, bi = bp.b_in, bo = bp.b_out;
  if (canonical_order(concat(concat(concat(ai, ao), bi), bo)) !=
      canonical_order(op.factors))
    throw Error("project_LV: bipartition does not cover the operator's "
                "factors " + op.factor_names());
  std::vector<std::pair<std::vector<FactorLabel>, double>> terms = {
      {ao, 1.0},
      {bo, 1.0},
      {concat(ao, bo), -1.0},
      {concat(bi, bo), -1.0},
      {concat(ao, concat(bi, bo)), 1.0},
      {concat(ai, ao), -1.0},
      {concat(concat(ai, ao), bo), 1.0},
  };
  return apply_terms(op, std::move(terms));
}

std::vector<std::pair<std::vector<FactorLabel>, double>> lvn_terms(
    const std::vector<PartyPorts>& parties) {
  if (parties.empty()) throw Error("lvn_terms: no parties");
  // Keyed accumulation of the expanded polynomial.
  std::map<std::string, std::pair<std::vector<FactorLabel>, double>> acc;
  auto add = [&](const std::vector<FactorLabel>& group, double c) {
    auto& slot = acc[names_of(group)];
    slot.first = group;
    slot.second += c;
  };

  add({}, 1.0);
  // - prod_i (1 - O_i + I_i O_i): one of three choices per party.
  const std::size_t n = parties.size();
  std::vector<int> choice(n, 0);
  while (true) {
    double c = -1.0;
    std::vector<FactorLabel> group;
    for (std::size_t i = 0; i < n; ++i) {
      switch (choice[i]) {
        case 0: break;
        case 1:
          c = -c;
          group = concat(std::move(group), parties[i].outs);
          break;
        case 2:
          group = concat(concat(std::move(group), parties[i].ins),
                         parties[i].outs);
          break;
      }
    }
    add(group, c);
    std::size_t k = 0;
    for (; k < n; ++k) {
      if (++choice[k] < 3) break;
      choice[k] = 0;
    }
    if (k == n) break;
  }
  // + prod_i I_i O_i.
  std::vector<FactorLabel> all;
  for (const auto& p : parties) all = concat(concat(std::move(all), p.ins),
                                             p.outs);
  add(all, 1.0);

  std::vector<std::pair<std::vector<FactorLabel>, double>> out;
  for (auto& [key, term] : acc)
    if (std::abs(term.second) > 1e-15) out.push_back(std::move(term));
  return out;
}

LabeledOperator project_LVN(const LabeledOperator& op,
                            const std::vector<PartyPorts>& parties) {
  if (canonical_order(party_factors(parties)) != canonical_order(op.factors))
    throw Error("project_LVN: party groups do not cover the operator's "
                "factors " + op.factor_names());
  return apply_terms(op, lvn_terms(parties));
}

//==========================================================================
// Validation and classification
//==========================================================================

bool ValidityReport::pass(double tol) const {
  return herm_dev <= tol && min_eig >= -tol && trace_dev <= tol &&
         marginal_a_residual <= tol && marginal_b_residual <= tol &&
         joint_output_residual <= tol && projector_residual <= tol;
}

ValidityReport validate_process(const ProcessMatrix& w, double tol) {
  (void)tol;
  ValidityReport r;
  const LabeledOperator& op = w.op;
  r.herm_dev = hermiticity_deviation(op);
  r.min_eig = min_eig(op, 1e300);
  r.trace = trace_of(op).real();
  if (w.normalized) {
    const double d_o = out_dim_of(w.parties);
    r.trace_dev = std::abs(r.trace - d_o);
  }
  r.projector_residual = max_abs_diff(project_LVN(op, w.parties), op);
  if (w.parties.size() == 2) {
    Bipartition bp = bipartition_of(w);
    const auto ai = bp.a_in, ao = bp.a_out, bi = bp.b_in, bo = bp.b_out;
    r.marginal_a_residual =
        max_abs_diff(trace_and_replace(op, concat(bi, bo)),
                     trace_and_replace(op, concat(ao, concat(bi, bo))));
    r.marginal_b_residual =
        max_abs_diff(trace_and_replace(op, concat(ai, ao)),
                     trace_and_replace(op, concat(concat(ai, ao), bo)));
    LabeledOperator rhs = trace_and_replace(op, bo);
    rhs = add_scaled(rhs, cx(1, 0), trace_and_replace(op, ao));
    rhs = add_scaled(rhs, cx(-1, 0), trace_and_replace(op, concat(ao, bo)));
    r.joint_output_residual = max_abs_diff(op, rhs);
  }
  return r;
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::NoSignaling: return "NoSignaling";
    case CausalClass::AprecB: return "AprecB";
    case CausalClass::BprecA: return "BprecA";
    case CausalClass::NoFixedOrder: return "NoFixedOrder";
  }
  return "?";
}

OrderResiduals order_residuals(const ProcessMatrix& w) {
  Bipartition bp = bipartition_of(w);
  OrderResiduals r;
  r.a_prec_b = max_abs_diff(trace_and_replace(w.op, bp.b_out), w.op);
  r.b_prec_a = max_abs_diff(trace_and_replace(w.op, bp.a_out), w.op);
  return r;
}

CausalClass causal_class(const ProcessMatrix& w, double tol) {
  ValidityReport rep = validate_process(w, tol);
  if (!rep.pass(tol))
    throw Error("causal_class: process fails validity (min eig " +
                std::to_string(rep.min_eig) + ", projector residual " +
                std::to_string(rep.projector_residual) + ")");
  OrderResiduals r = order_residuals(w);
  const bool ab = r.a_prec_b <= tol;
  const bool ba = r.b_prec_a <= tol;
  if (ab && ba) return CausalClass::NoSignaling;
  if (ab) return CausalClass::AprecB;
  if (ba) return CausalClass::BprecA;
  return CausalClass::NoFixedOrder;
}

//==========================================================================
// Constructors
//==========================================================================

namespace {

ProcessMatrix finish(LabeledOperator op, bool normalized, double tol,
                     const char* what) {
  ProcessMatrix w{to_canonical_order(op), parties_from_factors(op.factors),
                  normalized};
  ValidityReport rep = validate_process(w, tol);
  if (!rep.pass(tol)) {
    std::string which =
        rep.herm_dev > tol            ? "hermiticity"
        : rep.min_eig < -tol          ? "positivity"
        : rep.trace_dev > tol         ? "trace normalization"
                                      : "linear constraints";
    throw Error(std::string(what) + ": result fails " + which);
  }
  return w;
}

}  // namespace

ProcessMatrix state_process(const LabeledOperator& rho,
                            const std::vector<FactorLabel>& out_factors) {
  for (const auto& f : rho.factors)
    if (f.port != Port::In)
      throw Error("state_process: state factor " + f.name() +
                  " is not an input port");
  for (const auto& f : out_factors)
    if (f.port != Port::Out)
      throw Error("state_process: factor " + f.name() +
                  " is not an output port");
  if (hermiticity_deviation(rho) > 1e-9)
    throw Error("state_process: state is not Hermitian");
  if (std::abs(trace_of(rho).real() - 1.0) > 1e-9 ||
      std::abs(trace_of(rho).imag()) > 1e-9)
    throw Error("state_process: state is not normalized");
  if (min_eig(rho) < -1e-9)
    throw Error("state_process: state is not positive semidefinite");
  LabeledOperator w = out_factors.empty()
                          ? rho
                          : kron(rho, LabeledOperator::identity(out_factors));
  return finish(std::move(w), true, kDefaultTol, "state_process");
}

ProcessMatrix channel_process(const LabeledOperator& choi, Direction dir,
                              int d_other_in, int d_other_out) {
  if (choi.factors.size() != 2)
    throw Error("channel_process: Choi operator must have exactly two "
                "factors (from-port, to-port)");
  const FactorLabel from = choi.factors[0];
  const FactorLabel to = choi.factors[1];
  const char src = dir == Direction::AtoB ? 'A' : 'B';
  const char dst = dir == Direction::AtoB ? 'B' : 'A';
  if (from.party != src || from.port != Port::Out || to.party != dst ||
      to.port != Port::In)
    throw Error("channel_process: Choi factors " + choi.factor_names() +
                " do not run from " + src + "'s output to " + dst +
                "'s input");
  // Trace preservation: tracing the channel's target leaves I on its source.
  LabeledOperator reduced = partial_trace(choi, {to});
  if (max_abs_diff(reduced, LabeledOperator::identity(reduced.factors)) >
      1e-9)
    throw Error("channel_process: Choi operator is not trace-preserving");
  if (min_eig(choi) < -1e-9)
    throw Error("channel_process: Choi operator is not completely positive");

  FactorLabel pad_in{src, Port::In, from.copy, d_other_in};
  FactorLabel pad_out{dst, Port::Out, from.copy, d_other_out};
  // Unused input is padded with the maximally mixed state so the overall
  // trace is the product of output dimensions.
  LabeledOperator w =
      kron(kron(scale(LabeledOperator::identity({pad_in}),
                      cx(1.0 / d_other_in, 0)),
                choi),
           LabeledOperator::identity({pad_out}));
  return finish(std::move(w), true, kDefaultTol, "channel_process");
}

ProcessMatrix parallel_copies(const ProcessMatrix& w, int n) {
  if (n < 1) throw Error("parallel_copies: need n >= 1");
  LabeledOperator acc = relabel_copy(w, 0).op;
  for (int i = 1; i < n; ++i) acc = kron(acc, relabel_copy(w, i).op);
  return finish(std::move(acc), w.normalized, kDefaultTol,
                "parallel_copies");
}

ProcessMatrix mixture(const std::vector<ProcessMatrix>& ws,
                      const std::vector<double>& probs) {
  if (ws.empty() || ws.size() != probs.size())
    throw Error("mixture: need matching, nonempty process and weight lists");
  double sum = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw Error("mixture: negative weight");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error("mixture: weights sum to " + std::to_string(sum));
  LabeledOperator acc = scale(ws[0].op, cx(probs[0], 0));
  for (std::size_t i = 1; i < ws.size(); ++i) {
    if (canonical_order(ws[i].op.factors) !=
        canonical_order(ws[0].op.factors))
      throw Error("mixture: processes live on different factor sets");
    acc = add_scaled(acc, cx(probs[i], 0), ws[i].op);
  }
  return finish(std::move(acc), ws[0].normalized, kDefaultTol, "mixture");
}

namespace {

// Trace-preserving channel from dimension a to dimension b that transmits
// the first min(a, b) basis states: an isometric embedding when a <= b,
// otherwise a truncation collapsing the overflow onto |0>.
std::vector<std::vector<cx>> funnel_kraus(int a, int b) {
  std::vector<std::vector<cx>> ks;
  std::vector<cx> k0(static_cast<std::size_t>(b) * a, cx(0, 0));
  for (int i = 0; i < std::min(a, b); ++i)
    k0[static_cast<std::size_t>(i) * a + i] = 1;
  ks.push_back(std::move(k0));
  for (int j = b; j < a; ++j) {
    std::vector<cx> kj(static_cast<std::size_t>(b) * a, cx(0, 0));
    kj[static_cast<std::size_t>(0) * a + j] = 1;
    ks.push_back(std::move(kj));
  }
  return ks;
}

}  // namespace

std::pair<ProcessMatrix, ProcessMatrix> opposite_order_pair_dims(
    int d_ai, int d_ao, int d_bi, int d_bo) {
  FactorLabel ao{'A', Port::Out, 0, d_ao};
  FactorLabel bi{'B', Port::In, 0, d_bi};
  FactorLabel bo{'B', Port::Out, 0, d_bo};
  FactorLabel ai{'A', Port::In, 0, d_ai};
  LabeledOperator c_ab =
      choi_from_kraus(funnel_kraus(d_ao, d_bi), {ao}, {bi});
  LabeledOperator c_ba =
      choi_from_kraus(funnel_kraus(d_bo, d_ai), {bo}, {ai});
  return {channel_process(c_ab, Direction::AtoB, d_ai, d_bo),
          channel_process(c_ba, Direction::BtoA, d_bi, d_ao)};
}

std::pair<ProcessMatrix, ProcessMatrix> opposite_order_pair(int d) {
  return opposite_order_pair_dims(d, d, d, d);
}

}  // namespace procmat
