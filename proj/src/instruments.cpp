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

#include "procmat/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "procmat/kernels.hpp"

namespace procmat {

namespace {

std::vector<FactorLabel> concat(const std::vector<FactorLabel>& a,
                                const std::vector<FactorLabel>& b) {
  std::vector<FactorLabel> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

//==========================================================================
// Instrument accessors
//==========================================================================

int Instrument::n_settings() const {
  int n = 0;
  for (const auto& e : elements) n = std::max(n, e.setting + 1);
  return n;
}

std::vector<const InstrumentElement*> Instrument::elements_for(
    int setting) const {
  std::vector<const InstrumentElement*> out;
  for (const auto& e : elements)
    if (e.setting == setting) out.push_back(&e);
  std::sort(out.begin(), out.end(),
            [](const InstrumentElement* a, const InstrumentElement* b) {
              return a->outcome < b->outcome;
            });
  return out;
}

const InstrumentElement& Instrument::element(int outcome, int setting) const {
  for (const auto& e : elements)
    if (e.outcome == outcome && e.setting == setting) return e;
  throw Error("instrument has no element (outcome=" + std::to_string(outcome) +
              ", setting=" + std::to_string(setting) + ")");
}

//==========================================================================
// Choi construction
//==========================================================================

LabeledOperator choi_from_kraus(const std::vector<std::vector<cx>>& kraus,
                                const std::vector<FactorLabel>& in_factors,
                                const std::vector<FactorLabel>& out_factors) {
  const int d_in = checked_product_dim(in_factors);
  const int d_out = checked_product_dim(out_factors);
  if (kraus.empty()) throw Error("choi_from_kraus: empty Kraus list");
  const std::size_t want = static_cast<std::size_t>(d_out) * d_in;
  for (const auto& k : kraus)
    if (k.size() != want)
      throw Error("choi_from_kraus: Kraus operator is not " +
                  std::to_string(d_out) + "x" + std::to_string(d_in));

  LabeledOperator m(concat(in_factors, out_factors));
  for (int i = 0; i < d_in; ++i)
    for (int mm = 0; mm < d_out; ++mm)
      for (int j = 0; j < d_in; ++j)
        for (int n = 0; n < d_out; ++n) {
          cx v = 0;
          for (const auto& k : kraus)
            v += k[static_cast<std::size_t>(mm) * d_in + i] *
                 std::conj(k[static_cast<std::size_t>(n) * d_in + j]);
          m.at(i * d_out + mm, j * d_out + n) = v;
        }
  return m;
}

//==========================================================================
// Validation
//==========================================================================

double InstrumentReport::worst_min_eig() const {
  double w = 0.0;
  for (const auto& e : element_checks) w = std::min(w, e.min_eig);
  return w;
}

double InstrumentReport::worst_tp_residual() const {
  double w = 0.0;
  for (const auto& s : setting_checks) w = std::max(w, s.tp_residual);
  return w;
}

bool InstrumentReport::pass(double tol) const {
  for (const auto& e : element_checks)
    if (e.min_eig < -tol || e.herm_dev > tol) return false;
  for (const auto& s : setting_checks)
    if (s.tp_residual > tol) return false;
  return true;
}

InstrumentReport validate_instrument(const Instrument& inst, double tol) {
  (void)tol;
  InstrumentReport rep;
  const auto all = concat(inst.in_factors, inst.out_factors);
  check_no_duplicates(all);

  for (const auto& e : inst.elements) {
    if (canonical_order(e.choi.factors) != canonical_order(all))
      throw Error("instrument element (outcome=" + std::to_string(e.outcome) +
                  ", setting=" + std::to_string(e.setting) +
                  ") does not act on the declared factors");
    // Report positivity of the Hermitian part; the deviation from
    // Hermiticity is reported alongside rather than thrown.
    rep.element_checks.push_back({e.outcome, e.setting,
                                  min_eig(e.choi, 1e300),
                                  hermiticity_deviation(e.choi)});
  }

  for (int s = 0; s < inst.n_settings(); ++s) {
    auto els = inst.elements_for(s);
    if (els.empty()) continue;
    LabeledOperator sum = els[0]->choi;
    for (std::size_t k = 1; k < els.size(); ++k)
      sum = add_scaled(sum, cx(1, 0), els[k]->choi);
    LabeledOperator reduced = partial_trace(sum, inst.out_factors);
    LabeledOperator dev = add_scaled(
        reduced, cx(-1, 0), LabeledOperator::identity(reduced.factors));
    rep.setting_checks.push_back({s, trace_norm(dev, 1e300)});
  }
  return rep;
}

//==========================================================================
// Generalized Born rule
//==========================================================================

double born_probability(const LabeledOperator& W,
                        const std::vector<const LabeledOperator*>& chois,
                        double tol) {
  if (chois.empty()) throw Error("born_probability: no instrument elements");
  LabeledOperator m = *chois[0];
  for (std::size_t k = 1; k < chois.size(); ++k) m = kron(m, *chois[k]);

  if (canonical_order(m.factors) != canonical_order(W.factors))
    throw Error("born_probability: instrument factors " + m.factor_names() +
                " do not cover the process factors " + W.factor_names());
  m = reorder_factors(m, W.factors);

  // p = Tr[M W^T]; with both operators over the same factor order this is
  // the plain (unconjugated) entrywise pairing.
  const std::size_t n =
      static_cast<std::size_t>(W.dim()) * static_cast<std::size_t>(W.dim());
  cx p = kernels::dot_plain(m.data.data(), W.data.data(), n);
  double scale = std::max(1.0, std::abs(p));
  if (std::abs(p.imag()) > tol * scale)
    throw Error("born_probability: probability has imaginary part " +
                std::to_string(p.imag()));
  return p.real();
}

ProbabilityTable probability_table(const LabeledOperator& W,
                                   const Instrument& alice,
                                   const Instrument& bob, double tol) {
  ProbabilityTable t;
  t.cells.resize(alice.n_settings());
  for (int x = 0; x < alice.n_settings(); ++x) {
    t.cells[x].resize(bob.n_settings());
    auto ea = alice.elements_for(x);
    for (int y = 0; y < bob.n_settings(); ++y) {
      auto eb = bob.elements_for(y);
      for (const auto* a : ea)
        for (const auto* b : eb) {
          double p = born_probability(W, {&a->choi, &b->choi}, tol);
          t.cells[x][y].push_back({a->outcome, b->outcome, p});
        }
    }
  }
  return t;
}

double ProbabilityTable::setting_sum(int x, int y) const {
  double s = 0.0;
  for (const auto& c : cells[x][y]) s += c.p;
  return s;
}

double ProbabilityTable::max_sum_deviation() const {
  double dev = 0.0;
  for (std::size_t x = 0; x < cells.size(); ++x)
    for (std::size_t y = 0; y < cells[x].size(); ++y)
      dev = std::max(dev, std::abs(setting_sum(static_cast<int>(x),
                                               static_cast<int>(y)) -
                                   1.0));
  return dev;
}

SignalingReport signaling_deficit(const ProbabilityTable& table) {
  SignalingReport rep;
  const int nx = static_cast<int>(table.cells.size());
  if (nx == 0) return rep;
  const int ny = static_cast<int>(table.cells[0].size());

  auto marginal = [&](int x, int y, bool of_bob) {
    // outcome -> probability, summed over the other party's outcomes
    std::vector<double> m;
    for (const auto& c : table.cells[x][y]) {
      int o = of_bob ? c.outcome_b : c.outcome_a;
      if (static_cast<int>(m.size()) <= o) m.resize(o + 1, 0.0);
      m[static_cast<std::size_t>(o)] += c.p;
    }
    return m;
  };
  auto max_dev = [](const std::vector<double>& a,
                    const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i)
      d = std::max(d, std::abs((i < a.size() ? a[i] : 0.0) -
                               (i < b.size() ? b[i] : 0.0)));
    return d;
  };

  for (int y = 0; y < ny; ++y)
    for (int x1 = 0; x1 < nx; ++x1)
      for (int x2 = x1 + 1; x2 < nx; ++x2)
        rep.alice_to_bob = std::max(
            rep.alice_to_bob,
            max_dev(marginal(x1, y, true), marginal(x2, y, true)));
  for (int x = 0; x < nx; ++x)
    for (int y1 = 0; y1 < ny; ++y1)
      for (int y2 = y1 + 1; y2 < ny; ++y2)
        rep.bob_to_alice = std::max(
            rep.bob_to_alice,
            max_dev(marginal(x, y1, false), marginal(x, y2, false)));
  return rep;
}

//==========================================================================
// Constructors
//==========================================================================

Instrument trace_instrument(char party,
                            const std::vector<FactorLabel>& in_factors,
                            const std::vector<FactorLabel>& out_factors) {
  // Discard the input, emit the maximally mixed state: Choi = I_in (x)
  // I_out / d_out. Trace-preserving and completely positive by inspection.
  const int d_out = checked_product_dim(out_factors);
  LabeledOperator m = LabeledOperator::identity(in_factors);
  if (!out_factors.empty()) {
    m = kron(m, scale(LabeledOperator::identity(out_factors),
                      cx(1.0 / d_out, 0)));
  }
  Instrument inst;
  inst.party = party;
  inst.in_factors = in_factors;
  inst.out_factors = out_factors;
  inst.elements.push_back({0, 0, m});
  return inst;
}

Instrument prepare_instrument(char party,
                              const std::vector<FactorLabel>& in_factors,
                              const std::vector<FactorLabel>& out_factors,
                              const std::vector<cx>& density) {
  // Discard the input, emit the given state: Choi = I_in (x) rho_out.
  const int d_out = checked_product_dim(out_factors);
  if (density.size() != static_cast<std::size_t>(d_out) * d_out)
    throw Error("prepare_instrument: density is not " + std::to_string(d_out) +
                "x" + std::to_string(d_out));
  LabeledOperator rho(out_factors);
  rho.data = density;
  LabeledOperator m = in_factors.empty()
                          ? rho
                          : kron(LabeledOperator::identity(in_factors), rho);
  Instrument inst;
  inst.party = party;
  inst.in_factors = in_factors;
  inst.out_factors = out_factors;
  inst.elements.push_back({0, 0, m});
  return inst;
}

Instrument channel_instrument(char party,
                              const std::vector<FactorLabel>& in_factors,
                              const std::vector<FactorLabel>& out_factors,
                              const std::vector<std::vector<cx>>& kraus) {
  Instrument inst;
  inst.party = party;
  inst.in_factors = in_factors;
  inst.out_factors = out_factors;
  inst.elements.push_back({0, 0,
                           choi_from_kraus(kraus, in_factors, out_factors)});
  return inst;
}

Instrument measure_instrument(char party,
                              const std::vector<FactorLabel>& in_factors,
                              const std::vector<FactorLabel>& out_factors,
                              const std::vector<std::vector<cx>>& povm,
                              const std::vector<cx>& out_density) {
  // Outcome a: sigma -> Tr(E_a sigma) rho, with Choi E_a^T (x) rho.
  const int d_in = checked_product_dim(in_factors);
  const int d_out = checked_product_dim(out_factors);
  if (out_density.size() != static_cast<std::size_t>(d_out) * d_out)
    throw Error("measure_instrument: output state is not " +
                std::to_string(d_out) + "x" + std::to_string(d_out));
  LabeledOperator rho(out_factors);
  rho.data = out_density;

  Instrument inst;
  inst.party = party;
  inst.in_factors = in_factors;
  inst.out_factors = out_factors;
  for (std::size_t a = 0; a < povm.size(); ++a) {
    if (povm[a].size() != static_cast<std::size_t>(d_in) * d_in)
      throw Error("measure_instrument: POVM element is not " +
                  std::to_string(d_in) + "x" + std::to_string(d_in));
    LabeledOperator et(in_factors);
    for (int r = 0; r < d_in; ++r)
      for (int c = 0; c < d_in; ++c)
        et.at(r, c) = povm[a][static_cast<std::size_t>(c) * d_in + r];
    LabeledOperator m = out_factors.empty() ? et : kron(et, rho);
    inst.elements.push_back({static_cast<int>(a), 0, m});
  }
  return inst;
}

Instrument sample_instrument(Rng& rng, char party,
                             const std::vector<FactorLabel>& in_factors,
                             const std::vector<FactorLabel>& out_factors,
                             int n_outcomes, int n_settings) {
  const int d_in = checked_product_dim(in_factors);
  const int d_out = checked_product_dim(out_factors);
  if (n_outcomes < 1 || n_settings < 1)
    throw Error("sample_instrument: need at least one outcome and setting");
  if (d_out * n_outcomes < d_in)
    throw Error("sample_instrument: no isometry into " +
                std::to_string(d_out) + "x" + std::to_string(n_outcomes) +
                " from dimension " + std::to_string(d_in));

  Instrument inst;
  inst.party = party;
  inst.in_factors = in_factors;
  inst.out_factors = out_factors;
  for (int s = 0; s < n_settings; ++s) {
    // Haar isometry into output (x) ancilla; measuring the ancilla in the
    // computational basis defines the outcome's Kraus operator.
    std::vector<cx> v = haar_isometry(rng, d_out * n_outcomes, d_in);
    for (int a = 0; a < n_outcomes; ++a) {
      std::vector<cx> k(static_cast<std::size_t>(d_out) * d_in);
      for (int m = 0; m < d_out; ++m)
        for (int i = 0; i < d_in; ++i)
          k[static_cast<std::size_t>(m) * d_in + i] =
              v[static_cast<std::size_t>(m * n_outcomes + a) * d_in + i];
      inst.elements.push_back(
          {a, s, choi_from_kraus({k}, in_factors, out_factors)});
    }
  }
  return inst;
}

}  // namespace procmat
