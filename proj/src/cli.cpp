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

#include "procmat/cli.hpp"

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "procmat/io.hpp"
#include "procmat/nogo.hpp"

namespace procmat {

namespace {

using nlohmann::json;

struct GlobalOpts {
  double tol = kDefaultTol;
  unsigned long long seed = 0;
  std::string out_path;
  bool json_out = false;

  // Emits the machine document on --json and writes it on --out.
  void deliver(const json& doc, const std::string& human) const {
    if (json_out)
      std::cout << doc.dump(2) << "\n";
    else
      std::cout << human;
    if (!out_path.empty()) write_json_file(out_path, doc);
  }
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string residual_line(const std::string& label, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "  %-26s %.3e\n", label.c_str(), v);
  return buf;
}

//--------------------------------------------------------------------------
// validate
//--------------------------------------------------------------------------

std::vector<std::string> failed_process_checks(const ValidityReport& r,
                                               double tol) {
  std::vector<std::string> bad;
  if (r.herm_dev > tol) bad.push_back("hermiticity");
  if (r.min_eig < -tol) bad.push_back("positivity");
  if (r.trace_dev > tol * std::max(1.0, std::abs(r.trace)))
    bad.push_back("trace normalization");
  if (r.marginal_a_residual > tol) bad.push_back("first-party marginal");
  if (r.marginal_b_residual > tol) bad.push_back("second-party marginal");
  if (r.joint_output_residual > tol) bad.push_back("joint-output constraint");
  if (r.projector_residual > tol) bad.push_back("validity projector");
  return bad;
}

json process_report_json(const ProcessMatrix& w, const ValidityReport& r,
                         double tol) {
  json doc{{"kind", "process"},
           {"parties", w.parties.size()},
           {"dimension", w.op.dim()},
           {"normalized", w.normalized},
           {"trace", r.trace},
           {"residuals",
            {{"hermiticity", r.herm_dev},
             {"min_eigenvalue", r.min_eig},
             {"trace_normalization", r.trace_dev},
             {"marginal_a", r.marginal_a_residual},
             {"marginal_b", r.marginal_b_residual},
             {"joint_output", r.joint_output_residual},
             {"projector", r.projector_residual}}},
           {"pass", r.pass(tol)}};
  if (w.parties.size() == 2 && r.pass(tol))
    doc["causal_class"] = to_string(causal_class(w, tol));
  return doc;
}

std::string process_report_text(const ProcessMatrix& w,
                                const ValidityReport& r, double tol) {
  std::string s = "process: " + std::to_string(w.parties.size()) +
                  " parties, dimension " + std::to_string(w.op.dim()) +
                  (w.normalized ? ", normalized" : ", unnormalized") + "\n";
  s += residual_line("hermiticity deviation", r.herm_dev);
  s += residual_line("smallest eigenvalue", r.min_eig);
  s += "  trace                      " + fmt("%.17g", r.trace) + "\n";
  if (w.normalized)
    s += residual_line("trace deviation", r.trace_dev);
  if (w.parties.size() == 2) {
    s += residual_line("first-party marginal", r.marginal_a_residual);
    s += residual_line("second-party marginal", r.marginal_b_residual);
    s += residual_line("joint-output constraint", r.joint_output_residual);
  }
  s += residual_line("validity projector", r.projector_residual);
  if (r.pass(tol)) {
    s += "verdict: VALID";
    if (w.parties.size() == 2)
      s += std::string(", causal class ") +
           to_string(causal_class(w, tol));
    s += "\n";
  } else {
    s += "verdict: INVALID (";
    const auto bad = failed_process_checks(r, tol);
    for (std::size_t i = 0; i < bad.size(); ++i)
      s += (i ? ", " : "") + bad[i];
    s += ")\n";
  }
  return s;
}

int cmd_validate(const std::string& file, const GlobalOpts& g) {
  json doc = read_json_file(file);
  const std::string schema = schema_of(doc);
  if (schema == kProcessSchema) {
    ProcessMatrix w = process_from_json(doc);
    ValidityReport r = validate_process(w, g.tol);
    g.deliver(process_report_json(w, r, g.tol),
              process_report_text(w, r, g.tol));
    return r.pass(g.tol) ? 0 : 1;
  }
  if (schema == kInstrumentSchema) {
    Instrument ins = instrument_from_json(doc);
    InstrumentReport r = validate_instrument(ins, g.tol);
    json elems = json::array(), settings = json::array();
    std::string s = "instrument: party " + std::string(1, ins.party) + ", " +
                    std::to_string(ins.elements.size()) + " elements, " +
                    std::to_string(ins.n_settings()) + " settings\n";
    for (const auto& e : r.element_checks) {
      elems.push_back({{"outcome", e.outcome},
                       {"setting", e.setting},
                       {"min_eigenvalue", e.min_eig},
                       {"hermiticity", e.herm_dev}});
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "  element a=%d x=%d   min eig %.3e  herm %.3e\n",
                    e.outcome, e.setting, e.min_eig, e.herm_dev);
      s += buf;
    }
    for (const auto& c : r.setting_checks) {
      settings.push_back({{"setting", c.setting},
                          {"tp_residual", c.tp_residual}});
      s += residual_line("setting " + std::to_string(c.setting) +
                         " trace preservation", c.tp_residual);
    }
    const bool ok = r.pass(g.tol);
    s += ok ? "verdict: VALID\n" : "verdict: INVALID\n";
    g.deliver(json{{"kind", "instrument"},
                   {"elements", elems},
                   {"settings", settings},
                   {"pass", ok}},
              s);
    return ok ? 0 : 1;
  }
  throw Error("cannot validate documents with schema '" + schema + "'");
}

//--------------------------------------------------------------------------
// born
//--------------------------------------------------------------------------

int cmd_born(const std::string& process_file, const std::string& a_file,
             const std::string& b_file, const std::vector<int>& setting,
             const GlobalOpts& g) {
  ProcessMatrix w = process_from_json(read_json_file(process_file));
  Instrument ia = instrument_from_json(read_json_file(a_file));
  Instrument ib = instrument_from_json(read_json_file(b_file));
  ProbabilityTable t = probability_table(w.op, ia, ib, g.tol);

  const int nx = static_cast<int>(t.cells.size());
  const int ny = nx ? static_cast<int>(t.cells[0].size()) : 0;
  int x_lo = 0, x_hi = nx, y_lo = 0, y_hi = ny;
  if (!setting.empty()) {
    if (setting.size() != 2 || setting[0] < 0 || setting[0] >= nx ||
        setting[1] < 0 || setting[1] >= ny)
      throw Error("--setting wants two in-range setting indices");
    x_lo = setting[0], x_hi = setting[0] + 1;
    y_lo = setting[1], y_hi = setting[1] + 1;
  }

  bool anomalous = false;
  json settings = json::array();
  std::string s;
  for (int x = x_lo; x < x_hi; ++x)
    for (int y = y_lo; y < y_hi; ++y) {
      json cells = json::array();
      s += "setting x=" + std::to_string(x) + " y=" + std::to_string(y) +
           "\n";
      bool neg = false;
      for (const auto& c : t.cells[static_cast<std::size_t>(x)]
                                  [static_cast<std::size_t>(y)]) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  p(a=%d, b=%d) = %.12g\n",
                      c.outcome_a, c.outcome_b, c.p);
        s += buf;
        neg = neg || c.p < -g.tol;
        cells.push_back({{"a", c.outcome_a}, {"b", c.outcome_b},
                         {"p", c.p}});
      }
      const double sum = t.setting_sum(x, y);
      const bool bad = neg || std::abs(sum - 1.0) > g.tol;
      anomalous = anomalous || bad;
      s += "  sum = " + fmt("%.12g", sum) +
           (bad ? "   ANOMALOUS (outcome probabilities do not form a "
                  "distribution)\n"
                : "\n");
      settings.push_back({{"x", x}, {"y", y}, {"sum", sum},
                          {"anomalous", bad}, {"cells", cells}});
    }
  s += anomalous ? "verdict: ANOMALOUS\n" : "verdict: CONSISTENT\n";
  g.deliver(json{{"kind", "born"}, {"settings", settings},
                 {"pass", !anomalous}},
            s);
  return anomalous ? 1 : 0;
}

//--------------------------------------------------------------------------
// compose
//--------------------------------------------------------------------------

int cmd_compose(const std::string& f1, const std::string& f2,
                const GlobalOpts& g) {
  ProcessMatrix w1 = process_from_json(read_json_file(f1));
  ProcessMatrix w2 = process_from_json(read_json_file(f2));
  ProcessMatrix composite = tensor_compose(w1, w2);
  ValidityReport r = validate_process(composite, g.tol);
  std::string s = "composite of " + f1 + " and " + f2 + "\n" +
                  process_report_text(composite, r, g.tol);
  json doc{{"kind", "compose"},
           {"report", process_report_json(composite, r, g.tol)},
           {"composite", to_json(composite)}};
  if (g.json_out)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << s;
  // --out stores the composite process itself, reusable as an input.
  if (!g.out_path.empty()) write_json_file(g.out_path, to_json(composite));
  return r.pass(g.tol) ? 0 : 1;
}

//--------------------------------------------------------------------------
// certify
//--------------------------------------------------------------------------

int cmd_certify(const std::vector<int>& dims, bool control,
                const GlobalOpts& g) {
  CertifyOptions opts;
  opts.tol = g.tol;
  opts.seed = g.seed;
  opts.control_same_order = control;
  Certificate cert = theorem_certificate(dims, opts);
  g.deliver(to_json(cert), to_text(cert));
  return cert.pass() ? 0 : 1;
}

//--------------------------------------------------------------------------
// basis
//--------------------------------------------------------------------------

int cmd_basis(int dim, const std::vector<int>& ports, const GlobalOpts& g) {
  if ((dim > 0) == !ports.empty())
    throw Error("basis wants exactly one of --dim or --ports");
  if (dim > 0) {
    std::vector<GellMannElement> basis = gellmann_basis(dim);
    std::string s = "Hermitian operator basis, dimension " +
                    std::to_string(dim) + ": " +
                    std::to_string(basis.size()) + " elements\n";
    json elems = json::array();
    for (const auto& e : basis) {
      json evals = json::array();
      s += "  " + e.name() + "  eigenvalues [";
      for (int q = 0; q < e.d; ++q) {
        s += (q ? ", " : "") + fmt("%g", e.evals[static_cast<std::size_t>(q)]);
        evals.push_back(e.evals[static_cast<std::size_t>(q)]);
      }
      s += "]\n";
      elems.push_back({{"name", e.name()}, {"evals", evals}});
    }
    g.deliver(json{{"kind", "basis"}, {"dim", dim}, {"elements", elems}}, s);
    return 0;
  }

  PtiBasis b = pti_basis(ports);
  const long long predicted = predicted_count(ports);
  const double rank = projector_rank_trace(ports);
  std::string s;
  json elems = json::array();
  for (std::size_t i = 0; i < b.elements.size(); ++i) {
    const auto& e = b.elements[i];
    std::string names, sig;
    json jf = json::array(), js = json::array();
    for (std::size_t p = 0; p < b.ports.size(); ++p) {
      const std::string n = b.factor(e, static_cast<int>(p)).name();
      names += (p ? " " : "") + n;
      jf.push_back(n);
    }
    for (int p : e.signature) {
      sig += (sig.empty() ? "" : " ") + b.ports[static_cast<std::size_t>(p)]
                                           .name();
      js.push_back(b.ports[static_cast<std::size_t>(p)].name());
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "  %4zu  ", i);
    s += buf + names + "   non-identity on {" + sig + "}\n";
    elems.push_back({{"factors", jf}, {"signature", js}});
  }
  s += "kept " + std::to_string(b.elements.size()) + " of " +
       std::to_string(b.total_products) + " product terms (counting "
       "formula " + std::to_string(predicted) + ", projector rank " +
       fmt("%.6f", rank) + ")\n";
  const bool ok =
      static_cast<long long>(b.elements.size()) == predicted &&
      std::abs(rank - static_cast<double>(b.elements.size())) < 1e-6;
  s += ok ? "verdict: counts agree\n" : "verdict: COUNT MISMATCH\n";
  json doc{{"kind", "basis"},
           {"ports", ports},
           {"kept", b.elements.size()},
           {"total_products", b.total_products},
           {"predicted", predicted},
           {"rank_trace", rank},
           {"elements", elems},
           {"pass", ok}};
  g.deliver(doc, s);
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"process-matrix verification toolkit"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--tol", g.tol, "numerical tolerance")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for sampled checks")
      ->capture_default_str();
  app.add_option("--out", g.out_path, "write the result document here");
  app.add_flag("--json", g.json_out, "machine-readable stdout");

  std::string validate_file;
  CLI::App* validate =
      app.add_subcommand("validate", "check a process or instrument file");
  validate->add_option("file", validate_file, "document to check")
      ->required();

  std::string born_process, born_a, born_b;
  std::vector<int> born_setting;
  CLI::App* born = app.add_subcommand(
      "born", "outcome probabilities of a process with two instruments");
  born->add_option("process", born_process, "process file")->required();
  born->add_option("instrument_a", born_a, "first party's instrument file")
      ->required();
  born->add_option("instrument_b", born_b, "second party's instrument file")
      ->required();
  born->add_option("--setting", born_setting,
                   "restrict to one setting pair x y")
      ->expected(2);

  std::string comp_1, comp_2;
  CLI::App* compose = app.add_subcommand(
      "compose", "tensor two processes into one and validate the result");
  compose->add_option("first", comp_1, "first process file")->required();
  compose->add_option("second", comp_2, "second process file")->required();

  std::vector<int> certify_dims;
  bool control = false;
  CLI::App* certify = app.add_subcommand(
      "certify", "machine-checked certificate of the composition no-go "
                 "theorem");
  certify->add_option("--dims", certify_dims,
                      "port dimensions d1 d2 d3 d4")
      ->expected(4)
      ->required();
  certify->add_flag("--control-same-order", control,
                    "replace the witness by a same-order pair (the "
                    "counterexample must then vanish)");

  int basis_dim = 0;
  std::vector<int> basis_ports;
  CLI::App* basis = app.add_subcommand(
      "basis", "operator bases underlying the certificate");
  basis->add_option("--dim", basis_dim, "single-space basis dimension");
  basis->add_option("--ports", basis_ports,
                    "port dimensions of the product basis")
      ->expected(4);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(validate_file, g);
    if (app.got_subcommand(born))
      return cmd_born(born_process, born_a, born_b, born_setting, g);
    if (app.got_subcommand(compose)) return cmd_compose(comp_1, comp_2, g);
    if (app.got_subcommand(certify))
      return cmd_certify(certify_dims, control, g);
    if (app.got_subcommand(basis)) return cmd_basis(basis_dim, basis_ports, g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace procmat
