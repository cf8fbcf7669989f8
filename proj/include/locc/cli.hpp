// Copyright 2026 The locc-lab Authors
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

#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "locc/errors.hpp"
#include "locc/measurements.hpp"
#include "locc/oneway.hpp"
#include "locc/protocols.hpp"
#include "locc/serialize.hpp"
#include "locc/simulate.hpp"
#include "locc/states.hpp"
#include "locc/tree.hpp"

namespace locc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2 };

struct Options {
  std::string family = "even";
  std::size_t d = 0;  // 0: family default
  std::size_t k = 0;
  std::size_t r = 1;
  std::string omega;
  std::string gamma;
  std::string alphas;
  std::string lattice;
  std::string spec_file;
  std::string priors;
  std::string out;
  std::string protocol = "twoway";
  std::string w_file;
  std::uint64_t seed = 1;
  std::size_t trials = 0;
  std::size_t workers = 0;
  double tol = -1.0;
  bool json = false;
  bool csv = false;
  bool exact = false;
  bool expect_impossible = false;
  bool allow_degenerate = false;
  bool force = false;
  bool no_corrections = false;
};

/// Bad input from the command line; reported without a trace, exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot read " + what + " from '" + s + "'");
  }
}

/// "t" is the phase e^{2πit}; "re,im" is taken literally.
inline cplx parse_phase(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() == 2) return {parse_double(parts[0], what), parse_double(parts[1], what)};
  if (parts.size() == 1) return phase_turns(parse_double(parts[0], what));
  throw UsageError(what + " must be turns (e.g. 0.13) or re,im");
}

/// "00,11,23": one Pauli string per state, one digit 0..3 per qubit.
inline std::vector<std::vector<int>> parse_lattice(const std::string& s) {
  std::vector<std::vector<int>> out;
  for (const auto& tok : split(s, ',')) {
    std::vector<int> str;
    for (char c : tok) {
      if (c < '0' || c > '3') throw UsageError("lattice labels are digits 0..3, got '" + tok + "'");
      str.push_back(c - '0');
    }
    out.push_back(std::move(str));
  }
  if (out.empty()) throw UsageError("empty lattice list");
  return out;
}

inline double tolerance(const Options& o) {
  if (o.tol > 0.0) return o.tol;
  if (const char* env = std::getenv("LOCC_LAB_TOL")) {
    const double v = parse_double(env, "LOCC_LAB_TOL");
    if (v > 0.0) return v;
  }
  return kDecisionTol;
}

inline FamilySpec make_spec(const Options& o) {
  FamilySpec s;
  if (!o.spec_file.empty()) {
    std::ifstream in(o.spec_file);
    if (!in) throw UsageError("cannot open spec file '" + o.spec_file + "'");
    try {
      s = spec_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad spec file: ") + e.what());
    }
  } else if (o.family == "even") {
    s = even_spec(o.d ? o.d : 4);
  } else if (o.family == "mod3") {
    s = mod3_spec(o.d ? o.d : 5);
  } else if (o.family == "k") {
    auto base = o.lattice.empty() ? default_lattice_base() : parse_lattice(o.lattice);
    if (o.k) {
      if (o.k > base.size()) throw UsageError("--k exceeds the number of base strings");
      base.resize(o.k);
    }
    std::vector<cplx> alphas;
    for (const auto& a : split(o.alphas, ',')) alphas.push_back(phase_turns(parse_double(a, "--alphas")));
    if (!alphas.empty() && alphas.size() != base.size()) throw UsageError("need one alpha per base string");
    s = kstate_spec(o.r, std::move(base), std::move(alphas));
    if (o.d && o.d != s.d) throw UsageError("--d does not match m + k r = " + std::to_string(s.d));
  } else if (o.family == "lattice") {
    s = lattice_triple_spec(o.lattice.empty() ? std::vector<std::vector<int>>{{0, 0}, {1, 1}, {2, 3}}
                                              : parse_lattice(o.lattice));
  } else {
    throw UsageError("--family must be even, mod3, k or lattice");
  }
  if (!o.omega.empty()) s.omega = parse_phase(o.omega, "--omega");
  if (!o.gamma.empty()) s.gamma = parse_phase(o.gamma, "--gamma");
  if (o.allow_degenerate) s.allow_degenerate = true;
  if (o.k && s.kind != FamilyKind::KState && o.k != s.k && s.kind != FamilyKind::LatticeTriple)
    throw UsageError("this family has " + std::to_string(s.k) + " states");
  return s;
}

inline std::vector<double> make_priors(const Options& o, std::size_t k) {
  if (o.priors.empty()) return uniform_priors(k);
  std::vector<double> p;
  for (const auto& x : split(o.priors, ',')) p.push_back(parse_double(x, "--priors"));
  return p;
}

/// Flags that change the report; --out and --workers do not.
inline json manifest_options(const std::vector<std::string>& args) {
  json opts = json::object();
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    if (const auto eq = a.find('='); eq != std::string::npos) {
      const std::string value = a.substr(eq + 1);
      a.resize(eq);
      if (a != "--out" && a != "--workers") opts[a] = value;
      continue;
    }
    const bool has_value = i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0;
    const std::string value = has_value ? args[i + 1] : "true";
    if (has_value) ++i;
    if (a == "--out" || a == "--workers") continue;
    opts[a] = value;
  }
  return opts;
}

struct Context {
  Options opt;
  std::string command;
  std::vector<std::string> args;  // everything after the subcommand words
  std::ostream* out = &std::cout;
  std::ostream* err = &std::cerr;
};

inline json manifest(const Context& ctx, const std::optional<FamilySpec>& spec) {
  json m{{"command", ctx.command}, {"options", manifest_options(ctx.args)}, {"tool_version", kToolVersion}};
  m["spec"] = spec ? json(*spec) : json(nullptr);
  m["tolerance"] = tolerance(ctx.opt);
  m["outputs"] = ctx.opt.out.empty() ? json::array() : json::array({ctx.opt.out});
  return m;
}

inline void emit(const Context& ctx, const std::optional<FamilySpec>& spec, const json& report,
                 const std::string& human, const std::string& csv = {}) {
  json doc{{"manifest", manifest(ctx, spec)}, {"report", report}};
  if (!ctx.opt.out.empty()) {
    std::ofstream f(ctx.opt.out);
    if (!f) throw UsageError("cannot write '" + ctx.opt.out + "'");
    f << doc.dump(2) << '\n';
  }
  if (ctx.opt.json) *ctx.out << doc.dump(2) << '\n';
  else if (ctx.opt.csv && !csv.empty()) *ctx.out << csv;
  else *ctx.out << human;
}

inline std::string fmt(double x, int prec = 6) {
  std::ostringstream s;
  s << std::setprecision(prec) << x;
  return s.str();
}

inline std::string table(const RealMatrix& m) {
  std::ostringstream s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) s << std::setw(12) << fmt(std::abs(m(i, j)) < 1e-14 ? 0.0 : m(i, j));
    s << '\n';
  }
  return s.str();
}

inline double identity_deviation(const RealMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_family(const Context& ctx, bool check) {
  const FamilySpec spec = make_spec(ctx.opt);
  const MaxEntSet set = build_family(spec);
  const OrthogonalityReport rep = check_orthogonal_mes(set, tolerance(ctx.opt));
  const Genericity gen = genericity(spec);
  json report{{"d", set.d}, {"k", set.size()}, {"orthogonality", rep}, {"genericity", gen}};
  if (!check) report["unitaries"] = set.unitaries;
  std::ostringstream h;
  h << to_string(spec.kind) << " family: d = " << set.d << ", " << set.size() << " states\n"
    << "  unitary: " << (rep.unitary ? "yes" : "no") << "  orthogonal: " << (rep.orthogonal ? "yes" : "no")
    << "  maximally entangled: " << (rep.maximally_entangled ? "yes" : "no") << '\n'
    << "  generic phases: " << (gen.generic ? "yes" : "no (" + gen.detail + ")") << '\n'
    << (rep.pass ? "PASS\n" : "FAIL\n");
  emit(ctx, spec, report, h.str());
  return rep.pass ? kPass : kFail;
}

inline int cmd_ppt(const Context& ctx, bool verify) {
  const FamilySpec spec = make_spec(ctx.opt);
  const MaxEntSet set = build_family(spec);
  const double tol = tolerance(ctx.opt);
  const Povm p = ppt_discriminator(set, ctx.opt.force);
  const PovmReport pr = validate_povm(p, tol);
  const RealMatrix dm = discrimination_matrix(set, p);
  const double dev = identity_deviation(dm);
  json report{{"povm", pr},
              {"discrimination_matrix", dm},
              {"identity_deviation", dev},
              {"floor", ppt_floor(set.size(), set.d)},
              {"guaranteed", ppt_guaranteed(set.size(), set.d)}};
  bool pass = pr.pass && dev <= tol;
  std::ostringstream h;
  h << "PPT discriminator, k = " << set.size() << ", d = " << set.d << '\n'
    << "  valid POVM: " << (pr.pass ? "yes" : "no") << "\n  discrimination matrix:\n"
    << table(dm);
  if (verify) {
    const PptReport ppt = check_ppt(p, tol);
    report["ppt"] = ppt;
    double lowest = INFINITY;
    for (double x : ppt.min_pt_eigenvalues) lowest = std::min(lowest, x);
    const bool above_floor = lowest >= ppt.bound - tol;
    report["above_floor"] = above_floor;
    pass = pass && ppt.pass && above_floor;
    h << "  min PT eigenvalue: " << fmt(lowest, 10) << "  floor (1/k)(1 - 2(k-1)/d): " << fmt(ppt.bound, 10) << '\n';
  }
  report["pass"] = pass;
  h << (pass ? "PASS\n" : "FAIL\n");
  emit(ctx, spec, report, h.str(), confusion_csv(dm));
  return pass ? kPass : kFail;
}

inline int cmd_certify(const Context& ctx) {
  const FamilySpec spec = make_spec(ctx.opt);
  const ImpossibilityCertificate cert = certify_impossible(build_family(spec));
  json report = cert;
  std::ostringstream h;
  h << "one-way certificate for " << to_string(spec.kind) << " d = " << spec.d << '\n'
    << "  null space dimension: " << cert.nullspace_dim << "  top block " << cert.top_block_size << "x"
    << cert.top_block_size << ", image dimension " << cert.top_block_image_dim << '\n'
    << "  forced scalar: " << (cert.forced_scalar ? "yes" : "no") << '\n';
  if (cert.reduction_checked) h << "  reduction holds: " << (cert.reduction_holds ? "yes" : "no") << '\n';
  h << "  conclusion: " << to_string(cert.conclusion) << "\n  note: " << cert.caveat << '\n';
  emit(ctx, spec, report, h.str());
  if (ctx.opt.expect_impossible && cert.conclusion != Conclusion::OneWayImpossible) return kFail;
  return kPass;
}

inline int cmd_prop1(const Context& ctx) {
  const FamilySpec spec = make_spec(ctx.opt);
  const MaxEntSet set = build_family(spec);
  IsometryCandidate cand{ComplexMatrix::identity(set.d)};
  if (!ctx.opt.w_file.empty()) {
    std::ifstream in(ctx.opt.w_file);
    if (!in) throw UsageError("cannot open '" + ctx.opt.w_file + "'");
    try {
      cand.w = json::parse(in).get<ComplexMatrix>();
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad candidate file: ") + e.what());
    }
  }
  const Prop1Report rep = prop1_check(set, cand, tolerance(ctx.opt));
  std::ostringstream h;
  h << "rank-one isometry check, " << cand.w.cols() << " columns\n  largest diagonal entry: " << fmt(rep.max_violation)
    << '\n'
    << (rep.pass ? "PASS (one-way distinguishable)\n" : "FAIL (this candidate does not work)\n");
  emit(ctx, spec, json(rep), h.str());
  return rep.pass ? kPass : kFail;
}

inline SimConfig sim_config(const Options& o, std::size_t k) {
  SimConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.priors = make_priors(o, k);
  cfg.workers = o.workers;
  return cfg;
}

inline int cmd_randomized(const Context& ctx) {
  const FamilySpec spec = make_spec(ctx.opt);
  const MaxEntSet set = build_family(spec);
  const auto priors = make_priors(ctx.opt, set.size());
  const double tol = tolerance(ctx.opt);
  const double error = randomized_error_exact(set, priors);
  const RandomizedFrame frame = prepare_randomized(set, priors);
  const double bound = 2.0 / (3.0 * static_cast<double>(set.d));
  const bool uniform = ctx.opt.priors.empty();
  bool pass = !uniform || error <= bound + tol;
  json report{{"error", error},
              {"bound", bound},
              {"uniform_priors", uniform},
              {"order", frame.order},
              {"exact_confusion", randomized_confusion_exact(set, priors)}};
  std::ostringstream h;
  h << "randomized one-way protocol, d = " << set.d << "\n  perfectly identified: states " << frame.order[0]
    << " and " << frame.order[1] << "\n  exact error: " << fmt(error, 12) << "  bound 2/(3d): " << fmt(bound, 12)
    << '\n';
  std::string csv;
  if (ctx.opt.trials > 0) {
    const Comparison c = compare_exact_vs_mc(randomized_protocol(set, priors), set, sim_config(ctx.opt, set.size()));
    report["monte_carlo"] = c;
    pass = pass && c.pass;
    csv = comparison_csv(c);
    h << "  Monte Carlo: " << c.sim.trials << " trials, success " << fmt(c.sim.success_rate, 8) << " (exact "
      << fmt(c.sim.exact_success, 8) << ", z = " << fmt(c.sim.z_score, 3) << ")\n";
  }
  report["pass"] = pass;
  h << (pass ? "PASS\n" : "FAIL\n");
  emit(ctx, spec, report, h.str(), csv);
  return pass ? kPass : kFail;
}

inline ProtocolTree protocol_for(const FamilySpec& spec, const Options& o) {
  if (o.protocol == "twoway") return build_twoway(spec);
  if (o.protocol == "decide0") return ProtocolTree::decide(0);
  throw UsageError("--protocol must be twoway, randomized or decide0");
}

inline json tree_summary(const ProtocolTree& t) {
  return json{{"round_count", round_count(t)}, {"one_way", is_one_way(t)}, {"leaves", leaf_count(t)}};
}

inline int cmd_twoway(const Context& ctx) {
  const FamilySpec spec = make_spec(ctx.opt);
  const MaxEntSet set = build_family(spec);
  const ProtocolTree tree = build_twoway(spec);
  const auto priors = make_priors(ctx.opt, set.size());
  const double tol = tolerance(ctx.opt);
  const ExactEvaluation ev = evaluate_exact(tree, set, priors, tol);
  const double dev = identity_deviation(ev.confusion);
  bool pass = dev <= tol;
  json report{{"exact", ev}, {"identity_deviation", dev}, {"tree", tree_summary(tree)}};
  std::ostringstream h;
  h << "protocol for " << to_string(spec.kind) << " d = " << set.d << ": " << round_count(tree) << " rounds, "
    << (is_one_way(tree) ? "one-way" : "two-way") << ", " << leaf_count(tree) << " leaves\n"
    << "  exact confusion:\n"
    << table(ev.confusion) << "  success: " << fmt(ev.success, 12) << '\n';
  std::string csv = confusion_csv(ev.confusion);
  if (ctx.opt.trials > 0 && !ctx.opt.exact) {
    const Comparison c = compare_exact_vs_mc(tree, set, sim_config(ctx.opt, set.size()));
    report["monte_carlo"] = c;
    pass = pass && c.pass;
    csv = comparison_csv(c);
    h << "  Monte Carlo: " << c.sim.trials << " trials, success " << fmt(c.sim.success_rate, 8) << '\n';
  }
  report["pass"] = pass;
  h << (pass ? "PASS\n" : "FAIL\n");
  emit(ctx, spec, report, h.str(), csv);
  return pass ? kPass : kFail;
}

inline int cmd_lattice_sweep(const Context& ctx) {
  const double tol = tolerance(ctx.opt);
  std::size_t perfect = 0, one_way = 0, teleport = 0, max_rounds = 0;
  double worst = 0.0;
  json failures = json::array();
  const auto triples = all_lattice_triples();
  for (const auto& tr : triples) {
    const ProtocolTree t = build_lattice_triple_protocol(tr);
    const ExactEvaluation ev = evaluate_exact(t, build_lattice_set(lattice_triple_spec(tr)), uniform_priors(3), tol);
    const double dev = identity_deviation(ev.confusion);
    worst = std::max(worst, dev);
    if (dev <= tol) ++perfect;
    else failures.push_back(tr);
    if (is_one_way(t)) ++one_way;
    if (t.label == "alice-bell" || t.label == "alice-swap") ++teleport;
    max_rounds = std::max(max_rounds, round_count(t));
  }
  const bool pass = perfect == triples.size() && one_way == triples.size() && max_rounds <= 2;
  json report{{"triples", triples.size()}, {"perfect", perfect},           {"one_way", one_way},
              {"teleport_branch", teleport}, {"max_round_count", max_rounds}, {"max_identity_deviation", worst},
              {"failures", failures},      {"pass", pass}};
  std::ostringstream h;
  h << "lattice sweep: " << perfect << "/" << triples.size() << " perfect, " << one_way << " one-way, " << teleport
    << " via teleportation, max rounds " << max_rounds << ", max deviation " << fmt(worst, 3) << '\n'
    << (pass ? "PASS\n" : "FAIL\n");
  emit(ctx, std::nullopt, report, h.str());
  return pass ? kPass : kFail;
}

inline int cmd_simulate(const Context& ctx) {
  const FamilySpec spec = make_spec(ctx.opt);
  const MaxEntSet set = build_family(spec);
  if (ctx.opt.trials == 0) throw UsageError("simulate needs --trials >= 1");
  const SimConfig cfg = sim_config(ctx.opt, set.size());
  Comparison c;
  json summary;
  if (ctx.opt.protocol == "randomized") {
    c = compare_exact_vs_mc(randomized_protocol(set, cfg.priors), set, cfg);
    summary = json{{"protocol", "randomized"}};
  } else {
    const ProtocolTree tree = protocol_for(spec, ctx.opt);
    c = compare_exact_vs_mc(tree, set, cfg);
    summary = tree_summary(tree);
    summary["protocol"] = ctx.opt.protocol;
  }
  json report{{"comparison", c}, {"protocol", summary}, {"pass", c.pass}};
  std::ostringstream h;
  h << "simulation: " << c.sim.trials << " trials, seed " << c.sim.seed << "\n  success " << fmt(c.sim.success_rate, 8)
    << "  exact " << fmt(c.sim.exact_success, 8) << "  z = " << fmt(c.sim.z_score, 3) << "\n  flagged cells: "
    << c.flag_count << '\n'
    << (c.pass ? "PASS\n" : "FAIL\n");
  emit(ctx, spec, report, h.str(), comparison_csv(c));
  return c.pass ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// Dispatch

inline void add_common(CLI::App* app, Options& o) {
  app->add_option("--family", o.family, "state family: even, mod3, k, lattice")->capture_default_str();
  app->add_option("--d", o.d, "local dimension (default: 4 even, 5 mod3)");
  app->add_option("--k", o.k, "number of states (k family: first k base strings)");
  app->add_option("--r", o.r, "block multiplicity for the k family")->capture_default_str();
  app->add_option("--omega", o.omega, "phase omega as turns t (e^{2 pi i t}) or re,im");
  app->add_option("--gamma", o.gamma, "phase gamma as turns t or re,im");
  app->add_option("--alphas", o.alphas, "k family phases as comma-separated turns");
  app->add_option("--lattice", o.lattice, "Pauli strings, e.g. 00,11,23");
  app->add_option("--spec", o.spec_file, "family spec as a JSON file");
  app->add_option("--priors", o.priors, "comma-separated priors (default uniform)");
  app->add_option("--tol", o.tol, "decision tolerance (default 1e-9, or LOCC_LAB_TOL)");
  app->add_option("--out", o.out, "also write the JSON report with its manifest to this file");
  app->add_flag("--json", o.json, "print the JSON report");
  app->add_flag("--csv", o.csv, "print confusion cells as CSV");
  app->add_flag("--allow-degenerate", o.allow_degenerate, "build families with non-generic phases");
}

inline void add_sim(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "random seed")->capture_default_str();
  app->add_option("--trials", o.trials, "Monte Carlo trials");
  app->add_option("--workers", o.workers, "worker threads (does not change results)");
}

inline int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"locc-lab: LOCC discrimination of maximally entangled states"};
  app.require_subcommand(1);
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  Options& o = ctx.opt;
  std::function<int()> action;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, const std::string& command,
                  std::function<int()> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, o);
    sub->callback([&, command, fn] {
      ctx.command = command;
      action = fn;
    });
    return sub;
  };

  CLI::App* family = app.add_subcommand("family", "build or check a state family")->require_subcommand(1);
  leaf(family, "build", "print the unitaries of a family", "family build", [&] { return cmd_family(ctx, false); });
  leaf(family, "check", "check orthogonality and maximal entanglement", "family check",
       [&] { return cmd_family(ctx, true); });

  CLI::App* ppt = app.add_subcommand("ppt", "PPT discriminator")->require_subcommand(1);
  for (const auto& [name, verify] : {std::pair{"construct", false}, std::pair{"verify", true}}) {
    CLI::App* sub = leaf(ppt, name, verify ? "check the partial-transpose spectrum" : "build and validate the POVM",
                         std::string("ppt ") + name, [&, v = verify] { return cmd_ppt(ctx, v); });
    sub->add_flag("--force", o.force, "build even when k > d/2 + 1");
  }

  CLI::App* oneway = app.add_subcommand("oneway", "one-way LOCC analysis")->require_subcommand(1);
  leaf(oneway, "certify", "null-space impossibility certificate", "oneway certify", [&] { return cmd_certify(ctx); })
      ->add_flag("--expect-impossible", o.expect_impossible, "exit 1 unless the conclusion is OneWayImpossible");
  leaf(oneway, "prop1", "check a rank-one measurement candidate", "oneway prop1", [&] { return cmd_prop1(ctx); })
      ->add_option("--w", o.w_file, "candidate W as a JSON matrix (default identity)");
  add_sim(leaf(oneway, "randomized", "randomized one-way protocol and its exact error", "oneway randomized",
               [&] { return cmd_randomized(ctx); }),
          o);

  CLI::App* twoway = app.add_subcommand("twoway", "two-way protocols")->require_subcommand(1);
  CLI::App* run = leaf(twoway, "run", "build and evaluate the family's protocol", "twoway run",
                       [&] { return cmd_twoway(ctx); });
  run->add_flag("--exact", o.exact, "exact evaluation only");
  add_sim(run, o);

  CLI::App* lattice = app.add_subcommand("lattice", "lattice-state triples")->require_subcommand(1);
  leaf(lattice, "sweep", "all 560 triples of two-qubit lattice states", "lattice sweep",
       [&] { return cmd_lattice_sweep(ctx); });

  CLI::App* sim = leaf(&app, "simulate", "Monte Carlo against exact evaluation", "simulate",
                       [&] { return cmd_simulate(ctx); });
  add_sim(sim, o);
  sim->add_option("--protocol", o.protocol, "twoway, randomized or decide0")->capture_default_str();

  std::string manifest_file;
  CLI::App* replay = app.add_subcommand("replay", "re-run the command recorded in a report's manifest");
  replay->add_option("manifest", manifest_file, "report or manifest JSON")->required();
  replay->add_option("--out", o.out, "write the reproduced report here");
  replay->callback([&] { ctx.command = "replay"; });

  std::vector<const char*> cargs;
  cargs.push_back("locc-lab");
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  if (ctx.command == "replay") {
    json doc;
    try {
      std::ifstream in(manifest_file);
      if (!in) throw UsageError("cannot open '" + manifest_file + "'");
      doc = json::parse(in);
      const json& m = doc.contains("manifest") ? doc.at("manifest") : doc;
      std::vector<std::string> again = split(m.at("command").get<std::string>(), ' ');
      for (const auto& [flag, value] : m.at("options").items()) {
        again.push_back(flag);
        if (value.get<std::string>() != "true") again.push_back(value.get<std::string>());
      }
      // Pin the tolerance that was in effect, whatever LOCC_LAB_TOL says now.
      if (!m.at("options").contains("--tol") && m.contains("tolerance") &&
          m.at("tolerance").get<double>() != tolerance(Options{})) {
        std::ostringstream t;
        t << std::setprecision(17) << m.at("tolerance").get<double>();
        again.push_back("--tol");
        again.push_back(t.str());
      }
      if (!o.out.empty()) {
        again.push_back("--out");
        again.push_back(o.out);
      }
      return dispatch(again, out, err);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << '\n';
    } catch (const json::exception& e) {
      err << "error: bad manifest: " << e.what() << '\n';
    }
    return kUsage;
  }

  // The words before the first flag name the command; the rest are its options.
  std::size_t first_flag = 0;
  while (first_flag < argv.size() && argv[first_flag].rfind("--", 0) != 0) ++first_flag;
  ctx.args.assign(argv.begin() + static_cast<std::ptrdiff_t>(first_flag), argv.end());
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return dispatch(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace locc::cli
