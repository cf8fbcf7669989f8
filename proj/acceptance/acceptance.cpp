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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "locc/cli.hpp"
#include "locc/linalg.hpp"
#include "locc/measurements.hpp"
#include "locc/oneway.hpp"
#include "locc/protocols.hpp"
#include "locc/simulate.hpp"
#include "locc/states.hpp"

using namespace locc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0: no runtime budget
  std::function<Outcome()> check;
};

double deviation_from_identity(const RealMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Every built-in three-state family up to local dimension 16.
std::vector<MaxEntSet> three_state_families(std::size_t max_d) {
  std::vector<MaxEntSet> out;
  for (std::size_t d = 4; d <= max_d; d += 2) out.push_back(build_even_family(even_spec(d)));
  for (std::size_t d = 5; d <= max_d; d += 3) out.push_back(build_mod3_family(mod3_spec(d)));
  const std::vector<std::vector<int>> base3 = {{0, 0}, {1, 1}, {2, 2}};
  for (std::size_t r = 1; 4 + 3 * r <= max_d; ++r) out.push_back(build_k_family(kstate_spec(r, base3)));
  return out;
}

std::string family_name(const MaxEntSet& s) {
  const char* kind = s.spec.kind == FamilyKind::EvenD ? "even" : s.spec.kind == FamilyKind::Mod3 ? "mod3" : "k3";
  return std::string(kind) + " d=" + std::to_string(s.d);
}

Outcome pt_spectrum() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t d : {3u, 4u, 5u, 8u}) {
    const auto ev = eigenvalues_hermitian(partial_transpose(projector(std_mes(d)), d, d));
    const double inv = 1.0 / static_cast<double>(d);
    std::size_t neg = 0, pos = 0, zero = 0;
    for (double x : ev) {
      if (std::abs(x + inv) <= 1e-10) ++neg;
      else if (std::abs(x - inv) <= 1e-10) ++pos;
      else ++zero;
      worst = std::max(worst, std::min(std::abs(x + inv), std::abs(x - inv)));
    }
    if (neg != d * (d - 1) / 2 || pos != d * (d + 1) / 2 || zero != 0) {
      o.pass = false;
      o.detail += "d=" + std::to_string(d) + " multiplicities " + std::to_string(neg) + "/" + std::to_string(pos) + "; ";
    }
  }
  o.detail += "max deviation " + sci(worst);
  return o;
}

Outcome ppt_discriminators() {
  Outcome o;
  const std::vector<std::size_t> dims = {4, 5, 6, 8, 10, 16};
  std::vector<MaxEntSet> sets;
  for (std::size_t d : dims) {
    if (d % 2 == 0) sets.push_back(build_even_family(even_spec(d)));
    if (d >= 5 && (d - 2) % 3 == 0) sets.push_back(build_mod3_family(mod3_spec(d)));
    if (d >= 7 && (d - 4) % 3 == 0) sets.push_back(build_k_family(kstate_spec((d - 4) / 3, {{0, 0}, {1, 1}, {2, 2}})));
  }
  for (const auto& idx : all_lattice_triples()) sets.push_back(build_lattice_set(lattice_triple_spec(idx)));
  double worst_dm = 0.0, worst_margin = 1.0;
  for (const auto& set : sets) {
    const Povm p = ppt_discriminator(set);
    const double dev = deviation_from_identity(discrimination_matrix(set, p));
    const PptReport rep = check_ppt(p);
    worst_dm = std::max(worst_dm, dev);
    for (double x : rep.min_pt_eigenvalues) worst_margin = std::min(worst_margin, x - ppt_floor(3, set.d));
    if (dev > 1e-9) {
      o.pass = false;
      o.detail += family_name(set) + " matrix off by " + sci(dev) + "; ";
    }
  }
  if (worst_margin < -1e-9) o.pass = false;
  o.detail += std::to_string(sets.size()) + " sets, max |D - I| " + sci(worst_dm) + ", min PT margin over floor " +
              sci(worst_margin);
  return o;
}

Outcome certificates() {
  Outcome o;
  std::vector<std::string> seen;
  auto expect = [&](const MaxEntSet& set, Conclusion want) {
    const auto cert = certify_impossible(set);
    const bool ok = cert.conclusion == want;
    o.pass = o.pass && ok;
    seen.push_back(family_name(set) + (ok ? "" : "!"));
  };
  for (std::size_t d : {4u, 6u, 8u, 10u}) expect(build_even_family(even_spec(d)), Conclusion::OneWayImpossible);
  for (std::size_t d : {5u, 8u, 11u}) expect(build_mod3_family(mod3_spec(d)), Conclusion::OneWayImpossible);
  FamilySpec degenerate = even_spec(4, 1.0, 1.0);
  degenerate.allow_degenerate = true;
  expect(build_even_family(degenerate), Conclusion::Inconclusive);
  o.detail = "7 impossible + 1 inconclusive control";
  for (const auto& s : seen)
    if (s.back() == '!') o.detail += "; wrong: " + s;
  return o;
}

Outcome randomized_bound() {
  Outcome o;
  double worst = -1.0;
  std::size_t count = 0;
  auto check = [&](const MaxEntSet& set) {
    const double err = randomized_error_exact(set, uniform_priors(3));
    const double slack = err - 2.0 / (3.0 * static_cast<double>(set.d));
    worst = std::max(worst, slack);
    ++count;
    if (slack > 1e-9) {
      o.pass = false;
      o.detail += family_name(set) + " error " + sci(err) + "; ";
    }
  };
  for (const auto& set : three_state_families(16)) check(set);
  for (const auto& idx : all_lattice_triples()) check(build_lattice_set(lattice_triple_spec(idx)));

  const MaxEntSet ivu = reorder(build_even_family(even_spec(4)), {0, 2, 1});
  const double tight = randomized_error_exact(ivu, uniform_priors(3));
  if (std::abs(tight - 1.0 / 6.0) > 1e-9) o.pass = false;

  SimConfig cfg;
  cfg.seed = 20240601;
  cfg.trials = 100000;
  const Comparison mc = compare_exact_vs_mc(randomized_protocol(ivu, uniform_priors(3)), ivu, cfg);
  if (std::abs(mc.sim.z_score) > 4.0 || !mc.pass) o.pass = false;
  o.detail += std::to_string(count) + " sets, max error - 2/(3d) = " + sci(worst) + ", d=4 error " + sci(tight) +
              ", MC success " + sci(mc.sim.success_rate) + " (z " + sci(mc.sim.z_score) + ", " +
              std::to_string(mc.flag_count) + " cells flagged)";
  return o;
}

Outcome twoway_separation() {
  Outcome o;
  double worst = 0.0;
  auto run = [&](const MaxEntSet& set, const ProtocolTree& t) {
    if (certify_impossible(set).conclusion != Conclusion::OneWayImpossible) {
      o.pass = false;
      o.detail += family_name(set) + " not certified; ";
    }
    validate_tree(t, set.d, set.d, 3);
    const double dev = deviation_from_identity(evaluate_exact(t, set, uniform_priors(3)).confusion);
    worst = std::max(worst, dev);
    if (dev > 1e-9 || is_one_way(t)) o.pass = false;
  };
  for (std::size_t d : {4u, 6u}) run(build_even_family(even_spec(d)), build_twoway_even(even_spec(d)));
  const FamilySpec m5 = mod3_spec(5);
  const MaxEntSet set = build_mod3_family(m5);
  run(set, build_twoway_mod3(m5));

  const ComplexMatrix w0 = mod3_isometry(m5.omega, m5.gamma);
  const double iso = frobenius_distance(adjoint(w0) * w0, ComplexMatrix::identity(5));
  double diag = 0.0;
  const ComplexMatrix a0 = mod3_alice_element(0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const ComplexMatrix m = w0 * set.unitaries[i] * a0 * adjoint(set.unitaries[j]) * adjoint(w0);
      for (std::size_t x = 0; x < m.rows(); ++x) diag = std::max(diag, std::abs(m(x, x)));
    }
  if (iso > 1e-12 || diag > 1e-10) o.pass = false;
  o.detail += "max |C - I| " + sci(worst) + ", |W0'W0 - I| " + sci(iso) + ", max diagonal " + sci(diag);
  return o;
}

Outcome lattice_sweep() {
  Outcome o;
  double worst = 0.0;
  std::size_t perfect = 0;
  for (const auto& idx : all_lattice_triples()) {
    const ProtocolTree t = build_lattice_triple_protocol(idx);
    const MaxEntSet set = build_lattice_set(lattice_triple_spec(idx));
    validate_tree(t, 4, 4, 3);
    const double dev = deviation_from_identity(evaluate_exact(t, set, uniform_priors(3)).confusion);
    worst = std::max(worst, dev);
    if (dev <= 1e-9 && is_one_way(t)) ++perfect;
  }
  o.pass = perfect == 560;
  o.detail = std::to_string(perfect) + "/560 one-way and perfect, max |C - I| " + sci(worst);
  return o;
}

Outcome kstate_reduction() {
  Outcome o;
  for (std::size_t r : {1u, 3u}) {
    const MaxEntSet set = build_k_family(kstate_spec(r));
    const auto orth = check_orthogonal_mes(set);
    double worst = 0.0;
    for (const auto& p : orth.pair_residuals) worst = std::max(worst, p.residual);
    const auto cert = certify_impossible(set);
    const bool ok = orth.pass && worst <= 1e-9 && cert.reduction_checked && cert.reduction_holds;
    o.pass = o.pass && ok;
    o.detail += "r=" + std::to_string(r) + " (d=" + std::to_string(set.d) + "): orth " + sci(worst) +
                ", reduction residual " + sci(cert.reduction_residual) + ", " + to_string(cert.conclusion) + (r == 1 ? "; " : "");
  }
  return o;
}

std::string cli_output(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::dispatch(args, out, err);
  return out.str() + "\x1f" + err.str();
}

Outcome reproducibility() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"simulate", "--family", "even", "--d", "4", "--protocol", "randomized", "--trials", "20000", "--seed", "17", "--json"},
      {"simulate", "--family", "mod3", "--d", "5", "--protocol", "twoway", "--trials", "5000", "--seed", "17", "--json"},
      {"simulate", "--family", "even", "--d", "6", "--protocol", "decide0", "--trials", "5000", "--seed", "3", "--json"},
      {"oneway", "randomized", "--family", "mod3", "--d", "8", "--trials", "5000", "--seed", "99", "--json"},
  };
  std::size_t identical = 0;
  for (const auto& cmd : commands) {
    int c1 = 0, c2 = 0;
    const std::string a = cli_output(cmd, c1);
    const std::string b = cli_output(cmd, c2);
    if (a == b && c1 == 0 && c2 == 0 && a.front() == '{') ++identical;
  }
  o.pass = identical == commands.size();
  o.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) + " stochastic commands byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "PT spectrum of |Phi><Phi|", 1.0, pt_spectrum},
      {2, "PPT discriminator is perfect and above the floor", 10.0, ppt_discriminators},
      {3, "one-way impossibility certificates", 5.0, certificates},
      {4, "randomized one-way error bound", 30.0, randomized_bound},
      {5, "two-way protocols on certified families", 20.0, twoway_separation},
      {6, "all 560 lattice triples one-way", 60.0, lattice_sweep},
      {7, "four-state construction and reduction", 10.0, kstate_reduction},
      {8, "seeded reruns are byte-identical", 0.0, reproducibility},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s  [%d] %s  (%.2fs%s)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                in_time ? "" : ", over budget", o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
