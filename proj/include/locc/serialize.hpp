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

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "locc/errors.hpp"
#include "locc/matrix.hpp"
#include "locc/measurements.hpp"
#include "locc/oneway.hpp"
#include "locc/simulate.hpp"
#include "locc/states.hpp"
#include "locc/tree.hpp"

namespace locc {

using json = nlohmann::json;

inline const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::EvenD: return "EvenD";
    case FamilyKind::Mod3: return "Mod3";
    case FamilyKind::KState: return "KState";
    case FamilyKind::LatticeTriple: return "LatticeTriple";
    case FamilyKind::Custom: return "Custom";
  }
  return "Custom";
}

inline const char* json_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::EvenD: return "even_d";
    case FamilyKind::Mod3: return "mod3";
    case FamilyKind::KState: return "k_state";
    case FamilyKind::LatticeTriple: return "lattice_triple";
    case FamilyKind::Custom: return "custom";
  }
  return "custom";
}

/// Accepts both the JSON names (even_d, …) and the enum names (EvenD, …).
inline FamilyKind family_kind_from(const std::string& s) {
  for (FamilyKind k : {FamilyKind::EvenD, FamilyKind::Mod3, FamilyKind::KState, FamilyKind::LatticeTriple,
                       FamilyKind::Custom})
    if (s == to_string(k) || s == json_name(k)) return k;
  throw Error(ErrorCode::Parse, "unknown family kind '" + s + "'");
}

// Complex numbers are [re, im].
inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Parse, "complex numbers are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline void to_json(json& j, const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  j = json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline void from_json(const json& j, ComplexMatrix& m) {
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (re.size() != rows || im.size() != rows) throw Error(ErrorCode::Parse, "matrix row count");
  m = ComplexMatrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (re[r].size() != cols || im[r].size() != cols) throw Error(ErrorCode::Parse, "matrix column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
  }
}

inline void to_json(json& j, const RealMatrix& m) {
  j = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(std::move(row));
  }
}

inline void to_json(json& j, const FamilySpec& s) {
  json alphas = json::array();
  for (cplx a : s.alphas) alphas.push_back(complex_json(a));
  j = json{{"kind", json_name(s.kind)},
           {"d", s.d},
           {"k", s.k},
           {"r", s.r},
           {"omega", complex_json(s.omega)},
           {"gamma", complex_json(s.gamma)},
           {"alphas", std::move(alphas)},
           {"lattice_indices", s.lattice_indices},
           {"allow_degenerate", s.allow_degenerate}};
}

/// Missing fields take the defaults of the named family's constructor.
inline void from_json(const json& j, FamilySpec& s) {
  const FamilyKind kind = family_kind_from(j.at("kind").get<std::string>());
  auto lattice = j.value("lattice_indices", std::vector<std::vector<int>>{});
  switch (kind) {
    case FamilyKind::EvenD: s = even_spec(j.value("d", std::size_t{4})); break;
    case FamilyKind::Mod3: s = mod3_spec(j.value("d", std::size_t{5})); break;
    case FamilyKind::KState: {
      std::vector<cplx> alphas;
      if (j.contains("alphas"))
        for (const auto& a : j.at("alphas")) alphas.push_back(complex_from(a));
      s = kstate_spec(j.value("r", std::size_t{1}), lattice.empty() ? default_lattice_base() : lattice, alphas);
      break;
    }
    case FamilyKind::LatticeTriple: s = lattice_triple_spec(lattice); break;
    case FamilyKind::Custom: s = FamilySpec{}; s.kind = FamilyKind::Custom; break;
  }
  if (j.contains("omega")) s.omega = complex_from(j.at("omega"));
  if (j.contains("gamma")) s.gamma = complex_from(j.at("gamma"));
  s.allow_degenerate = j.value("allow_degenerate", false);
}

inline FamilySpec spec_from_json(const json& j) {
  FamilySpec s;
  from_json(j, s);
  return s;
}

// ---------------------------------------------------------------------------
// Protocol trees

inline void to_json(json& j, const ProtocolTree& t) {
  switch (t.kind) {
    case ProtocolTree::Kind::Decide: j = json{{"kind", "decide"}, {"guess", t.guess}}; return;
    case ProtocolTree::Kind::Apply:
      j = json{{"kind", "apply"}, {"party", to_string(t.party)}, {"label", t.label}, {"op", t.ops.front()},
               {"child", t.children.front()}};
      return;
    case ProtocolTree::Kind::Measure: {
      json kids = json::array();
      for (const auto& c : t.children) kids.push_back(c);
      j = json{{"kind", "measure"}, {"party", to_string(t.party)}, {"label", t.label}, {"kraus", t.ops},
               {"children", std::move(kids)}};
      return;
    }
  }
}

inline void from_json(const json& j, ProtocolTree& t) {
  const std::string kind = j.at("kind").get<std::string>();
  auto party = [&] {
    const std::string p = j.at("party").get<std::string>();
    if (p == "A") return Party::A;
    if (p == "B") return Party::B;
    throw Error(ErrorCode::Parse, "party must be A or B");
  };
  if (kind == "decide") {
    t = ProtocolTree::decide(j.at("guess").get<std::size_t>());
  } else if (kind == "apply") {
    t = ProtocolTree::apply(party(), j.at("op").get<ComplexMatrix>(), j.at("child").get<ProtocolTree>(),
                            j.value("label", std::string{}));
  } else if (kind == "measure") {
    std::vector<ProtocolTree> kids;
    for (const auto& c : j.at("children")) kids.push_back(c.get<ProtocolTree>());
    t = ProtocolTree::measure(party(), j.at("kraus").get<std::vector<ComplexMatrix>>(), std::move(kids),
                              j.value("label", std::string{}));
  } else {
    throw Error(ErrorCode::Parse, "unknown node kind '" + kind + "'");
  }
}

// ---------------------------------------------------------------------------
// Reports

inline void to_json(json& j, const OrthogonalityReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pair_residuals) pairs.push_back(json{{"i", p.i}, {"j", p.j}, {"residual", p.residual}});
  j = json{{"unitarity_residuals", r.unitarity_residuals},
           {"pair_residuals", std::move(pairs)},
           {"reduced_state_residuals", r.reduced_state_residuals},
           {"unitary", r.unitary},
           {"orthogonal", r.orthogonal},
           {"maximally_entangled", r.maximally_entangled},
           {"pass", r.pass}};
}

inline void to_json(json& j, const Genericity& g) {
  j = json{{"generic", g.generic}, {"margin", g.margin}, {"detail", g.detail}};
}

inline void to_json(json& j, const PovmReport& r) {
  j = json{{"hermiticity_residual", r.hermiticity_residual},
           {"min_eigenvalues", r.min_eigenvalues},
           {"completeness_residual", r.completeness_residual},
           {"hermitian", r.hermitian},
           {"positive", r.positive},
           {"complete", r.complete},
           {"pass", r.pass}};
}

inline void to_json(json& j, const PptReport& r) {
  j = json{{"min_pt_eigenvalues", r.min_pt_eigenvalues}, {"bound", r.bound}, {"pass", r.pass}};
}

inline void to_json(json& j, const Prop1Report& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back(json{{"i", p.i}, {"j", p.j}, {"max_abs_diagonal", p.max_abs_diagonal}});
  j = json{{"pairs", std::move(pairs)}, {"max_violation", r.max_violation}, {"pass", r.pass}};
}

inline void to_json(json& j, const ImpossibilityCertificate& c) {
  j = json{{"family", c.family},
           {"nullspace_dim", c.nullspace_dim},
           {"top_block_size", c.top_block_size},
           {"top_block_image_dim", c.top_block_image_dim},
           {"forced_scalar", c.forced_scalar},
           {"conclusion", to_string(c.conclusion)},
           {"residuals", c.residuals},
           {"constraint_residuals", c.constraint_residuals},
           {"singular_values", c.singular_values},
           {"caveat", c.caveat}};
  if (c.reduction_checked) {
    j["reduction_holds"] = c.reduction_holds;
    j["reduction_residual"] = c.reduction_residual;
  }
}

inline void to_json(json& j, const ExactEvaluation& e) {
  j = json{{"confusion", e.confusion}, {"success", e.success}, {"transcript_count", e.transcript_count}};
}

inline void to_json(json& j, const SimReport& r) {
  j = json{{"seed", r.seed},
           {"trials", r.trials},
           {"empirical_confusion", r.empirical_confusion},
           {"row_trials", r.row_trials},
           {"success_rate", r.success_rate},
           {"stderr", r.stderr_},
           {"exact_success", r.exact_success},
           {"z_score", r.z_score},
           {"exact_confusion", r.exact_confusion}};
}

inline void to_json(json& j, const Comparison& c) {
  json cells = json::array();
  for (const auto& x : c.cells)
    cells.push_back(json{{"i", x.i}, {"j", x.j}, {"empirical", x.empirical}, {"exact", x.exact}, {"z", x.z},
                         {"flagged", x.flagged}});
  j = json{{"simulation", c.sim}, {"cells", std::move(cells)}, {"flag_count", c.flag_count}, {"pass", c.pass}};
}

// ---------------------------------------------------------------------------
// CSV

inline std::string confusion_csv(const RealMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  out << "i,j,probability\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out << i << ',' << j << ',' << m(i, j) << '\n';
  return out.str();
}

/// One row per confusion cell.
inline std::string comparison_csv(const Comparison& c) {
  std::ostringstream out;
  out.precision(17);
  out << "i,j,count,row_trials,empirical,exact,z,flagged\n";
  for (const auto& x : c.cells)
    out << x.i << ',' << x.j << ',' << c.sim.empirical_confusion[x.i][x.j] << ',' << c.sim.row_trials[x.i] << ','
        << x.empirical << ',' << x.exact << ',' << x.z << ',' << (x.flagged ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace locc
