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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "locc/errors.hpp"
#include "locc/linalg.hpp"
#include "locc/matrix.hpp"
#include "locc/measurements.hpp"
#include "locc/states.hpp"

namespace locc {

enum class Party { A, B };

inline const char* to_string(Party p) { return p == Party::A ? "A" : "B"; }

/// An adaptive LOCC protocol. Each Measure node holds Kraus operators on one
/// party (one child per outcome); the outcome index is the classical message
/// that selects the child. Apply nodes hold an isometry on one party. Leaves
/// are decisions.
///
/// Operators act on the party's current space; Kraus operators and isometries
/// may change that space's dimension. Alice's operators are stored exactly as
/// they act on her system (already transposed where a construction calls for it).
struct ProtocolTree {
  enum class Kind { Measure, Apply, Decide };

  Kind kind = Kind::Decide;
  Party party = Party::A;
  std::vector<ComplexMatrix> ops;
  std::vector<ProtocolTree> children;
  std::size_t guess = 0;
  std::string label;

  static ProtocolTree measure(Party party, std::vector<ComplexMatrix> kraus, std::vector<ProtocolTree> children,
                              std::string label = {}) {
    ProtocolTree t;
    t.kind = Kind::Measure;
    t.party = party;
    t.ops = std::move(kraus);
    t.children = std::move(children);
    t.label = std::move(label);
    return t;
  }
  static ProtocolTree apply(Party party, ComplexMatrix op, ProtocolTree child, std::string label = {}) {
    ProtocolTree t;
    t.kind = Kind::Apply;
    t.party = party;
    t.ops.push_back(std::move(op));
    t.children.push_back(std::move(child));
    t.label = std::move(label);
    return t;
  }
  static ProtocolTree decide(std::size_t guess) {
    ProtocolTree t;
    t.kind = Kind::Decide;
    t.guess = guess;
    return t;
  }

  bool operator==(const ProtocolTree&) const = default;
};

namespace detail {

inline void validate_node(const ProtocolTree& t, std::size_t dim_a, std::size_t dim_b, std::size_t k, double tol,
                          const std::string& path) {
  auto fail = [&](const std::string& why) { throw Error(ErrorCode::MalformedTree, "at " + path + ": " + why); };
  const std::size_t in_dim = t.party == Party::A ? dim_a : dim_b;
  auto next_dims = [&](const ComplexMatrix& op) {
    return t.party == Party::A ? std::pair{op.rows(), dim_b} : std::pair{dim_a, op.rows()};
  };
  switch (t.kind) {
    case ProtocolTree::Kind::Decide:
      if (!t.children.empty() || !t.ops.empty()) fail("decision node with children");
      if (t.guess >= k) fail("decision " + std::to_string(t.guess) + " is not a state index");
      return;
    case ProtocolTree::Kind::Apply: {
      if (t.ops.size() != 1 || t.children.size() != 1) fail("apply node needs one operator and one child");
      const ComplexMatrix& op = t.ops.front();
      if (op.cols() != in_dim) fail("operator expects dimension " + std::to_string(op.cols()));
      const double res = frobenius_distance(adjoint(op) * op, ComplexMatrix::identity(in_dim));
      if (res > tol) fail("operator is not an isometry (residual " + std::to_string(res) + ")");
      const auto [na, nb] = next_dims(op);
      validate_node(t.children.front(), na, nb, k, tol, path + "/apply");
      return;
    }
    case ProtocolTree::Kind::Measure: {
      if (t.ops.empty() || t.ops.size() != t.children.size()) fail("measure node needs one child per outcome");
      ComplexMatrix sum(in_dim, in_dim);
      for (const auto& op : t.ops) {
        if (op.cols() != in_dim) fail("Kraus operator expects dimension " + std::to_string(op.cols()));
        sum = sum + adjoint(op) * op;
      }
      const double res = frobenius_distance(sum, ComplexMatrix::identity(in_dim));
      if (res > tol) fail("Kraus operators are incomplete (residual " + std::to_string(res) + ")");
      for (std::size_t o = 0; o < t.ops.size(); ++o) {
        const auto [na, nb] = next_dims(t.ops[o]);
        validate_node(t.children[o], na, nb, k, tol, path + "/" + std::to_string(o));
      }
      return;
    }
  }
}

}  // namespace detail

/// Throws MalformedTree unless every Measure node is complete, every Apply node is an
/// isometry, all dimensions line up and every leaf names one of the k states.
inline void validate_tree(const ProtocolTree& tree, std::size_t dim_a, std::size_t dim_b, std::size_t k,
                          double tol = kDecisionTol) {
  detail::validate_node(tree, dim_a, dim_b, k, tol, "root");
}

namespace detail {
inline bool acts_after_measurement(const ProtocolTree& t, bool measured) {
  return t.kind == ProtocolTree::Kind::Measure || (t.kind == ProtocolTree::Kind::Apply && measured);
}

inline std::size_t rounds_from(const ProtocolTree& t, bool measured, int last_party) {
  if (t.kind == ProtocolTree::Kind::Decide) return 0;
  std::size_t here = 0;
  int party = last_party;
  if (acts_after_measurement(t, measured)) {
    const int p = t.party == Party::A ? 0 : 1;
    if (p != last_party) here = 1;
    party = p;
  }
  const bool now_measured = measured || t.kind == ProtocolTree::Kind::Measure;
  std::size_t best = 0;
  for (const auto& c : t.children) best = std::max(best, rounds_from(c, now_measured, party));
  return here + best;
}

inline bool one_way_from(const ProtocolTree& t, bool bob_measured) {
  if (t.kind == ProtocolTree::Kind::Decide) return true;
  if (bob_measured && t.party == Party::A) return false;
  const bool now = bob_measured || (t.kind == ProtocolTree::Kind::Measure && t.party == Party::B);
  return std::all_of(t.children.begin(), t.children.end(), [&](const auto& c) { return one_way_from(c, now); });
}
}  // namespace detail

/// Number of turns along the deepest path, a turn being a maximal run of
/// consecutive nodes by one party. A→B counts 2. Local operations before the
/// first measurement need no message and are not counted.
inline std::size_t round_count(const ProtocolTree& tree) { return detail::rounds_from(tree, false, -1); }

/// True when no operation by Alice follows a measurement by Bob on any path,
/// i.e. every classical message flows from Alice to Bob.
inline bool is_one_way(const ProtocolTree& tree) { return detail::one_way_from(tree, false); }

inline std::size_t leaf_count(const ProtocolTree& tree) {
  if (tree.kind == ProtocolTree::Kind::Decide) return 1;
  std::size_t n = 0;
  for (const auto& c : tree.children) n += leaf_count(c);
  return n;
}

/// Unnormalized state reaching one leaf.
struct LeafState {
  std::vector<std::size_t> path;  // outcome index at every Measure node
  ComplexMatrix psi;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t guess = 0;
  std::size_t leaf_index = 0;
  double probability() const { return std::pow(frobenius_norm(psi), 2); }
};

namespace detail {
inline ComplexMatrix apply_party(Party party, const ComplexMatrix& op, const ComplexMatrix& psi, std::size_t& dim_a,
                                 std::size_t& dim_b) {
  if (party == Party::A) {
    ComplexMatrix out = apply_on_a(op, psi, dim_a, dim_b);
    dim_a = op.rows();
    return out;
  }
  ComplexMatrix out = apply_on_b(op, psi, dim_a, dim_b);
  dim_b = op.rows();
  return out;
}

template <typename Visit>
void walk_leaves(const ProtocolTree& t, const ComplexMatrix& psi, std::size_t dim_a, std::size_t dim_b,
                 std::vector<std::size_t>& path, std::size_t& leaf_index, Visit& visit) {
  switch (t.kind) {
    case ProtocolTree::Kind::Decide:
      visit(LeafState{path, psi, dim_a, dim_b, t.guess, leaf_index});
      ++leaf_index;
      return;
    case ProtocolTree::Kind::Apply: {
      std::size_t na = dim_a, nb = dim_b;
      const ComplexMatrix next = apply_party(t.party, t.ops.front(), psi, na, nb);
      walk_leaves(t.children.front(), next, na, nb, path, leaf_index, visit);
      return;
    }
    case ProtocolTree::Kind::Measure:
      for (std::size_t o = 0; o < t.ops.size(); ++o) {
        std::size_t na = dim_a, nb = dim_b;
        const ComplexMatrix next = apply_party(t.party, t.ops[o], psi, na, nb);
        if (frobenius_norm(next) < 1e-15) {
          leaf_index += leaf_count(t.children[o]);
          continue;
        }
        path.push_back(o);
        walk_leaves(t.children[o], next, na, nb, path, leaf_index, visit);
        path.pop_back();
      }
      return;
  }
}
}  // namespace detail

/// Every leaf reached with nonzero amplitude from the bipartite input `psi`.
inline std::vector<LeafState> leaf_states(const ProtocolTree& tree, const ComplexMatrix& psi, std::size_t dim_a,
                                          std::size_t dim_b) {
  std::vector<LeafState> out;
  std::vector<std::size_t> path;
  std::size_t leaf_index = 0;
  auto visit = [&](LeafState s) { out.push_back(std::move(s)); };
  detail::walk_leaves(tree, psi, dim_a, dim_b, path, leaf_index, visit);
  return out;
}

struct ExactEvaluation {
  RealMatrix confusion;  // (prepared i, decided j)
  double success = 0.0;
  std::size_t transcript_count = 0;  // leaves reached with positive probability
};

/// Born-rule evaluation of every branch for every prepared state.
inline ExactEvaluation evaluate_exact(const ProtocolTree& tree, const MaxEntSet& set, const std::vector<double>& priors,
                                      double tol = kDecisionTol) {
  validate_priors(priors, set.size());
  validate_tree(tree, set.d, set.d, set.size(), tol);
  const std::size_t k = set.size();
  ExactEvaluation ev;
  ev.confusion = RealMatrix(k, k);
  std::vector<bool> reached(leaf_count(tree), false);
  for (std::size_t i = 0; i < k; ++i) {
    const ComplexMatrix psi = state_of(set.unitaries[i]);
    std::vector<std::size_t> path;
    std::size_t leaf_index = 0;
    auto visit = [&](const LeafState& leaf) {
      const double p = leaf.probability();
      ev.confusion(i, leaf.guess) += p;
      if (p > 1e-14) reached[leaf.leaf_index] = true;
    };
    detail::walk_leaves(tree, psi, set.d, set.d, path, leaf_index, visit);
  }
  for (std::size_t i = 0; i < k; ++i) ev.success += priors[i] * ev.confusion(i, i);
  ev.transcript_count = static_cast<std::size_t>(std::count(reached.begin(), reached.end(), true));
  return ev;
}

}  // namespace locc
