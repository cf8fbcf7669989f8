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
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include "locc/errors.hpp"
#include "locc/linalg.hpp"
#include "locc/matrix.hpp"
#include "locc/measurements.hpp"
#include "locc/oneway.hpp"
#include "locc/states.hpp"
#include "locc/tree.hpp"

namespace locc {

struct SimConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<double> priors;  // empty means uniform
  std::size_t workers = 0;     // 0: hardware concurrency
};

using CountMatrix = std::vector<std::vector<std::uint64_t>>;

struct SimReport {
  CountMatrix empirical_confusion;  // (prepared, decided) counts
  std::vector<std::uint64_t> row_trials;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double stderr_ = 0.0;  // binomial standard error at the exact success
  double exact_success = 0.0;
  double z_score = 0.0;
  RealMatrix exact_confusion;
};

/// Counter-based stream: output n is a hash of (key, n), where the key is a
/// hash of (seed, trial). Trials are independent of one another and of the
/// order in which they run.
class TrialStream {
 public:
  using result_type = std::uint64_t;

  TrialStream(std::uint64_t seed, std::uint64_t trial) : key_(mix(mix(seed) ^ (trial + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++step_); }
  std::uint64_t step() const noexcept { return step_; }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t step_ = 0;
};

inline TrialStream trial_stream(std::uint64_t seed, std::uint64_t trial) { return TrialStream(seed, trial); }

/// Top 53 bits as a double in [0, 1).
inline double uniform01(TrialStream& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t sample_index(std::span<const double> weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = i;
    if (u * total < acc) return i;
  }
  return last;
}

/// Walks the tree once, sampling each measurement outcome by the Born rule.
inline std::size_t sample_decision(const ProtocolTree& tree, ComplexMatrix psi, std::size_t dim_a, std::size_t dim_b,
                                   TrialStream& rng) {
  const ProtocolTree* node = &tree;
  while (node->kind != ProtocolTree::Kind::Decide) {
    if (node->kind == ProtocolTree::Kind::Apply) {
      psi = detail::apply_party(node->party, node->ops.front(), psi, dim_a, dim_b);
      node = &node->children.front();
      continue;
    }
    std::vector<ComplexMatrix> next;
    std::vector<double> probs;
    std::vector<std::pair<std::size_t, std::size_t>> dims;
    for (const auto& k : node->ops) {
      std::size_t na = dim_a, nb = dim_b;
      next.push_back(detail::apply_party(node->party, k, psi, na, nb));
      probs.push_back(std::pow(frobenius_norm(next.back()), 2));
      dims.emplace_back(na, nb);
    }
    const std::size_t o = sample_index(probs, uniform01(rng));
    psi = (1.0 / std::sqrt(probs[o])) * next[o];
    std::tie(dim_a, dim_b) = dims[o];
    node = &node->children[o];
  }
  return node->guess;
}

namespace detail {

using TrialTree = std::function<const ProtocolTree&(TrialStream&, ProtocolTree& scratch)>;

inline SimReport simulate_core(const MaxEntSet& set, const SimConfig& cfg, const RealMatrix& exact,
                               const TrialTree& tree_for_trial) {
  if (cfg.trials == 0) throw Error(ErrorCode::BadConfig, "trials must be at least 1");
  const std::size_t k = set.size();
  const std::vector<double> priors = cfg.priors.empty() ? uniform_priors(k) : cfg.priors;
  validate_priors(priors, k);
  std::vector<ComplexMatrix> states;
  for (const auto& u : set.unitaries) states.push_back(state_of(u));

  std::size_t workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.trials);
  std::vector<CountMatrix> partial(workers, CountMatrix(k, std::vector<std::uint64_t>(k, 0)));
  auto run = [&](std::size_t w) {
    const std::size_t begin = cfg.trials * w / workers;
    const std::size_t end = cfg.trials * (w + 1) / workers;
    ProtocolTree scratch;
    for (std::size_t t = begin; t < end; ++t) {
      auto rng = trial_stream(cfg.seed, t);
      const std::size_t i = sample_index(priors, uniform01(rng));
      const ProtocolTree& tree = tree_for_trial(rng, scratch);
      ++partial[w][i][sample_decision(tree, states[i], set.d, set.d, rng)];
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& th : pool) th.join();

  SimReport rep;
  rep.seed = cfg.seed;
  rep.trials = cfg.trials;
  rep.exact_confusion = exact;
  rep.empirical_confusion = CountMatrix(k, std::vector<std::uint64_t>(k, 0));
  rep.row_trials.assign(k, 0);
  std::uint64_t correct = 0;
  for (const auto& part : partial)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) rep.empirical_confusion[i][j] += part[i][j];
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) rep.row_trials[i] += rep.empirical_confusion[i][j];
    correct += rep.empirical_confusion[i][i];
  }
  const double n = static_cast<double>(cfg.trials);
  rep.success_rate = static_cast<double>(correct) / n;
  for (std::size_t i = 0; i < k; ++i) rep.exact_success += priors[i] * exact(i, i);
  const double p = std::clamp(rep.exact_success, 0.0, 1.0);
  rep.stderr_ = std::sqrt(p * (1.0 - p) / n);
  const double diff = rep.success_rate - rep.exact_success;
  if (rep.stderr_ > 0.0) {
    rep.z_score = diff / rep.stderr_;
  } else {
    rep.z_score = std::abs(diff) <= 1e-12 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return rep;
}

}  // namespace detail

/// Seeded Monte Carlo of a fixed protocol tree.
inline SimReport run_monte_carlo(const ProtocolTree& tree, const MaxEntSet& set, const SimConfig& cfg) {
  const std::vector<double> priors = cfg.priors.empty() ? uniform_priors(set.size()) : cfg.priors;
  const ExactEvaluation exact = evaluate_exact(tree, set, priors);
  return detail::simulate_core(set, cfg, exact.confusion,
                               [&](TrialStream&, ProtocolTree&) -> const ProtocolTree& { return tree; });
}

/// Seeded Monte Carlo of a randomized protocol: each trial draws its parameters
/// from its own stream before walking the tree.
inline SimReport run_monte_carlo(const RandomizedProtocol& proto, const MaxEntSet& set, const SimConfig& cfg) {
  {
    const std::vector<double> zeros(proto.parameter_count, 0.0);
    validate_tree(proto.tree_at(zeros), set.d, set.d, set.size());
  }
  return detail::simulate_core(set, cfg, proto.exact_confusion,
                               [&](TrialStream& rng, ProtocolTree& scratch) -> const ProtocolTree& {
                                 std::vector<double> x(proto.parameter_count);
                                 for (auto& v : x) v = uniform01(rng);
                                 scratch = proto.tree_at(x);
                                 return scratch;
                               });
}

struct CellComparison {
  std::size_t i = 0;
  std::size_t j = 0;
  double empirical = 0.0;
  double exact = 0.0;
  double z = 0.0;
  bool flagged = false;
};

struct Comparison {
  SimReport sim;
  std::vector<CellComparison> cells;
  std::size_t flag_count = 0;
  bool pass = true;
};

inline constexpr double kDiscrepancyZ = 4.0;

inline Comparison compare_report(const SimReport& sim) {
  Comparison c;
  c.sim = sim;
  const std::size_t k = sim.empirical_confusion.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (sim.row_trials[i] == 0) continue;
    const double n = static_cast<double>(sim.row_trials[i]);
    for (std::size_t j = 0; j < k; ++j) {
      CellComparison cell{i, j, static_cast<double>(sim.empirical_confusion[i][j]) / n, sim.exact_confusion(i, j)};
      const double p = std::clamp(cell.exact, 0.0, 1.0);
      const double se = std::sqrt(p * (1.0 - p) / n);
      const double diff = cell.empirical - cell.exact;
      if (se > 0.0) cell.z = diff / se;
      else cell.z = std::abs(diff) <= 1e-12 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
      cell.flagged = std::abs(cell.z) > kDiscrepancyZ;
      c.flag_count += cell.flagged ? 1 : 0;
      c.cells.push_back(cell);
    }
  }
  c.pass = c.flag_count == 0;
  return c;
}

inline Comparison compare_exact_vs_mc(const ProtocolTree& tree, const MaxEntSet& set, const SimConfig& cfg) {
  return compare_report(run_monte_carlo(tree, set, cfg));
}

inline Comparison compare_exact_vs_mc(const RandomizedProtocol& proto, const MaxEntSet& set, const SimConfig& cfg) {
  return compare_report(run_monte_carlo(proto, set, cfg));
}

}  // namespace locc
