// Copyright 2026 The Authors.
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

#ifndef BPODC_ALGORITHMS_HPP_
#define BPODC_ALGORITHMS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bpodc/core.hpp"
#include "bpodc/rng.hpp"

namespace bpodc {

// ---------------------------------------------------------------------------
// Pareto-style optimizers (BPODC, BPODC-cold, POMC).
// ---------------------------------------------------------------------------

enum class SelectionKind { kUniform, kBiased };

struct SelectionPolicy {
  SelectionKind kind = SelectionKind::kBiased;
  double epsilon = 1e-10;  // additive guard in the biased weight denominator
};

/// Shared state of one Pareto-optimizer run across budget changes. The
/// archive is carried over unchanged at every change; stale members keep the
/// objective vector frozen at their generation time.
struct ParetoState {
  ParetoArchive archive;
  EvalCounter counter;
  bool warm_up_active = false;
  double current_budget = 0.0;
  // Diagnostics for the current phase.
  double phase_min_select_prob = 1.0;
};

/// Per-iteration trace entry, used for cross-algorithm equivalence checks.
struct StepRecord {
  std::size_t parent_index = 0;
  Bits child;
  bool accepted = false;
};

/// Selection weights 1 / (|cost - B| + epsilon), normalized to sum to one.
inline std::vector<double> biased_select_probs(const ParetoArchive& archive, double budget,
                                               double epsilon) {
  if (archive.empty()) throw std::logic_error("biased_select: empty archive");
  std::vector<double> probs(archive.size());
  double total = 0.0;
  for (std::size_t i = 0; i < archive.size(); ++i) {
    probs[i] = 1.0 / (std::abs(archive.members()[i].cost_value - budget) + epsilon);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

inline std::size_t biased_select_index(const ParetoArchive& archive, double budget,
                                       double epsilon, RngStream& rng) {
  const std::vector<double> probs = biased_select_probs(archive, budget, epsilon);
  const double u = rng.next_double();
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  return probs.size() - 1;
}

/// Samples a parent favoring cost values close to the current budget.
inline const Solution& biased_select(const ParetoArchive& archive, double budget,
                                     double epsilon, RngStream& rng) {
  return archive.members()[biased_select_index(archive, budget, epsilon, rng)];
}

/// One iteration: select a parent (uniform while warming up, otherwise per
/// policy), mutate, evaluate at the current budget, update the archive.
/// Consumes one objective evaluation; the evaluation stream is split off
/// `rng` by evaluation ordinal so replays are bit-exact.
inline void pareto_step(ParetoState& state, const SelectionPolicy& policy,
                        const ProblemInstance& problem, RngStream& rng,
                        StepRecord* record = nullptr) {
  const bool uniform = state.warm_up_active || policy.kind == SelectionKind::kUniform;
  std::size_t parent_index;
  if (uniform) {
    parent_index = uniform_select_index(state.archive, rng);
    state.phase_min_select_prob = std::min(
        state.phase_min_select_prob, 1.0 / static_cast<double>(state.archive.size()));
  } else {
    const std::vector<double> probs =
        biased_select_probs(state.archive, state.current_budget, policy.epsilon);
    state.phase_min_select_prob = std::min(
        state.phase_min_select_prob, *std::min_element(probs.begin(), probs.end()));
    const double u = rng.next_double();
    double cumulative = 0.0;
    parent_index = probs.size() - 1;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      cumulative += probs[i];
      if (u < cumulative) {
        parent_index = i;
        break;
      }
    }
  }

  Bits child = bitwise_mutate(state.archive.members()[parent_index].bits, rng);
  if (record != nullptr) {
    record->parent_index = parent_index;
    record->child = child;
  }
  Solution evaluated = evaluate(problem, std::move(child), state.current_budget,
                                state.counter, rng.split(state.counter.count()));
  const bool accepted = state.archive.insert(std::move(evaluated));
  if (record != nullptr) record->accepted = accepted;
}

/// Runs one budget phase: raises the evaluation allotment by `eval_limit`,
/// initializes the archive with the empty set on the very first phase, and
/// iterates until the allotment is spent. The warm-up flag applies to the
/// whole phase. The entry archive is carried over untouched.
inline void run_bpodc_phase(ParetoState& state, const ProblemInstance& problem, double budget,
                            std::size_t eval_limit, bool warm_up, const SelectionPolicy& policy,
                            RngStream& rng, std::vector<StepRecord>* log = nullptr) {
  state.current_budget = budget;
  state.warm_up_active = warm_up;
  state.phase_min_select_prob = 1.0;
  state.counter.raise_limit(eval_limit);

  if (state.archive.empty()) {
    if (state.counter.remaining() == 0) state.counter.raise_limit(1);
    Solution origin = evaluate(problem, zeros(problem.n), budget, state.counter,
                               rng.split(state.counter.count()));
    state.archive.insert(std::move(origin));
  }

  while (state.counter.remaining() > 0) {
    if (log != nullptr) {
      StepRecord record;
      pareto_step(state, policy, problem, rng, &record);
      log->push_back(std::move(record));
    } else {
      pareto_step(state, policy, problem, rng);
    }
  }
}

// ---------------------------------------------------------------------------
// Generalized greedy (GGA) and its adaptive variant (AGGA).
// ---------------------------------------------------------------------------

struct GreedyState {
  Bits selection;
  std::vector<std::uint32_t> order_added;
  double f_value = 0.0;     // objective of `selection`, reused across rounds
  double cost_value = 0.0;  // modular cost of `selection`
};

namespace detail {

/// Greedy addition rounds shared by GGA and the growth half of AGGA. Each
/// round evaluates every remaining item once, adds the best feasible
/// marginal-gain/cost ratio (lowest id on ties), and permanently drops items
/// whose addition would exceed the budget. Fills per-item singleton values
/// from the first round when `singletons` is non-null and the selection was
/// empty at entry.
inline void greedy_additions(GreedyState& state, const ProblemInstance& problem,
                             const std::vector<double>& item_costs, double budget,
                             EvalCounter& counter, RngStream& rng,
                             std::vector<std::optional<double>>* singletons) {
  const std::size_t n = problem.n;
  std::vector<std::uint8_t> available(n, 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (state.selection[v]) available[v] = 0;
  }

  bool first_round = state.order_added.empty() && count_ones(state.selection) == 0;
  while (true) {
    double best_ratio = -std::numeric_limits<double>::infinity();
    std::int64_t best_item = -1;
    double best_value = 0.0;
    bool any_remaining = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!available[v]) continue;
      any_remaining = true;
      Bits candidate = state.selection;
      candidate[v] = 1;
      RngStream eval_rng = rng.split(counter.count());
      counter.consume_one();
      const double f_candidate = problem.objective(candidate, eval_rng);
      if (first_round && singletons != nullptr) (*singletons)[v] = f_candidate;
      if (state.cost_value + item_costs[v] > budget) {
        available[v] = 0;  // can never fit again: costs are static and modular
        continue;
      }
      const double ratio = (f_candidate - state.f_value) / item_costs[v];
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_item = v;
        best_value = f_candidate;
      }
    }
    if (!any_remaining || best_item < 0) break;
    state.selection[best_item] = 1;
    state.order_added.push_back(static_cast<std::uint32_t>(best_item));
    state.f_value = best_value;
    state.cost_value += item_costs[static_cast<std::size_t>(best_item)];
    available[best_item] = 0;
    first_round = false;
  }
}

}  // namespace detail

/// Generalized greedy: grows the solution by the best marginal-gain/cost
/// ratio, then returns the better of the grown set and the best single item
/// (harvested from the first round at no extra evaluation cost). Consumes at
/// most n(n+1)/2 evaluations.
inline GreedyState gga(const ProblemInstance& problem, const std::vector<double>& item_costs,
                       double budget, EvalCounter& counter, RngStream& rng) {
  GreedyState state;
  state.selection = zeros(problem.n);
  std::vector<std::optional<double>> singletons(problem.n);
  detail::greedy_additions(state, problem, item_costs, budget, counter, rng, &singletons);

  // Best single feasible item, from round-one evaluations.
  std::int64_t best_single = -1;
  double best_single_value = -std::numeric_limits<double>::infinity();
  for (std::uint32_t v = 0; v < problem.n; ++v) {
    if (!singletons[v].has_value() || item_costs[v] > budget) continue;
    if (*singletons[v] > best_single_value) {
      best_single_value = *singletons[v];
      best_single = v;
    }
  }
  if (best_single >= 0 && best_single_value > state.f_value) {
    GreedyState single;
    single.selection = zeros(problem.n);
    single.selection[best_single] = 1;
    single.order_added = {static_cast<std::uint32_t>(best_single)};
    single.f_value = best_single_value;
    single.cost_value = item_costs[static_cast<std::size_t>(best_single)];
    return single;
  }
  return state;
}

/// Adapts a previous greedy solution to a new budget: while infeasible,
/// removes the item with the smallest marginal-gain/cost ratio (each removal
/// round evaluates every kept item once); afterwards resumes greedy
/// additions exactly like gga.
inline GreedyState agga_adapt(GreedyState state, const ProblemInstance& problem,
                              const std::function<double(std::uint32_t)>& item_cost,
                              double new_budget, EvalCounter& counter, RngStream& rng) {
  while (state.cost_value > new_budget) {
    double worst_ratio = std::numeric_limits<double>::infinity();
    std::int64_t worst_item = -1;
    double worst_value = 0.0;
    for (std::uint32_t v = 0; v < problem.n; ++v) {
      if (!state.selection[v]) continue;
      Bits reduced = state.selection;
      reduced[v] = 0;
      counter.consume_one();
      RngStream eval_rng = detail::greedy_eval_stream(rng, counter);
      const double f_reduced = problem.objective(reduced, eval_rng);
      const double ratio = (state.f_value - f_reduced) / item_cost(v);
      if (ratio < worst_ratio) {
        worst_ratio = ratio;
        worst_item = v;
        worst_value = f_reduced;
      }
    }
    if (worst_item < 0) break;  // selection already empty
    state.selection[worst_item] = 0;
    state.f_value = worst_value;
    state.cost_value -= item_cost(static_cast<std::uint32_t>(worst_item));
    std::erase(state.order_added, static_cast<std::uint32_t>(worst_item));
  }

  detail::greedy_additions(state, problem, item_cost, new_budget, counter, rng, nullptr);
  return state;
}

// ---------------------------------------------------------------------------
// EAMC: single-objective EA over the surrogate g with size-indexed bins.
// ---------------------------------------------------------------------------

/// Surrogate objective g = f / (1 - e^(-alpha_f * cost / B)); the empty set
/// (zero cost) scores its plain f value.
inline double surrogate_g(double f_value, double cost, double budget, double alpha_f) {
  if (cost <= 0.0) return f_value;
  return f_value / (1.0 - std::exp(-alpha_f * cost / budget));
}

struct ScoredSolution {
  Solution solution;
  double g = 0.0;
};

/// Up to two stored solutions per subset size: the best-g and the best-f
/// champion (one physical solution when they coincide).
struct EamcBin {
  ScoredSolution best_g;
  ScoredSolution best_f;
  bool shared = true;  // best_g and best_f are the same stored solution
};

struct EamcState {
  std::map<std::size_t, EamcBin> bins;
  EvalCounter counter;
  double alpha_f = 1.0;
  double current_budget = 0.0;

  std::size_t population_size() const {
    std::size_t count = 0;
    for (const auto& [size, bin] : bins) count += bin.shared ? 1 : 2;
    return count;
  }
};

namespace detail {

inline std::vector<const Solution*> eamc_population(const EamcState& state) {
  std::vector<const Solution*> pool;
  for (const auto& [size, bin] : state.bins) {
    pool.push_back(&bin.best_g.solution);
    if (!bin.shared) pool.push_back(&bin.best_f.solution);
  }
  return pool;
}

inline void eamc_adopt(EamcState& state, ScoredSolution child) {
  const std::size_t size = child.solution.cardinality();
  auto it = state.bins.find(size);
  if (it == state.bins.end()) {
    EamcBin bin;
    bin.best_g = child;
    bin.best_f = std::move(child);
    bin.shared = true;
    state.bins.emplace(size, std::move(bin));
    return;
  }
  EamcBin& bin = it->second;
  const bool better_g = child.g > bin.best_g.g;
  const bool better_f = child.solution.f_value > bin.best_f.solution.f_value;
  if (better_g && better_f) {
    bin.best_g = child;
    bin.best_f = std::move(child);
    bin.shared = true;
  } else if (better_g) {
    if (bin.shared) bin.shared = false;
    bin.best_g = std::move(child);
  } else if (better_f) {
    if (bin.shared) bin.shared = false;
    bin.best_f = std::move(child);
  }
}

}  // namespace detail

/// Seeds the population with the empty set (one evaluation).
inline void eamc_init(EamcState& state, const ProblemInstance& problem, double budget,
                      RngStream& rng) {
  state.current_budget = budget;
  if (state.counter.remaining() == 0) state.counter.raise_limit(1);
  Solution origin = evaluate(problem, zeros(problem.n), budget, state.counter,
                             rng.split(state.counter.count()));
  ScoredSolution scored{std::move(origin), 0.0};
  scored.g = surrogate_g(scored.solution.f_value, scored.solution.cost_value, budget,
                         state.alpha_f);
  detail::eamc_adopt(state, std::move(scored));
}

/// One EAMC iteration: uniform parent over all stored solutions, bit-wise
/// mutation, one evaluation; feasible children enter their size bin if they
/// improve either champion, infeasible children are discarded.
inline void eamc_step(EamcState& state, const ProblemInstance& problem, RngStream& rng) {
  const std::vector<const Solution*> pool = detail::eamc_population(state);
  if (pool.empty()) throw std::logic_error("eamc_step: empty population");
  const Solution* parent = pool[rng.next_below(pool.size())];
  Bits child_bits = bitwise_mutate(parent->bits, rng);
  Solution child = evaluate(problem, std::move(child_bits), state.current_budget,
                            state.counter, rng.split(state.counter.count()));
  if (child.cost_value > state.current_budget) return;  // infeasible: discard
  ScoredSolution scored{std::move(child), 0.0};
  scored.g = surrogate_g(scored.solution.f_value, scored.solution.cost_value,
                         state.current_budget, state.alpha_f);
  detail::eamc_adopt(state, std::move(scored));
}

/// Recomputes g for every stored solution from its cached (f, cost) at the
/// new budget and re-ranks each bin's champions. No objective evaluations.
inline void eamc_rebudget(EamcState& state, double new_budget) {
  state.current_budget = new_budget;
  for (auto& [size, bin] : state.bins) {
    bin.best_g.g = surrogate_g(bin.best_g.solution.f_value, bin.best_g.solution.cost_value,
                               new_budget, state.alpha_f);
    if (bin.shared) continue;
    bin.best_f.g = surrogate_g(bin.best_f.solution.f_value, bin.best_f.solution.cost_value,
                               new_budget, state.alpha_f);
    if (bin.best_f.g > bin.best_g.g) std::swap(bin.best_g, bin.best_f);
  }
}

/// Best stored solution with cost within the budget (largest f value).
inline const Solution* eamc_best(const EamcState& state, double budget) {
  const Solution* best = nullptr;
  for (const Solution* s : detail::eamc_population(state)) {
    if (s->cost_value > budget) continue;
    if (best == nullptr || s->f_value > best->f_value ||
        (s->f_value == best->f_value && s->cost_value < best->cost_value)) {
      best = s;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Goodness function used by greedy-selection Pareto variants.
// ---------------------------------------------------------------------------

/// Marginal-gain goodness of a solution against a reference point: a
/// gain/cost ratio when the candidate is costlier, otherwise a large-C
/// weighted gain plus the cost headroom.
inline double goodness_h(double f_x, double c_x, double f_z, double c_z,
                         double big_c = 1e12) {
  if (c_x > c_z) return (f_x - f_z) / (c_x - c_z);
  return (f_x - f_z) * big_c + c_z - c_x;
}

}  // namespace bpodc

#endif  // BPODC_ALGORITHMS_HPP_
