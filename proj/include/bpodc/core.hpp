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

#ifndef BPODC_CORE_HPP_
#define BPODC_CORE_HPP_

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bpodc/rng.hpp"

namespace bpodc {

/// Membership vector over the ground set; bits[i] == 1 selects item i.
using Bits = std::vector<std::uint8_t>;

inline Bits zeros(std::size_t n) { return Bits(n, 0); }

inline std::size_t count_ones(const Bits& bits) {
  return static_cast<std::size_t>(
      std::accumulate(bits.begin(), bits.end(), std::size_t{0}));
}

inline std::vector<std::uint32_t> selected_indices(const Bits& bits) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.push_back(i);
  }
  return out;
}

/// Extended real with a distinguished minus-infinity element. The sentinel
/// never participates in arithmetic; it only orders below every finite value.
class ExtReal {
 public:
  constexpr ExtReal() : neg_inf_(true), value_(0.0) {}
  constexpr ExtReal(double v) : neg_inf_(false), value_(v) {}  // NOLINT(runtime/explicit)

  static constexpr ExtReal neg_infinity() { return ExtReal(); }

  constexpr bool is_neg_infinity() const { return neg_inf_; }

  constexpr double finite_value() const {
    assert(!neg_inf_);
    return value_;
  }

  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }
  friend constexpr bool operator<(ExtReal a, ExtReal b) {
    if (a.neg_inf_) return !b.neg_inf_;
    if (b.neg_inf_) return false;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator>(ExtReal a, ExtReal b) { return b < a; }
  friend constexpr bool operator<=(ExtReal a, ExtReal b) { return !(b < a); }
  friend constexpr bool operator>=(ExtReal a, ExtReal b) { return !(a < b); }

 private:
  bool neg_inf_;
  double value_;
};

/// A subset with its objective vector frozen at generation time. The cached
/// values are never rewritten by later budget changes; `gen_budget` records
/// the budget that was in force when the solution was evaluated.
struct Solution {
  Bits bits;
  double f_value = 0.0;
  double cost_value = 0.0;
  ExtReal f1 = ExtReal(0.0);
  double f2 = 0.0;
  double gen_budget = 0.0;

  Solution() = default;

  /// Derives (f1, f2) from the raw values: f1 is f unless the cost exceeds
  /// the look-ahead threshold gen_budget + 1, and f2 is always -cost.
  Solution(Bits b, double f, double cost, double budget)
      : bits(std::move(b)),
        f_value(f),
        cost_value(cost),
        f1(cost > budget + 1.0 ? ExtReal::neg_infinity() : ExtReal(f)),
        f2(-cost),
        gen_budget(budget) {}

  std::size_t cardinality() const { return count_ones(bits); }
};

/// Five-way outcome of comparing two objective vectors. `kStrict` means
/// strictly better in both objectives, `kWeak` better in one and tied in the
/// other; both count as domination in the Pareto sense.
enum class DomRelation {
  kStrictlyDominates,
  kWeaklyDominates,
  kDominatedBy,
  kIncomparable,
  kEqual,
};

/// a is no worse than b in both objectives.
inline bool weakly_dominates(const Solution& a, const Solution& b) {
  return a.f1 >= b.f1 && a.f2 >= b.f2;
}

/// a weakly dominates b and is strictly better in at least one objective.
inline bool dominates(const Solution& a, const Solution& b) {
  return weakly_dominates(a, b) && (a.f1 > b.f1 || a.f2 > b.f2);
}

inline DomRelation dominance_relation(const Solution& a, const Solution& b) {
  const bool a_ge = weakly_dominates(a, b);
  const bool b_ge = weakly_dominates(b, a);
  if (a_ge && b_ge) return DomRelation::kEqual;
  if (a_ge) {
    return (a.f1 > b.f1 && a.f2 > b.f2) ? DomRelation::kStrictlyDominates
                                        : DomRelation::kWeaklyDominates;
  }
  if (b_ge) return DomRelation::kDominatedBy;
  return DomRelation::kIncomparable;
}

/// Population of mutually incomparable solutions, kept in insertion order so
/// tie-breaking stays deterministic across replays.
class ParetoArchive {
 public:
  /// Rejects x if some member dominates it; otherwise removes every member
  /// weakly dominated by x (equal vectors included) and appends x.
  bool insert(Solution x) {
    for (const Solution& z : members_) {
      if (dominates(z, x)) return false;
    }
    std::erase_if(members_,
                  [&x](const Solution& z) { return weakly_dominates(x, z); });
    members_.push_back(std::move(x));
    return true;
  }

  const std::vector<Solution>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

 private:
  std::vector<Solution> members_;
};

/// Thrown when an evaluation is requested with no budget left; the caller's
/// phase loop is expected to stop before this happens.
struct EvalBudgetExhausted : std::runtime_error {
  EvalBudgetExhausted() : std::runtime_error("objective evaluation budget exhausted") {}
};

/// Counts objective evaluations against a limit. A full Monte Carlo estimate
/// counts as one evaluation.
class EvalCounter {
 public:
  explicit EvalCounter(std::size_t limit = 0) : limit_(limit) {}

  std::size_t count() const { return count_; }
  std::size_t limit() const { return limit_; }
  std::size_t remaining() const { return limit_ - count_; }

  void raise_limit(std::size_t extra) { limit_ += extra; }

  void consume_one() {
    if (count_ >= limit_) throw EvalBudgetExhausted();
    ++count_;
  }

 private:
  std::size_t count_ = 0;
  std::size_t limit_ = 0;
};

/// A subset selection instance: a monotone objective oracle paired with a
/// monotone cost oracle over n items. Objectives may be stochastic; they
/// receive a dedicated stream per evaluation. Instances are immutable after
/// construction and safe to share.
struct ProblemInstance {
  std::size_t n = 0;
  std::string name;
  std::function<double(const Bits&, RngStream&)> objective;
  std::function<double(const Bits&)> cost;
};

/// Evaluates one candidate subset: invokes both oracles, applies the
/// B + 1 look-ahead penalty, and consumes one unit of evaluation budget.
/// Pure given (problem, bits, budget, rng seed).
inline Solution evaluate(const ProblemInstance& problem, Bits bits, double budget,
                         EvalCounter& counter, RngStream rng) {
  counter.consume_one();
  const double f = problem.objective(bits, rng);
  const double cost = problem.cost(bits);
  return Solution(std::move(bits), f, cost, budget);
}

/// Standard bit-wise mutation: flips each bit independently with
/// probability 1/n. Returns the (unevaluated) child.
inline Bits bitwise_mutate(const Bits& parent, RngStream& rng) {
  assert(!parent.empty());
  const double flip_p = 1.0 / static_cast<double>(parent.size());
  Bits child = parent;
  for (auto& bit : child) {
    if (rng.next_double() < flip_p) bit ^= 1u;
  }
  return child;
}

inline std::size_t uniform_select_index(const ParetoArchive& archive, RngStream& rng) {
  if (archive.empty()) throw std::logic_error("uniform_select: empty archive");
  return static_cast<std::size_t>(rng.next_below(archive.size()));
}

inline const Solution& uniform_select(const ParetoArchive& archive, RngStream& rng) {
  return archive.members()[uniform_select_index(archive, rng)];
}

/// Best feasible member under budget B: maximal f among members with cost at
/// most B, ties broken by lower cost then earlier insertion. Members that
/// were penalized at generation time (f1 == -inf) are never returned.
/// Returns nullptr when no member qualifies.
inline const Solution* best_feasible(const ParetoArchive& archive, double budget) {
  const Solution* best = nullptr;
  for (const Solution& s : archive.members()) {
    if (s.cost_value > budget || s.f1.is_neg_infinity()) continue;
    if (best == nullptr || s.f_value > best->f_value ||
        (s.f_value == best->f_value && s.cost_value < best->cost_value)) {
      best = &s;
    }
  }
  return best;
}

}  // namespace bpodc

#endif  // BPODC_CORE_HPP_
