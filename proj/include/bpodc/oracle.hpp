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

// Exhaustive small-instance oracles. Everything here trades scale for
// checkability: plain enumeration, no shortcuts shared with the optimizers.

#ifndef BPODC_ORACLE_HPP_
#define BPODC_ORACLE_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bpodc/core.hpp"
#include "bpodc/problems.hpp"

namespace bpodc {

struct OracleSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  double opt_value = 0.0;
  Bits opt_subset;
  std::size_t enumerated_count = 0;
};

namespace detail {

inline Bits bits_from_mask(std::uint32_t mask, std::size_t n) {
  Bits bits(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (1u << i)) bits[i] = 1;
  }
  return bits;
}

}  // namespace detail

/// Exhaustive scan of all 2^n subsets against a deterministic value oracle.
/// The first maximum in enumeration order wins, so results are stable.
inline OracleResult brute_force_opt(std::size_t n,
                                    const std::function<double(const Bits&)>& value,
                                    const std::function<double(const Bits&)>& cost,
                                    double budget) {
  if (n > 24) throw OracleSizeError("brute_force_opt: instance too large (n > 24)");
  OracleResult result;
  result.opt_value = -std::numeric_limits<double>::infinity();
  const std::uint32_t total = 1u << n;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    Bits bits = detail::bits_from_mask(mask, n);
    if (cost(bits) > budget) continue;
    const double v = value(bits);
    if (v > result.opt_value) {
      result.opt_value = v;
      result.opt_subset = std::move(bits);
    }
  }
  result.enumerated_count = total;
  if (result.opt_subset.empty() && result.opt_value == -std::numeric_limits<double>::infinity()) {
    // No feasible subset at all (possible only for negative budgets).
    result.opt_value = 0.0;
    result.opt_subset = zeros(n);
  }
  return result;
}

inline OracleResult brute_force_opt(const CoverageInstance& instance, const LinearCost& cost,
                                    double budget) {
  return brute_force_opt(
      instance.n_items(),
      [&instance](const Bits& b) { return static_cast<double>(coverage_value(instance, b)); },
      [&cost](const Bits& b) { return cost.total(b); }, budget);
}

namespace detail {

/// First two moments of the activated-set size over all 2^|E| live-edge
/// patterns; each pattern contributes reach(seeds) weighted by its
/// probability.
inline std::pair<double, double> ic_moments(const ICModel& model, const Bits& seeds) {
  const std::size_t m = model.graph.edges.size();
  if (m > 20) throw OracleSizeError("exact IC enumeration: too many edges (|E| > 20)");
  const std::size_t n = model.graph.n_vertices;
  const double p = model.edge_probability;

  const std::vector<std::uint32_t> seed_ids = selected_indices(seeds);
  if (seed_ids.empty()) return {0.0, 0.0};

  double mean = 0.0;
  double second_moment = 0.0;
  const std::uint32_t patterns = 1u << m;
  std::vector<std::vector<std::uint32_t>> live_adj(n);
  std::vector<std::uint8_t> reached(n);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t pattern = 0; pattern < patterns; ++pattern) {
    for (auto& a : live_adj) a.clear();
    int live_count = 0;
    for (std::size_t e = 0; e < m; ++e) {
      if (pattern & (1u << e)) {
        live_adj[model.graph.edges[e].first].push_back(model.graph.edges[e].second);
        ++live_count;
      }
    }
    const double prob =
        std::pow(p, live_count) * std::pow(1.0 - p, static_cast<double>(m) - live_count);
    if (prob == 0.0) continue;

    std::fill(reached.begin(), reached.end(), 0);
    stack.assign(seed_ids.begin(), seed_ids.end());
    for (const std::uint32_t v : stack) reached[v] = 1;
    std::size_t reach = stack.size();
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      for (const std::uint32_t v : live_adj[u]) {
        if (!reached[v]) {
          reached[v] = 1;
          ++reach;
          stack.push_back(v);
        }
      }
    }
    mean += prob * static_cast<double>(reach);
    second_moment += prob * static_cast<double>(reach) * static_cast<double>(reach);
  }
  return {mean, second_moment};
}

}  // namespace detail

/// Exact expected activated-set size via live-edge pattern enumeration.
inline double exact_ic_expectation(const ICModel& model, const Bits& seeds) {
  return detail::ic_moments(model, seeds).first;
}

/// Exact variance of the activated-set size under the same enumeration.
inline double exact_ic_variance(const ICModel& model, const Bits& seeds) {
  const auto [mean, second] = detail::ic_moments(model, seeds);
  return second - mean * mean;
}

/// Worst-case ratio of marginal gains over all X subset of Y, v outside Y.
/// 0/0 pairs are skipped and x/0 with x > 0 counts as +infinity; the result
/// is clamped into [0, 1] for reporting. Enumeration requires n <= 12.
inline double exact_submodularity_ratio(std::size_t n,
                                        const std::function<double(const Bits&)>& f) {
  if (n > 12) throw OracleSizeError("exact_submodularity_ratio: instance too large (n > 12)");
  const std::uint32_t total = 1u << n;
  std::vector<double> values(total);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    values[mask] = f(detail::bits_from_mask(mask, n));
  }

  double ratio = std::numeric_limits<double>::infinity();
  for (std::uint32_t y = 0; y < total; ++y) {
    // Enumerate X over submasks of Y.
    std::uint32_t x = y;
    while (true) {
      for (std::size_t v = 0; v < n; ++v) {
        const std::uint32_t vbit = 1u << v;
        if (y & vbit) continue;
        const double num = values[x | vbit] - values[x];
        const double den = values[y | vbit] - values[y];
        if (den == 0.0) continue;  // 0/0 skipped; num/0 treated as +inf
        ratio = std::min(ratio, num / den);
      }
      if (x == 0) break;
      x = (x - 1) & y;
    }
  }
  if (ratio == std::numeric_limits<double>::infinity()) return 1.0;
  return std::min(std::max(ratio, 0.0), 1.0);
}

/// Minimum marginal cost of adding any item; for modular costs this is the
/// smallest item cost.
inline double min_marginal_cost(const LinearCost& cost) {
  if (cost.item_costs.empty()) throw std::invalid_argument("min_marginal_cost: no items");
  return cost.min_cost();
}

/// Total curvature of a modular cost vector, computed from its definition
/// 1 - min_v (c(V) - c(V\{v})) / c({v}); zero for any linear cost.
inline double total_curvature(const LinearCost& cost) {
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const double c : cost.item_costs) {
    min_ratio = std::min(min_ratio, c / c);
  }
  return 1.0 - min_ratio;
}

/// The reduced-budget multiplier applied to B: with exact modular costs
/// (alpha_c = alpha_chat = 1, kappa_c = 0, psi = 1) the multiplier is 1 and
/// the reduced-budget optimum coincides with the true optimum.
inline double reduced_budget(double budget, double alpha_c, double alpha_chat,
                             double kappa_c, double psi, double k_b) {
  const double multiplier =
      alpha_chat * (1.0 + alpha_c * alpha_c * (k_b - 1.0) * (1.0 - kappa_c)) / (psi * k_b);
  return budget * multiplier;
}

}  // namespace bpodc

#endif  // BPODC_ORACLE_HPP_
