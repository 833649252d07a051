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

#ifndef BPODC_PROBLEMS_HPP_
#define BPODC_PROBLEMS_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bpodc/core.hpp"
#include "bpodc/rng.hpp"

namespace bpodc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Directed graph with dense vertex ids. Undirected inputs are expanded to
/// two arcs at load time; all degree-based quantities use out-degree.
struct Graph {
  std::size_t n_vertices = 0;
  bool directed = true;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // deduplicated
  std::vector<std::vector<std::uint32_t>> out_neighbors;

  std::size_t out_degree(std::uint32_t v) const { return out_neighbors[v].size(); }

  void rebuild_adjacency() {
    out_neighbors.assign(n_vertices, {});
    for (const auto& [u, v] : edges) out_neighbors[u].push_back(v);
  }
};

inline Graph make_graph(std::size_t n,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs,
                        bool directed = true) {
  Graph g;
  g.n_vertices = n;
  g.directed = directed;
  if (!directed) {
    const auto forward = arcs;
    for (const auto& [u, v] : forward) arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  g.edges = std::move(arcs);
  g.rebuild_adjacency();
  return g;
}

/// Parses "u v" edge lines (optional third token ignored, '#'/'%' comments
/// skipped), remaps vertex ids to a dense range in order of first
/// appearance, and deduplicates edges. Undirected inputs gain both arcs.
inline Graph load_edge_list(std::istream& in, bool directed) {
  std::unordered_map<std::uint64_t, std::uint32_t> id_map;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  auto dense_id = [&id_map](std::uint64_t raw) {
    auto [it, inserted] = id_map.emplace(raw, static_cast<std::uint32_t>(id_map.size()));
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    std::istringstream ls(line);
    std::uint64_t u = 0, v = 0;
    if (!(ls >> u >> v)) {
      throw ParseError("malformed edge line " + std::to_string(line_no) + ": '" + line + "'");
    }
    arcs.emplace_back(dense_id(u), dense_id(v));
  }
  if (id_map.empty()) throw ParseError("empty graph: no edges found");
  return make_graph(id_map.size(), std::move(arcs), directed);
}

/// Independent Cascade propagation model with one shared edge probability.
struct ICModel {
  Graph graph;
  double edge_probability = 0.05;
  std::size_t n_simulations = 500;
};

/// One cascade from the seed set: newly activated vertices get one chance to
/// activate each inactive out-neighbor with probability p, until a round
/// activates nothing. Returns per-vertex activation flags (seeds included).
inline std::vector<std::uint8_t> ic_single_run(const ICModel& model, const Bits& seeds,
                                               RngStream& rng) {
  const std::size_t n = model.graph.n_vertices;
  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::uint32_t> frontier;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (v < seeds.size() && seeds[v]) {
      active[v] = 1;
      frontier.push_back(v);
    }
  }
  std::vector<std::uint32_t> next;
  while (!frontier.empty()) {
    next.clear();
    for (const std::uint32_t u : frontier) {
      for (const std::uint32_t v : model.graph.out_neighbors[u]) {
        if (!active[v] && rng.next_bernoulli(model.edge_probability)) {
          active[v] = 1;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return active;
}

/// Monte Carlo estimate of the expected activated-set size: the mean of
/// n_simulations independent cascades. Simulation i draws from the
/// sub-stream rng.split(i), so the estimate is a pure function of the
/// stream's seed. Counts as a single objective evaluation.
inline double ic_estimate(const ICModel& model, const Bits& seeds, RngStream& rng) {
  const std::size_t n = model.graph.n_vertices;
  const std::vector<std::uint32_t> seed_ids = selected_indices(seeds);
  if (seed_ids.empty()) return 0.0;

  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::uint32_t> frontier, next;
  std::uint64_t total = 0;
  for (std::size_t sim = 0; sim < model.n_simulations; ++sim) {
    RngStream sim_rng = rng.split(sim);
    std::fill(active.begin(), active.end(), 0);
    frontier.assign(seed_ids.begin(), seed_ids.end());
    for (const std::uint32_t v : frontier) active[v] = 1;
    std::size_t activated = frontier.size();
    while (!frontier.empty()) {
      next.clear();
      for (const std::uint32_t u : frontier) {
        for (const std::uint32_t v : model.graph.out_neighbors[u]) {
          if (!active[v] && sim_rng.next_bernoulli(model.edge_probability)) {
            active[v] = 1;
            next.push_back(v);
          }
        }
      }
      activated += next.size();
      frontier.swap(next);
    }
    total += activated;
  }
  return static_cast<double>(total) / static_cast<double>(model.n_simulations);
}

/// Maximum coverage instance: item i selects set i; the objective is the
/// cardinality of the union of selected sets.
struct CoverageInstance {
  std::size_t universe_size = 0;
  std::vector<std::vector<std::uint32_t>> sets;

  std::size_t n_items() const { return sets.size(); }
};

inline std::size_t coverage_value(const CoverageInstance& instance, const Bits& selection) {
  assert(selection.size() == instance.sets.size());
  std::vector<std::uint8_t> covered(instance.universe_size, 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (!selection[i]) continue;
    for (const std::uint32_t e : instance.sets[i]) {
      if (!covered[e]) {
        covered[e] = 1;
        ++count;
      }
    }
  }
  return count;
}

/// Modular cost c(X) = sum of per-item costs. Item costs must be positive so
/// the minimum marginal cost stays bounded away from zero.
struct LinearCost {
  std::vector<double> item_costs;

  explicit LinearCost(std::vector<double> costs = {}) : item_costs(std::move(costs)) {
    for (const double c : item_costs) {
      if (c <= 0.0) throw std::invalid_argument("item costs must be positive");
    }
  }

  double total(const Bits& selection) const {
    assert(selection.size() == item_costs.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < selection.size(); ++i) {
      if (selection[i]) sum += item_costs[i];
    }
    return sum;
  }

  double min_cost() const {
    return *std::min_element(item_costs.begin(), item_costs.end());
  }
};

/// Degree-noise costs c_v = 1 + (1 + |xi|) * d(v) with xi ~ N(0, 0.5^2),
/// one draw per vertex at construction. Costs are fixed for the whole run.
inline LinearCost build_im_costs(const Graph& graph, RngStream& rng) {
  std::vector<double> costs(graph.n_vertices);
  for (std::uint32_t v = 0; v < graph.n_vertices; ++v) {
    const double xi = rng.next_normal(0.0, 0.5);
    costs[v] = 1.0 + (1.0 + std::abs(xi)) * static_cast<double>(graph.out_degree(v));
  }
  return LinearCost(std::move(costs));
}

/// Degree-excess costs c_v = 1 + max(d(v) - q, 0).
inline LinearCost build_mc_costs(const Graph& graph, std::uint32_t q) {
  std::vector<double> costs(graph.n_vertices);
  for (std::uint32_t v = 0; v < graph.n_vertices; ++v) {
    const auto d = static_cast<std::int64_t>(graph.out_degree(v));
    costs[v] = 1.0 + static_cast<double>(std::max<std::int64_t>(d - q, 0));
  }
  return LinearCost(std::move(costs));
}

/// One set per vertex: the vertex itself plus its out-neighbors.
inline CoverageInstance build_mc_sets(const Graph& graph) {
  CoverageInstance instance;
  instance.universe_size = graph.n_vertices;
  instance.sets.resize(graph.n_vertices);
  for (std::uint32_t v = 0; v < graph.n_vertices; ++v) {
    auto& set = instance.sets[v];
    set.push_back(v);
    for (const std::uint32_t u : graph.out_neighbors[v]) {
      if (u != v) set.push_back(u);
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return instance;
}

inline ProblemInstance make_coverage_problem(CoverageInstance instance, LinearCost cost,
                                             std::string name = "coverage") {
  ProblemInstance problem;
  problem.n = instance.n_items();
  problem.name = std::move(name);
  auto shared = std::make_shared<const CoverageInstance>(std::move(instance));
  problem.objective = [shared](const Bits& bits, RngStream&) {
    return static_cast<double>(coverage_value(*shared, bits));
  };
  auto shared_cost = std::make_shared<const LinearCost>(std::move(cost));
  problem.cost = [shared_cost](const Bits& bits) { return shared_cost->total(bits); };
  return problem;
}

inline ProblemInstance make_im_problem(ICModel model, LinearCost cost,
                                       std::string name = "im") {
  ProblemInstance problem;
  problem.n = model.graph.n_vertices;
  problem.name = std::move(name);
  auto shared = std::make_shared<const ICModel>(std::move(model));
  problem.objective = [shared](const Bits& bits, RngStream& rng) {
    return ic_estimate(*shared, bits, rng);
  };
  auto shared_cost = std::make_shared<const LinearCost>(std::move(cost));
  problem.cost = [shared_cost](const Bits& bits) { return shared_cost->total(bits); };
  return problem;
}

}  // namespace bpodc

#endif  // BPODC_PROBLEMS_HPP_
