#include "glcip/propagation.hpp"

#include <algorithm>
#include <stdexcept>

#include "glcip/exact_power.hpp"

namespace glcip {

std::int64_t activation_value(const Instance& inst, int i, std::span<const int> active_neighbors,
                              std::int64_t p) {
  std::int64_t sum = 0;
  for (int j : active_neighbors) {
    const auto& nbrs = inst.in_neighbors[i];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
    if (it == nbrs.end() || *it != j)
      throw std::invalid_argument("node " + std::to_string(j) + " is not an in-neighbor of " +
                                  std::to_string(i));
    sum += inst.in_weights[i][it - nbrs.begin()];
  }
  return round_power(sum, inst.gamma) + p;
}

CascadeResult simulate_cascade(const Instance& inst, const LiftedPropagation& lifted,
                               const IncentiveSolution& sol) {
  const int n = inst.node_count;
  CascadeResult res;
  res.activated.assign(n, false);
  res.activation_round.assign(n, -1);
  res.residuals.resize(n);

  std::vector<int> newly;
  for (int i = 0; i < n; ++i) {
    int p_idx = inst.incentive_index(i, sol.incentive[i]);
    if (p_idx < 0) throw std::invalid_argument("incentive not in menu of node " + std::to_string(i));
    res.residuals[i] = lifted.requirement(i, p_idx);
    if (res.residuals[i] <= 0) newly.push_back(i);
  }

  int round = 0;
  while (!newly.empty()) {
    for (int i : newly) {
      res.activated[i] = true;
      res.activation_round[i] = round;
      res.activation_order.emplace_back(round, i);
    }
    std::vector<int> frontier = std::move(newly);
    newly.clear();
    for (int i = 0; i < n; ++i) {
      if (res.activated[i] || res.residuals[i] <= 0) continue;
      const auto& nbrs = inst.in_neighbors[i];
      for (std::size_t t = 0; t < nbrs.size(); ++t) {
        if (res.activation_round[nbrs[t]] == round) res.residuals[i] -= inst.in_weights[i][t];
      }
      if (res.residuals[i] <= 0) newly.push_back(i);
    }
    ++round;
  }
  res.activated_count = static_cast<int>(res.activation_order.size());
  return res;
}

CascadeResult simulate_cascade(const Instance& inst, const IncentiveSolution& sol) {
  return simulate_cascade(inst, lift(inst), sol);
}

bool is_feasible(const Instance& inst, const IncentiveSolution& sol) {
  return simulate_cascade(inst, sol).activated_count >= coverage_target(inst);
}

std::int64_t solution_cost(const Instance& inst, const IncentiveSolution& sol) {
  std::int64_t total = 0;
  for (int i = 0; i < inst.node_count; ++i) {
    int p_idx = inst.incentive_index(i, sol.incentive[i]);
    if (p_idx < 0) throw std::invalid_argument("incentive not in menu of node " + std::to_string(i));
    total += inst.costs[i][p_idx];
  }
  return total;
}

}  // namespace glcip
