#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "glcip/gamma_lift.hpp"
#include "glcip/instance.hpp"

namespace glcip {

/// One incentive choice per node; every value must be a member of P_i.
struct IncentiveSolution {
  std::vector<std::int64_t> incentive;

  friend bool operator==(const IncentiveSolution&, const IncentiveSolution&) = default;
};

struct CascadeResult {
  std::vector<bool> activated;
  std::vector<int> activation_round;                 // -1 for non-activated nodes
  std::vector<std::pair<int, int>> activation_order; // (round, node), by activation time
  std::vector<std::int64_t> residuals;               // final R_i
  int activated_count = 0;

  std::vector<int> non_activated() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < activated.size(); ++i)
      if (!activated[i]) out.push_back(static_cast<int>(i));
    return out;
  }
};

/**
 * Benchmark-convention activation value: the influence of the active
 * neighbors U, raised to gamma and rounded to the nearest integer, plus the
 * incentive. The node counts as activated when this reaches h_i. Note that
 * activation decisions elsewhere in the solver use the exact integer
 * requirement from the lift, which is authoritative; see gamma_lift.hpp.
 * Throws std::invalid_argument when U contains a non-neighbor of i.
 */
std::int64_t activation_value(const Instance& inst, int i, std::span<const int> active_neighbors,
                              std::int64_t p);

/**
 * Synchronous cascade: round 0 activates every node whose incentive alone
 * meets its requirement, later rounds subtract d_ji for every neighbor j
 * activated in the previous round, until a fixpoint.
 */
CascadeResult simulate_cascade(const Instance& inst, const LiftedPropagation& lifted,
                               const IncentiveSolution& sol);
CascadeResult simulate_cascade(const Instance& inst, const IncentiveSolution& sol);

bool is_feasible(const Instance& inst, const IncentiveSolution& sol);
std::int64_t solution_cost(const Instance& inst, const IncentiveSolution& sol);

}  // namespace glcip
