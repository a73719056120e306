#pragma once

#include <cstdint>
#include <vector>

#include "glcip/instance.hpp"

namespace glcip {

/**
 * Linearization of the activation test. For any exponent gamma, node i
 * with incentive p activates on integer influence sum S exactly when
 * S >= requirement(i, p) with
 *
 *   requirement(i, p) = ceil(max(0, h_i - p)^(1/gamma)),
 *
 * so replacing thresholds by rhs[i] = ceil(h_i^(1/gamma)) and incentive
 * values by incentive_coeff[i][p] = rhs[i] - requirement(i, p) reduces the
 * whole model to the linear case. All ceilings are certified in exact
 * integer arithmetic.
 */
struct LiftedPropagation {
  std::vector<std::int64_t> rhs;                                // per node
  std::vector<std::vector<std::int64_t>> incentive_coeff;       // per node, per menu index

  std::int64_t requirement(int i, int p_index) const {
    return rhs[i] - incentive_coeff[i][p_index];
  }
};

LiftedPropagation lift(const Instance& inst);

/// Minimum integer incoming influence that activates node i under incentive
/// value p (not index); 0 once p >= h_i.
std::int64_t influence_requirement(const Instance& inst, int i, std::int64_t p);

/// Exact cover test: influence sum S plus incentive p fail to activate i,
/// i.e. S^gamma + p < h_i.
bool insufficient_to_activate(const Instance& inst, int i, std::int64_t influence_sum,
                              std::int64_t p);

}  // namespace glcip
