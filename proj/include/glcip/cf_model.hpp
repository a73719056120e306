#pragma once

#include <optional>
#include <vector>

#include "glcip/cover_cuts.hpp"
#include "glcip/cuts.hpp"
#include "glcip/gamma_lift.hpp"
#include "glcip/instance.hpp"
#include "glcip/milp/model.hpp"
#include "glcip/propagation.hpp"

namespace glcip {

/**
 * Compact formulation: only the incentive variables, one choice row per
 * node, and the exponential covering family attached by separation.
 */
struct CfModelHandle {
  milp::Model model;
  const Instance* inst = nullptr;
  LiftedPropagation lifted;
  std::vector<std::vector<int>> y_var;  // per node, per menu index
};

CfModelHandle build_cf_model(const Instance& inst, const LiftedPropagation& lifted);

/**
 * Smallest incentive of each member that activates it when all of V \ X
 * exerts influence; -1 when no menu entry suffices (its y-sum is empty).
 */
std::vector<std::int64_t> cf_min_incentives(const Instance& inst, const LiftedPropagation& lifted,
                                            const std::vector<int>& members);

CutRecord make_cf_cut(const CfModelHandle& handle, const CfProvenance& prov);

/// Decodes an integral y vector into the incentive choice per node.
IncentiveSolution decode_cf_solution(const CfModelHandle& handle, const std::vector<double>& y);

/**
 * Integral separation by cascade simulation: accepts feasible points,
 * otherwise returns the covering cut for the non-activated set, whose
 * left-hand side is exactly zero at the rejected point.
 */
std::optional<CutRecord> separate_cf_integral(const CfModelHandle& handle,
                                              const std::vector<double>& y);

/// Fractional separation via a MIP minimizing the covering cut's value.
SeparationOutcome separate_cf_fractional(const CfModelHandle& handle,
                                         const std::vector<double>& y,
                                         const SeparationOptions& opts = {});

}  // namespace glcip
