#pragma once

#include <vector>

#include "glcip/cuts.hpp"
#include "glcip/gamma_lift.hpp"
#include "glcip/instance.hpp"
#include "glcip/milp/model.hpp"

namespace glcip {

/**
 * Arc-flow formulation: binary activation x_i, incentive choice y_ip and
 * influence arcs z_ij, with the lifted propagation rows. Cycle elimination
 * rows are not enumerated; they arrive through separation.
 */
struct ArcModelHandle {
  milp::Model model;
  const Instance* inst = nullptr;
  LiftedPropagation lifted;
  std::vector<int> x_var;                // per node
  std::vector<std::vector<int>> y_var;   // per node, per menu index
  std::vector<int> z_var;                // per arc, aligned with inst->arcs
  std::vector<int> mutual_partner;       // arc index of (dst, src), -1 when absent
};

ArcModelHandle build_arc_model(const Instance& inst, const LiftedPropagation& lifted);

/// Builds the row for a cycle (arc positions into inst.arcs) excluding node k.
CutRecord make_cycle_cut(const ArcModelHandle& handle, const std::vector<int>& arc_positions,
                         int excluded_node);

/**
 * Cycle separation on the relaxation values in x (full model-variable
 * vector). Arc weights x_i - z_ij feed a shortest-path search per anchor;
 * two-arc cycles are scanned directly and negative-weight cycles are
 * caught by a label-correcting sweep, since both can hide from the
 * clipped shortest paths. At most one cut per anchor node per call.
 */
std::vector<CutRecord> separate_cycles(const ArcModelHandle& handle,
                                       const std::vector<double>& x);

}  // namespace glcip
