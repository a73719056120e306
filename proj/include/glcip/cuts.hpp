#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "glcip/milp/model.hpp"

namespace glcip {

/// Generalized cycle elimination: sum of z over the cycle arcs bounded by
/// the x of every cycle node except the excluded one.
struct CycleProvenance {
  std::vector<std::pair<int, int>> cycle_arcs;  // (src, dst) in cycle order
  int excluded_node = -1;
};

/**
 * Influence cover cut data: node set X, optional anchor k (rhs-1 variants
 * have none), per-member insufficient incentive levels, and the external
 * neighbor sets that stay on the insufficient side. Lifted variants share
 * one external set and are expressed over x variables.
 */
struct CoverProvenance {
  std::vector<int> members;                        // X, ascending
  int anchor = -1;                                 // k, or -1 for the rhs-1 form
  std::vector<std::int64_t> p_tilde;               // aligned with members
  std::vector<std::vector<int>> external;          // ICC: per-member N~_i
  std::vector<int> shared_external;                // LICC: N~_X
  bool lifted = false;
};

/// Covering cut of the compact formulation: some node of X takes an
/// incentive at least p~_i(X); -1 marks nodes no incentive can activate.
struct CfProvenance {
  std::vector<int> members;                 // X, ascending
  std::vector<std::int64_t> min_incentive;  // p~_i(X) aligned with members, -1 = none
};

using CutProvenance = std::variant<CycleProvenance, CoverProvenance, CfProvenance>;

struct CutRecord {
  milp::Row row;  // in the owning model's variable space
  CutProvenance provenance;
};

}  // namespace glcip
