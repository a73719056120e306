#pragma once

#include <optional>
#include <vector>

#include "glcip/arc_model.hpp"
#include "glcip/cuts.hpp"

namespace glcip {

struct SeparationOptions {
  double time_budget_s = 5.0;  // per separation MIP; exhaustion skips the cut
  bool use_cutoff = true;      // prune the separation MIP at the violation threshold
  bool first_violated = true;  // return on the first violated configuration
  // Greedy grow-and-evaluate pass before the MIP; exact per-node bracket
  // values, so any cut it returns is genuinely violated. The MIP still
  // guarantees exact separation when the heuristic comes up empty.
  bool heuristic_first = true;
  bool allow_mip = true;       // fall back to the exact MIP when the greedy pass misses
};

struct SeparationOutcome {
  std::optional<CutRecord> cut;
  bool budget_exhausted = false;
  // Optimum of the separation MIP when solved to optimality (without
  // cutoff pruning this is the exact minimum of the cut's left-hand side).
  std::optional<double> separation_objective;
};

/// Exact cover test for every member of a cover cut.
bool cover_condition_holds(const Instance& inst, const CoverProvenance& prov);

/// Materializes the inequality for a cover provenance in the arc model space.
CutRecord make_cover_cut(const ArcModelHandle& handle, const CoverProvenance& prov);

/**
 * Raises every p~_i to the largest menu value keeping the cover condition,
 * then greedily completes the external sets by descending influence (ties
 * by node id). Never decreases the violation at any relaxation point.
 */
CoverProvenance postprocess_icc(const Instance& inst, CoverProvenance prov);

/**
 * Influence cover cut separation for anchor k: solves a MIP minimizing the
 * cut's left-hand side at the relaxation point x. Returns a violated,
 * post-processed cut when the optimum falls below x_k.
 */
SeparationOutcome separate_icc(const ArcModelHandle& handle, const std::vector<double>& x,
                               int anchor, const SeparationOptions& opts = {});

/// Cardinality variant: |X| must exceed floor((1-alpha)|V|), right-hand side 1.
SeparationOutcome separate_icc_plus(const ArcModelHandle& handle, const std::vector<double>& x,
                                    const SeparationOptions& opts = {});

/**
 * Lifted cover cut separation over x and y variables only; anchor -1
 * selects the cardinality (rhs-1) variant.
 */
SeparationOutcome separate_licc(const ArcModelHandle& handle, const std::vector<double>& x,
                                int anchor, const SeparationOptions& opts = {});

}  // namespace glcip
