#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "glcip/milp/model.hpp"

namespace glcip::milp {

enum class MipStatus { Optimal, Infeasible, TimeLimit, NodeLimit };

struct CallbackContext {
  const std::vector<double>& x;  // current LP optimum over model variables
  bool integral = false;
  int depth = 0;
  bool at_root = false;
  int cut_round = 0;             // separation round at this node
  double best_bound = -kInfinity;
  double incumbent_objective = kInfinity;

  /// 100 * (UB - LB) / UB; 100 when no incumbent is known yet.
  double gap_pct() const;
};

/**
 * Separation callback: returns violated rows to append to the model, or an
 * empty vector to accept the point. Rows violated by less than the cut
 * tolerance are dropped by the engine. The lazy callback runs at every
 * integral LP optimum and is allowed to reject it; the user callback runs
 * at fractional optima.
 */
using SeparatorFn = std::function<std::vector<Row>(const CallbackContext&)>;

struct Callbacks {
  SeparatorFn lazy;
  SeparatorFn user;
};

struct MipLimits {
  double time_limit_s = kInfinity;
  std::int64_t node_limit = -1;  // < 0: unlimited
  double cutoff = kInfinity;     // exclusive objective cutoff (keep strictly better)
  int depth = 0;                 // 1 for separation MIPs; they may not recurse further
  int max_user_rounds_root = 256;
  int max_user_rounds_node = 32;
  int max_gomory_rounds = 20;    // root-only tableau cuts; 0 disables
  int gomory_cuts_per_round = 12;
  // Stop at the first incumbent below the cutoff; separation MIPs only
  // need some violated configuration, not the most violated one.
  bool stop_at_first_solution = false;
};

struct MipResult {
  MipStatus status = MipStatus::Infeasible;
  bool has_solution = false;
  std::vector<double> x;            // best integral point found
  double objective = kInfinity;     // its objective
  double bound = -kInfinity;        // proven lower bound (cutoff-capped)
  double root_bound = -kInfinity;   // bound when the root node finished
  std::int64_t nodes = 0;
  std::array<std::int64_t, kCutKindCount> cuts_added{};
  std::int64_t gomory_cuts = 0;
  long lp_iterations = 0;
  double seconds = 0.0;
};

/**
 * Branch and bound with best-bound node selection, most-fractional
 * branching and warm-started LP re-solves. Deterministic for identical
 * inputs and limits (time limits aside). Throws std::logic_error when a
 * callback row references an unknown variable.
 */
MipResult solve_mip(const Model& model, const Callbacks& callbacks, const MipLimits& limits);

}  // namespace glcip::milp
