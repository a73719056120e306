#include "glcip/milp/branch_and_cut.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

#include "glcip/milp/simplex.hpp"

namespace glcip::milp {

namespace {

constexpr std::int64_t kCompactionInterval = 24;  // nodes between cut-pool sweeps
constexpr std::int64_t kCutStaleAge = 16;         // nodes a cut may stay slack
constexpr std::size_t kCutPoolCap = 160;          // hard cap on enforced dynamic rows

struct Node {
  double bound = -kInfinity;
  int depth = 0;
  std::int64_t id = 0;
  std::vector<std::tuple<int, double, double>> decisions;  // (var, lb, ub) along the path
};

struct NodeOrder {
  // Best bound first; ties explored depth-first, then in creation order.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class Clock {
 public:
  explicit Clock(double limit_s) : start_(std::chrono::steady_clock::now()), limit_(limit_s) {}
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool expired() const { return std::isfinite(limit_) && elapsed() >= limit_; }

 private:
  std::chrono::steady_clock::time_point start_;
  double limit_;
};

/// Dynamically added rows with bookkeeping for periodic cleanup. Every
/// family we separate can be re-separated on demand, so dropping a long
/// slack row is always safe.
struct CutPool {
  std::vector<Row> rows;
  std::vector<std::int64_t> last_tight;

  void mark(const std::vector<double>& x, std::int64_t now) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      double act = r.activity(x);
      bool tight = r.sense == Sense::GreaterEq ? act <= r.rhs + 1e-6 : act >= r.rhs - 1e-6;
      if (tight) last_tight[i] = now;
    }
  }
};

}  // namespace

double CallbackContext::gap_pct() const {
  if (incumbent_objective == kInfinity) return 100.0;
  if (incumbent_objective == 0.0) return best_bound >= -kIntegralityTol ? 0.0 : 100.0;
  double g = 100.0 * (incumbent_objective - best_bound) / std::fabs(incumbent_objective);
  return std::max(0.0, g);
}

MipResult solve_mip(const Model& model, const Callbacks& callbacks, const MipLimits& limits) {
  if (limits.depth > 1)
    throw std::logic_error("separation MIPs may not recurse into MIP-based separation");

  Clock clock(limits.time_limit_s);
  MipResult result;
  const bool integral_objective = model.objective_is_integral();

  auto strengthen = [&](double lp_obj) {
    return integral_objective ? std::ceil(lp_obj - 10 * kIntegralityTol) : lp_obj;
  };

  auto solver = std::make_unique<SimplexSolver>(model);
  CutPool pool;

  auto add_cut_rows = [&](const std::vector<Row>& rows, std::int64_t now) {
    solver->add_rows(rows);
    for (const Row& r : rows) {
      pool.rows.push_back(r);
      pool.last_tight.push_back(now);
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  open.push(Node{});
  std::int64_t next_id = 1;

  double incumbent_obj = kInfinity;
  std::vector<double> incumbent_x;
  bool root_recorded = false;
  double lost_bound = kInfinity;  // bounds of subtrees dropped at LP iteration limits
  int gomory_rounds = 0;

  auto effective_cutoff = [&]() { return std::min(limits.cutoff, incumbent_obj); };
  auto prunable = [&](double bound) {
    double cut = effective_cutoff();
    return integral_objective ? bound >= cut - kIntegralityTol : bound >= cut - 1e-9;
  };

  auto validate_rows = [&](std::vector<Row>& rows, const std::vector<double>& x) {
    std::vector<Row> kept;
    for (Row& row : rows) {
      if (row.coeffs.empty()) throw std::logic_error("callback produced an empty row");
      for (auto [j, c] : row.coeffs) {
        (void)c;
        if (j < 0 || j >= model.num_variables())
          throw std::logic_error("callback row references unknown variable " + std::to_string(j));
      }
      if (row.violation(x) >= kCutViolationTol) kept.push_back(std::move(row));
    }
    return kept;
  };

  MipStatus final_status = MipStatus::Optimal;

  while (!open.empty()) {
    if (clock.expired()) {
      final_status = MipStatus::TimeLimit;
      break;
    }
    if (limits.node_limit >= 0 && result.nodes >= limits.node_limit) {
      final_status = MipStatus::NodeLimit;
      break;
    }

    Node node = open.top();
    open.pop();
    if (node.bound != -kInfinity && prunable(node.bound)) continue;
    ++result.nodes;

    // Periodic cut-pool sweep: drop rows that stayed slack for a while and
    // rebuild the solver without them. Stored bases of other nodes become
    // stale, which only costs them their warm start.
    if (result.nodes % kCompactionInterval == 0 && !pool.rows.empty()) {
      std::vector<Row> kept;
      std::vector<std::int64_t> kept_tight;
      for (std::size_t i = 0; i < pool.rows.size(); ++i) {
        if (result.nodes - pool.last_tight[i] <= kCutStaleAge) {
          kept.push_back(std::move(pool.rows[i]));
          kept_tight.push_back(pool.last_tight[i]);
        }
      }
      while (kept.size() > kCutPoolCap) {
        // Evict the stalest once the pool outgrows its cap.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < kept.size(); ++i)
          if (kept_tight[i] < kept_tight[worst]) worst = i;
        kept.erase(kept.begin() + worst);
        kept_tight.erase(kept_tight.begin() + worst);
      }
      if (kept.size() != pool.rows.size()) {
        pool.rows = std::move(kept);
        pool.last_tight = std::move(kept_tight);
        solver = std::make_unique<SimplexSolver>(model);
        solver->add_rows(pool.rows);
      }
    }

    // Warm continuation: the previous node's basis is the starting point;
    // phase 1 repairs the bound changes in a few pivots.
    solver->reset_bounds();
    for (auto [var, lb, ub] : node.decisions) solver->set_bounds(var, lb, ub);

    double node_bound = node.bound;
    bool fathomed = false;
    int user_rounds = 0;
    const int user_round_cap =
        node.depth == 0 ? limits.max_user_rounds_root : limits.max_user_rounds_node;
    const bool at_root = node.id == 0;
    LpResult lp;

    for (;;) {
      lp = solver->solve();
      result.lp_iterations += lp.iterations;
      if (lp.status == LpStatus::Infeasible) {
        fathomed = true;
        break;
      }
      if (lp.status == LpStatus::Unbounded)
        throw std::logic_error("LP relaxation unbounded; integer variables must be bounded");
      if (lp.status == LpStatus::IterationLimit) {
        // Treat as an unexplored node: keep its last known bound.
        fathomed = true;
        final_status = MipStatus::NodeLimit;
        lost_bound = std::min(lost_bound, node_bound);
        break;
      }
      pool.mark(lp.x, result.nodes);

      node_bound = std::max(node_bound, strengthen(lp.objective));
      if (prunable(node_bound)) {
        fathomed = true;
        break;
      }

      bool integral = true;
      for (int j = 0; j < model.num_variables(); ++j) {
        if (!model.variable(j).integral) continue;
        double frac = lp.x[j] - std::floor(lp.x[j]);
        if (frac > kIntegralityTol && frac < 1.0 - kIntegralityTol) {
          integral = false;
          break;
        }
      }

      double global_bound = node_bound;
      if (!open.empty()) global_bound = std::min(global_bound, open.top().bound);
      CallbackContext ctx{lp.x,        integral,     node.depth, at_root,
                          user_rounds, global_bound, incumbent_obj};

      if (integral) {
        if (callbacks.lazy) {
          std::vector<Row> rows = callbacks.lazy(ctx);
          std::vector<Row> kept = validate_rows(rows, lp.x);
          if (!kept.empty()) {
            for (const Row& r : kept) ++result.cuts_added[static_cast<int>(r.kind)];
            add_cut_rows(kept, result.nodes);
            continue;
          }
        }
        double obj_val = integral_objective ? std::round(lp.objective) : lp.objective;
        if (obj_val < incumbent_obj - (integral_objective ? 0.5 : 1e-9) &&
            obj_val < limits.cutoff - (integral_objective ? 0.5 : 0.0)) {
          incumbent_obj = obj_val;
          incumbent_x = lp.x;
          for (double& v : incumbent_x) {
            double r = std::round(v);
            if (std::fabs(v - r) <= kIntegralityTol) v = r;
          }
          if (limits.stop_at_first_solution) {
            final_status = MipStatus::NodeLimit;
            fathomed = true;
            break;
          }
        }
        fathomed = true;
        break;
      }

      if (callbacks.user && user_rounds < user_round_cap && !clock.expired()) {
        std::vector<Row> rows = callbacks.user(ctx);
        std::vector<Row> kept = validate_rows(rows, lp.x);
        if (!kept.empty()) {
          for (const Row& r : kept) ++result.cuts_added[static_cast<int>(r.kind)];
          add_cut_rows(kept, result.nodes);
          ++user_rounds;
          continue;
        }
      }

      // Root tableau cuts once the problem-specific separators run dry.
      if (at_root && node.decisions.empty() && gomory_rounds < limits.max_gomory_rounds &&
          !clock.expired()) {
        std::vector<Row> rows =
            solver->generate_gomory_cuts(model, limits.gomory_cuts_per_round);
        std::vector<Row> kept;
        for (Row& r : rows)
          if (r.violation(lp.x) >= 1e-6) kept.push_back(std::move(r));
        if (!kept.empty()) {
          ++gomory_rounds;
          result.gomory_cuts += static_cast<std::int64_t>(kept.size());
          add_cut_rows(kept, result.nodes);
          continue;
        }
      }
      break;  // branch
    }

    if (at_root && !root_recorded) {
      root_recorded = true;
      result.root_bound =
          fathomed && lp.status == LpStatus::Infeasible ? effective_cutoff() : node_bound;
    }

    if (fathomed) {
      if (final_status == MipStatus::NodeLimit && limits.stop_at_first_solution &&
          incumbent_obj < kInfinity)
        break;
      continue;
    }

    // Most fractional variable within the highest fractional priority
    // class; ties by index.
    int branch_var = -1;
    double best_score = -1.0;
    int best_priority = 0;
    for (int j = 0; j < model.num_variables(); ++j) {
      const Variable& var = model.variable(j);
      if (!var.integral) continue;
      double frac = lp.x[j] - std::floor(lp.x[j]);
      if (frac <= kIntegralityTol || frac >= 1.0 - kIntegralityTol) continue;
      double score = 0.5 - std::fabs(frac - 0.5);
      if (branch_var < 0 || var.branch_priority > best_priority ||
          (var.branch_priority == best_priority && score > best_score + 1e-12)) {
        best_score = score;
        best_priority = var.branch_priority;
        branch_var = j;
      }
    }
    if (branch_var < 0) throw std::logic_error("branch requested on an integral point");

    double value = lp.x[branch_var];
    double cur_lb = model.variable(branch_var).lb;
    double cur_ub = model.variable(branch_var).ub;
    for (auto [var, lb, ub] : node.decisions) {
      if (var == branch_var) {
        cur_lb = lb;
        cur_ub = ub;
      }
    }

    Node down;
    down.bound = node_bound;
    down.depth = node.depth + 1;
    down.id = next_id++;
    down.decisions = node.decisions;
    down.decisions.emplace_back(branch_var, cur_lb, std::floor(value));
    open.push(std::move(down));

    Node up;
    up.bound = node_bound;
    up.depth = node.depth + 1;
    up.id = next_id++;
    up.decisions = node.decisions;
    up.decisions.emplace_back(branch_var, std::ceil(value), cur_ub);
    open.push(std::move(up));
  }

  result.seconds = clock.elapsed();
  result.has_solution = incumbent_obj < kInfinity;
  if (result.has_solution) {
    result.objective = incumbent_obj;
    result.x = std::move(incumbent_x);
  }

  if (open.empty() && final_status == MipStatus::Optimal) {
    if (result.has_solution) {
      result.status = MipStatus::Optimal;
      result.bound = result.objective;
    } else {
      result.status = MipStatus::Infeasible;
      result.bound = limits.cutoff;
    }
  } else {
    result.status = final_status == MipStatus::Optimal ? MipStatus::TimeLimit : final_status;
    double bound = open.empty() ? effective_cutoff() : open.top().bound;
    bound = std::min(bound, lost_bound);
    result.bound = std::min(bound, effective_cutoff());
  }
  if (!root_recorded) result.root_bound = result.bound;
  return result;
}

}  // namespace glcip::milp
