#include "glcip/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "glcip/arc_model.hpp"
#include "glcip/cf_model.hpp"
#include "glcip/cover_cuts.hpp"
#include "glcip/milp/branch_and_cut.hpp"
#include "json.hpp"

namespace glcip {

namespace {

constexpr double kEps = milp::kCutViolationTol;

/// Cheapest guaranteed start: hand every node its top incentive.
std::optional<std::pair<std::int64_t, IncentiveSolution>> all_max_solution(
    const Instance& inst, const LiftedPropagation& lifted) {
  IncentiveSolution sol;
  for (int i = 0; i < inst.node_count; ++i) sol.incentive.push_back(inst.max_incentive(i));
  if (simulate_cascade(inst, lifted, sol).activated_count < coverage_target(inst))
    return std::nullopt;
  return std::make_pair(solution_cost(inst, sol), sol);
}

/**
 * Deterministic greedy warm start: repeatedly buy the incentive upgrade
 * with the best activation gain per cost until the coverage target holds,
 * then lower every incentive as far as feasibility allows.
 */
std::optional<std::pair<std::int64_t, IncentiveSolution>> greedy_solution(
    const Instance& inst, const LiftedPropagation& lifted) {
  const int n = inst.node_count;
  const int target = coverage_target(inst);
  IncentiveSolution sol;
  sol.incentive.assign(n, 0);
  CascadeResult cascade = simulate_cascade(inst, lifted, sol);

  while (cascade.activated_count < target) {
    int best_node = -1;
    std::size_t best_p = 0;
    std::int64_t best_dcost = 0;
    int best_gain = 0;
    for (int i = 0; i < n; ++i) {
      int cur = inst.incentive_index(i, sol.incentive[i]);
      for (std::size_t p = cur + 1; p < inst.incentives[i].size(); ++p) {
        IncentiveSolution trial = sol;
        trial.incentive[i] = inst.incentives[i][p];
        int gain = simulate_cascade(inst, lifted, trial).activated_count -
                   cascade.activated_count;
        if (gain <= 0) continue;
        std::int64_t dcost = inst.costs[i][p] - inst.costs[i][cur];
        // Cheaper per activated node wins; ties to the larger gain.
        bool better = best_node < 0 || dcost * best_gain < best_dcost * gain ||
                      (dcost * best_gain == best_dcost * gain && gain > best_gain);
        if (better) {
          best_node = i;
          best_p = p;
          best_dcost = dcost;
          best_gain = gain;
        }
      }
    }
    if (best_node < 0) return std::nullopt;  // menus cannot reach the target
    sol.incentive[best_node] = inst.incentives[best_node][best_p];
    cascade = simulate_cascade(inst, lifted, sol);
  }

  // Reduction pass, most expensive incentives first.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    std::int64_t ca = inst.costs[a][inst.incentive_index(a, sol.incentive[a])];
    std::int64_t cb = inst.costs[b][inst.incentive_index(b, sol.incentive[b])];
    return ca > cb;
  });
  for (int i : order) {
    if (sol.incentive[i] == 0) continue;
    for (std::size_t p = 0; inst.incentives[i][p] < sol.incentive[i]; ++p) {
      IncentiveSolution trial = sol;
      trial.incentive[i] = inst.incentives[i][p];
      if (simulate_cascade(inst, lifted, trial).activated_count >= target) {
        sol.incentive[i] = inst.incentives[i][p];
        break;
      }
    }
  }
  return std::make_pair(solution_cost(inst, sol), sol);
}

/// Better of the two warm starts; the engine cutoff keeps strictly better.
std::optional<std::pair<std::int64_t, IncentiveSolution>> warm_start(
    const Instance& inst, const LiftedPropagation& lifted) {
  auto base = all_max_solution(inst, lifted);
  if (!base) return std::nullopt;  // greedy cannot succeed either
  auto greedy = greedy_solution(inst, lifted);
  if (greedy && greedy->first < base->first) return greedy;
  return base;
}

IncentiveSolution decode_arc_solution(const ArcModelHandle& handle,
                                      const std::vector<double>& x) {
  const Instance& inst = *handle.inst;
  IncentiveSolution sol;
  sol.incentive.assign(inst.node_count, 0);
  for (int i = 0; i < inst.node_count; ++i) {
    if (x[handle.x_var[i]] < 0.5) continue;
    for (std::size_t p = 0; p < handle.y_var[i].size(); ++p)
      if (x[handle.y_var[i][p]] > 0.5) sol.incentive[i] = inst.incentives[i][p];
  }
  return sol;
}

struct SeparationState {
  std::vector<CutRecord> log;
  int icc_rounds = 0;
  double icc_seconds = 0.0;
};

std::vector<milp::Row> collect(SeparationState& state, std::vector<CutRecord> cuts) {
  std::vector<milp::Row> rows;
  rows.reserve(cuts.size());
  for (CutRecord& c : cuts) {
    rows.push_back(c.row);
    state.log.push_back(std::move(c));
  }
  return rows;
}

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Anchors in descending relaxation value, ties by node id.
std::vector<int> anchor_order(const ArcModelHandle& handle, const std::vector<double>& x) {
  std::vector<int> order;
  for (int i = 0; i < handle.inst->node_count; ++i)
    if (x[handle.x_var[i]] > kEps) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return x[handle.x_var[a]] > x[handle.x_var[b]] + 1e-12;
  });
  return order;
}

double engine_cutoff(const std::optional<std::pair<std::int64_t, IncentiveSolution>>& start,
                     const SolverOptions& options) {
  double cutoff = milp::kInfinity;
  if (start) cutoff = static_cast<double>(start->first);
  if (options.cutoff) cutoff = std::min(cutoff, static_cast<double>(*options.cutoff));
  return cutoff;
}

/**
 * Turns the raw engine result plus the warm start into the final report.
 * An exhausted search under the warm start's own cost proves that start
 * optimal; under a tighter user cutoff it proves a lower bound instead.
 */
SolveReport assemble_report(const milp::MipResult& res, const SolverOptions& options,
                            const std::optional<std::pair<std::int64_t, IncentiveSolution>>& start,
                            std::optional<IncentiveSolution> incumbent,
                            std::optional<std::int64_t> upper) {
  SolveReport report;
  report.nodes = res.nodes;
  report.cuts_added = res.cuts_added;
  report.lp_iterations = res.lp_iterations;
  report.wall_time_s = res.seconds;
  if (res.root_bound != -milp::kInfinity && res.root_bound != milp::kInfinity)
    report.root_bound = res.root_bound;

  const bool start_usable = start && (!options.cutoff || start->first < *options.cutoff);
  switch (res.status) {
    case milp::MipStatus::Optimal:
      report.status = SolveStatus::Optimal;
      report.objective_upper = upper;
      report.objective_lower = upper;
      break;
    case milp::MipStatus::Infeasible:
      if (start_usable) {
        report.status = SolveStatus::Optimal;
        incumbent = start->second;
        report.objective_upper = start->first;
        report.objective_lower = start->first;
      } else {
        report.status = SolveStatus::Infeasible;
        if (options.cutoff) report.objective_lower = *options.cutoff;
        incumbent.reset();
      }
      break;
    case milp::MipStatus::TimeLimit:
    case milp::MipStatus::NodeLimit: {
      report.status = res.status == milp::MipStatus::TimeLimit ? SolveStatus::TimeLimit
                                                               : SolveStatus::NodeLimit;
      if (!upper && start_usable) {
        report.objective_upper = start->first;
        incumbent = start->second;
      } else {
        report.objective_upper = upper;
      }
      if (res.bound != -milp::kInfinity) {
        double lb = res.bound;
        if (report.objective_upper) lb = std::min(lb, static_cast<double>(*report.objective_upper));
        report.objective_lower = static_cast<std::int64_t>(std::ceil(lb - 1e-6));
      }
      break;
    }
  }
  report.incumbent = std::move(incumbent);
  return report;
}

SolveOutcome solve_arc_family(const Instance& inst, const SolverOptions& options) {
  LiftedPropagation lifted = lift(inst);
  ArcModelHandle handle = build_arc_model(inst, lifted);
  auto start = warm_start(inst, lifted);

  SeparationState state;
  StopWatch solve_watch;
  auto remaining = [&]() { return options.time_limit_s - solve_watch.seconds(); };
  auto sep_ready = [&](double floor_s) { return remaining() > floor_s; };
  SeparationOptions sep_opts;
  sep_opts.time_budget_s = options.sep_mip_budget_s;

  const bool with_licc = options.formulation == Formulation::LiccPlus;
  const bool with_icc = options.formulation == Formulation::Icc ||
                        options.formulation == Formulation::IccPlus ||
                        (with_licc && options.combine_licc_icc);
  const bool with_icc_plus = options.formulation == Formulation::IccPlus;

  milp::Callbacks callbacks;
  callbacks.lazy = [&](const milp::CallbackContext& ctx) {
    std::vector<CutRecord> cuts = separate_cycles(handle, ctx.x);
    if (cuts.empty()) {
      // Accepted points must decode to genuinely feasible solutions.
      IncentiveSolution sol = decode_arc_solution(handle, ctx.x);
      if (simulate_cascade(inst, lifted, sol).activated_count < coverage_target(inst))
        throw std::logic_error("cycle separation accepted an infeasible integral point");
    }
    return collect(state, std::move(cuts));
  };
  callbacks.user = [&](const milp::CallbackContext& ctx) {
    std::vector<CutRecord> cuts = separate_cycles(handle, ctx.x);

    // Cheap greedy separation for every anchor; the exact MIP rescues only
    // a few missed anchors per round to keep rounds fast.
    int mip_budget = options.sep_mip_fallbacks_per_round;
    auto anchored_pass = [&](auto separate) {
      for (int k : anchor_order(handle, ctx.x)) {
        if (!sep_ready(0.0)) break;
        SeparationOptions call = sep_opts;
        call.allow_mip = mip_budget > 0;
        SeparationOutcome out = separate(k, call);
        if (out.cut)
          cuts.push_back(std::move(*out.cut));
        else if (call.allow_mip)
          --mip_budget;
      }
    };

    if (with_icc && ctx.at_root && state.icc_rounds < options.icc_max_rounds &&
        state.icc_seconds < options.icc_time_budget_s && sep_ready(0.0)) {
      StopWatch watch;
      ++state.icc_rounds;
      anchored_pass([&](int k, const SeparationOptions& call) {
        return separate_icc(handle, ctx.x, k, call);
      });
      state.icc_seconds += watch.seconds();
    }
    if (with_icc_plus && sep_ready(0.0)) {
      SeparationOutcome out = separate_icc_plus(handle, ctx.x, sep_opts);
      if (out.cut) cuts.push_back(std::move(*out.cut));
    }
    if (with_licc) {
      anchored_pass([&](int k, const SeparationOptions& call) {
        return separate_licc(handle, ctx.x, k, call);
      });
      if (ctx.gap_pct() >= options.licc_rhs1_min_gap_pct && sep_ready(0.0)) {
        SeparationOutcome out = separate_licc(handle, ctx.x, -1, sep_opts);
        if (out.cut) cuts.push_back(std::move(*out.cut));
      }
    }
    return collect(state, std::move(cuts));
  };

  milp::MipLimits limits;
  limits.time_limit_s = options.time_limit_s;
  limits.node_limit = options.node_limit;
  limits.cutoff = engine_cutoff(start, options);

  milp::MipResult res = milp::solve_mip(handle.model, callbacks, limits);

  std::optional<IncentiveSolution> incumbent;
  std::optional<std::int64_t> upper;
  if (res.has_solution) {
    incumbent = decode_arc_solution(handle, res.x);
    upper = static_cast<std::int64_t>(std::llround(res.objective));
    if (solution_cost(inst, *incumbent) != *upper)
      throw std::logic_error("decoded incumbent cost disagrees with the model objective");
  }

  SolveOutcome outcome;
  outcome.report = assemble_report(res, options, start, std::move(incumbent), upper);
  outcome.cuts = std::move(state.log);
  return outcome;
}

SolveOutcome solve_cf(const Instance& inst, const SolverOptions& options) {
  LiftedPropagation lifted = lift(inst);
  CfModelHandle handle = build_cf_model(inst, lifted);
  auto start = warm_start(inst, lifted);

  SeparationState state;
  StopWatch solve_watch;
  SeparationOptions sep_opts;
  sep_opts.time_budget_s = options.sep_mip_budget_s;

  milp::Callbacks callbacks;
  callbacks.lazy = [&](const milp::CallbackContext& ctx) {
    std::vector<CutRecord> cuts;
    if (auto cut = separate_cf_integral(handle, ctx.x)) cuts.push_back(std::move(*cut));
    return collect(state, std::move(cuts));
  };
  callbacks.user = [&](const milp::CallbackContext& ctx) {
    std::vector<CutRecord> cuts;
    if (ctx.gap_pct() >= options.cf_frac_min_gap_pct &&
        solve_watch.seconds() < options.time_limit_s) {
      SeparationOutcome out = separate_cf_fractional(handle, ctx.x, sep_opts);
      if (out.cut) cuts.push_back(std::move(*out.cut));
    }
    return collect(state, std::move(cuts));
  };

  milp::MipLimits limits;
  limits.time_limit_s = options.time_limit_s;
  limits.node_limit = options.node_limit;
  limits.cutoff = engine_cutoff(start, options);

  milp::MipResult res = milp::solve_mip(handle.model, callbacks, limits);

  std::optional<IncentiveSolution> incumbent;
  std::optional<std::int64_t> upper;
  if (res.has_solution) {
    incumbent = decode_cf_solution(handle, res.x);
    upper = static_cast<std::int64_t>(std::llround(res.objective));
    if (!is_feasible(inst, *incumbent))
      throw std::logic_error("compact formulation accepted an infeasible point");
  }

  SolveOutcome outcome;
  outcome.report = assemble_report(res, options, start, std::move(incumbent), upper);
  outcome.cuts = std::move(state.log);
  return outcome;
}

}  // namespace

const char* formulation_name(Formulation f) {
  switch (f) {
    case Formulation::Arc: return "arc";
    case Formulation::Icc: return "icc";
    case Formulation::IccPlus: return "icc+";
    case Formulation::LiccPlus: return "licc+";
    case Formulation::Cf: return "cf";
  }
  return "?";
}

std::optional<Formulation> parse_formulation(const std::string& name) {
  if (name == "arc") return Formulation::Arc;
  if (name == "icc") return Formulation::Icc;
  if (name == "icc+" || name == "icc_plus") return Formulation::IccPlus;
  if (name == "licc+" || name == "licc_plus") return Formulation::LiccPlus;
  if (name == "cf") return Formulation::Cf;
  return std::nullopt;
}

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::NodeLimit: return "node_limit";
  }
  return "?";
}

SolveOutcome solve(const Instance& inst, const SolverOptions& options) {
  SolveOutcome outcome = options.formulation == Formulation::Cf
                             ? solve_cf(inst, options)
                             : solve_arc_family(inst, options);
  SolveReport& report = outcome.report;
  report.formulation = formulation_name(options.formulation);
  report.seed = options.seed;
  if (report.objective_upper && report.objective_lower) {
    if (*report.objective_upper == 0)
      report.gap_pct = 0.0;
    else
      report.gap_pct = 100.0 *
                       static_cast<double>(*report.objective_upper - *report.objective_lower) /
                       static_cast<double>(*report.objective_upper);
  }
  return outcome;
}

std::string report_to_json(const SolveReport& report, bool include_timing) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["formulation"] = report.formulation;
  j["seed"] = report.seed;
  j["status"] = solve_status_name(report.status);
  j["objective_upper"] =
      report.objective_upper ? nlohmann::json(*report.objective_upper) : nlohmann::json();
  j["objective_lower"] =
      report.objective_lower ? nlohmann::json(*report.objective_lower) : nlohmann::json();
  j["gap_pct"] = report.gap_pct ? nlohmann::json(*report.gap_pct) : nlohmann::json();
  j["nodes"] = report.nodes;
  nlohmann::json cuts;
  for (int k = 1; k < milp::kCutKindCount; ++k)
    cuts[milp::cut_kind_name(static_cast<milp::CutKind>(k))] = report.cuts_added[k];
  j["cuts"] = cuts;
  j["root_bound"] = report.root_bound ? nlohmann::json(*report.root_bound) : nlohmann::json();
  j["incumbent"] =
      report.incumbent ? nlohmann::json(report.incumbent->incentive) : nlohmann::json();
  j["lp_iterations"] = report.lp_iterations;
  if (include_timing) j["wall_time_s"] = report.wall_time_s;
  return j.dump(2);
}

}  // namespace glcip
