#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glcip/cuts.hpp"
#include "glcip/instance.hpp"
#include "glcip/propagation.hpp"

namespace glcip {

enum class Formulation { Arc, Icc, IccPlus, LiccPlus, Cf };

const char* formulation_name(Formulation f);
std::optional<Formulation> parse_formulation(const std::string& name);

struct SolverOptions {
  Formulation formulation = Formulation::Cf;
  double time_limit_s = 60.0;
  std::optional<std::int64_t> cutoff;  // exclusive upper cutoff (best known + 1 protocol)
  std::uint64_t seed = 0;              // echoed in reports; the search is deterministic
  std::int64_t node_limit = -1;

  // Separation policies.
  int icc_max_rounds = 200;            // anchored cover cuts, root only
  double icc_time_budget_s = 300.0;    // total anchored-cover separation time
  double sep_mip_budget_s = 5.0;       // per separation MIP
  int sep_mip_fallbacks_per_round = 2; // exact-MIP rescues per anchored round
  double licc_rhs1_min_gap_pct = 40.0; // cardinality lifted cuts while gap is at least this
  double cf_frac_min_gap_pct = 10.0;   // fractional compact-formulation separation threshold
  bool combine_licc_icc = false;       // run both cover families (heavier, off by default)
};

enum class SolveStatus { Optimal, Infeasible, TimeLimit, NodeLimit };

const char* solve_status_name(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<std::int64_t> objective_upper;
  std::optional<std::int64_t> objective_lower;
  std::optional<double> gap_pct;          // 100 (UB - LB) / UB
  std::optional<IncentiveSolution> incumbent;
  std::int64_t nodes = 0;
  std::array<std::int64_t, milp::kCutKindCount> cuts_added{};
  std::optional<double> root_bound;       // LP bound when the root finished
  double wall_time_s = 0.0;
  long lp_iterations = 0;
  std::string formulation;
  std::uint64_t seed = 0;
};

struct SolveOutcome {
  SolveReport report;
  std::vector<CutRecord> cuts;  // everything the separators emitted, for auditing
};

SolveOutcome solve(const Instance& inst, const SolverOptions& options);

/// Schema-stable JSON rendering; timing fields are omitted on request so
/// reports from identical runs compare byte-for-byte.
std::string report_to_json(const SolveReport& report, bool include_timing = true);

}  // namespace glcip
