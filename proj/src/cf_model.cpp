#include "glcip/cf_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "glcip/milp/branch_and_cut.hpp"

namespace glcip {

namespace {

constexpr double kEps = milp::kCutViolationTol;

std::int64_t big_subset_threshold(const Instance& inst) {
  Rational complement(inst.alpha.den() - inst.alpha.num(), inst.alpha.den());
  return complement.floor_mul(inst.node_count);
}

}  // namespace

CfModelHandle build_cf_model(const Instance& inst, const LiftedPropagation& lifted) {
  CfModelHandle handle;
  handle.inst = &inst;
  handle.lifted = lifted;
  milp::Model& model = handle.model;
  handle.y_var.resize(inst.node_count);
  for (int i = 0; i < inst.node_count; ++i) {
    const auto& menu = inst.incentives[i];
    handle.y_var[i].resize(menu.size());
    for (std::size_t p = 0; p < menu.size(); ++p)
      handle.y_var[i][p] =
          model.add_variable("y_" + std::to_string(i) + "_" + std::to_string(menu[p]), 0, 1, true,
                             static_cast<double>(inst.costs[i][p]));
  }
  for (int i = 0; i < inst.node_count; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (int y : handle.y_var[i]) coeffs.emplace_back(y, 1.0);
    model.add_row(std::move(coeffs), milp::Sense::Eq, 1.0);
  }
  return handle;
}

std::vector<std::int64_t> cf_min_incentives(const Instance& inst, const LiftedPropagation& lifted,
                                            const std::vector<int>& members) {
  std::vector<std::int64_t> out;
  out.reserve(members.size());
  for (int i : members) {
    std::int64_t external = 0;
    const auto& nbrs = inst.in_neighbors[i];
    for (std::size_t t = 0; t < nbrs.size(); ++t)
      if (!std::binary_search(members.begin(), members.end(), nbrs[t]))
        external += inst.in_weights[i][t];
    std::int64_t chosen = -1;
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p) {
      if (lifted.requirement(i, static_cast<int>(p)) <= external) {
        chosen = inst.incentives[i][p];
        break;
      }
    }
    out.push_back(chosen);
  }
  return out;
}

CutRecord make_cf_cut(const CfModelHandle& handle, const CfProvenance& prov) {
  const Instance& inst = *handle.inst;
  CutRecord rec;
  for (std::size_t t = 0; t < prov.members.size(); ++t) {
    if (prov.min_incentive[t] < 0) continue;  // no incentive can activate this member
    int i = prov.members[t];
    const auto& menu = inst.incentives[i];
    for (std::size_t p = 0; p < menu.size(); ++p)
      if (menu[p] >= prov.min_incentive[t])
        rec.row.coeffs.emplace_back(handle.y_var[i][p], 1.0);
  }
  rec.row.sense = milp::Sense::GreaterEq;
  rec.row.rhs = 1.0;
  rec.row.kind = milp::CutKind::Cf;
  rec.provenance = prov;
  if (rec.row.coeffs.empty()) {
    // No incentive activates any member even with all outside influence,
    // yet X is too large to leave uncovered: the instance is infeasible.
    // Emit the empty sum >= 1 as an explicit zero row so the LP proves it.
    rec.row.coeffs.emplace_back(handle.y_var[prov.members.front()][0], 0.0);
  }
  return rec;
}

IncentiveSolution decode_cf_solution(const CfModelHandle& handle, const std::vector<double>& y) {
  const Instance& inst = *handle.inst;
  IncentiveSolution sol;
  sol.incentive.resize(inst.node_count, 0);
  for (int i = 0; i < inst.node_count; ++i) {
    double best = -1.0;
    for (std::size_t p = 0; p < handle.y_var[i].size(); ++p) {
      double v = y[handle.y_var[i][p]];
      if (v > best) {
        best = v;
        sol.incentive[i] = inst.incentives[i][p];
      }
    }
  }
  return sol;
}

std::optional<CutRecord> separate_cf_integral(const CfModelHandle& handle,
                                              const std::vector<double>& y) {
  const Instance& inst = *handle.inst;
  IncentiveSolution sol = decode_cf_solution(handle, y);
  CascadeResult cascade = simulate_cascade(inst, handle.lifted, sol);
  if (cascade.activated_count >= coverage_target(inst)) return std::nullopt;

  CfProvenance prov;
  prov.members = cascade.non_activated();
  prov.min_incentive = cf_min_incentives(inst, handle.lifted, prov.members);
  CutRecord cut = make_cf_cut(handle, prov);
  // Cascade termination leaves every member strictly below its smallest
  // activating incentive, so the rejected point sits at zero.
  if (cut.row.activity(y) > kEps)
    throw std::logic_error("cf integral separation produced a non-tight cut");
  return cut;
}

SeparationOutcome separate_cf_fractional(const CfModelHandle& handle, const std::vector<double>& y,
                                         const SeparationOptions& opts) {
  const Instance& inst = *handle.inst;
  const int n = inst.node_count;
  milp::Model sep;

  std::vector<int> s1(n), s0(n);
  std::vector<std::vector<int>> y0(n), y1(n);
  for (int i = 0; i < n; ++i) {
    s1[i] = sep.add_variable("s1_" + std::to_string(i), 0, 1, true, 0.0, 2);
    s0[i] = sep.add_variable("s0_" + std::to_string(i), 0, 1, true, 0.0, 2);
  }
  for (int i = 0; i < n; ++i) {
    const auto& menu = inst.incentives[i];
    y0[i].resize(menu.size());
    y1[i].resize(menu.size());
    for (std::size_t p = 0; p < menu.size(); ++p) {
      y0[i][p] = sep.add_variable("y0_" + std::to_string(i) + "_" + std::to_string(p), 0, 1, true,
                                  0.0, 1);
      double obj = y[handle.y_var[i][p]];
      y1[i][p] = sep.add_variable("y1_" + std::to_string(i) + "_" + std::to_string(p), 0, 1, true,
                                  obj > 0.0 ? obj : 0.0);
    }
  }

  // Cover rows: incentives below the threshold plus all influence coming
  // from outside X must stay insufficient for members of X.
  for (int i = 0; i < n; ++i) {
    std::int64_t total_in = inst.in_influence_sum(i);
    std::vector<std::pair<int, double>> coeffs;
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p)
      if (handle.lifted.incentive_coeff[i][p] != 0)
        coeffs.emplace_back(y0[i][p], static_cast<double>(handle.lifted.incentive_coeff[i][p]));
    const auto& nbrs = inst.in_neighbors[i];
    for (std::size_t t = 0; t < nbrs.size(); ++t)
      coeffs.emplace_back(s0[nbrs[t]], static_cast<double>(inst.in_weights[i][t]));
    if (total_in != 0) coeffs.emplace_back(s1[i], static_cast<double>(total_in));
    if (!coeffs.empty())
      sep.add_row(std::move(coeffs), milp::Sense::LessEq,
                  static_cast<double>(total_in + handle.lifted.rhs[i] - 1));
  }
  // y1_ip >= s1_i - sum_{q >= p} y0_iq.
  for (int i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p) {
      std::vector<std::pair<int, double>> coeffs{{y1[i][p], 1.0}, {s1[i], -1.0}};
      for (std::size_t q = p; q < inst.incentives[i].size(); ++q)
        coeffs.emplace_back(y0[i][q], 1.0);
      sep.add_row(std::move(coeffs), milp::Sense::GreaterEq, 0.0);
    }
  }
  // s0_j >= 1 - s1_j and the cardinality row.
  for (int j = 0; j < n; ++j)
    sep.add_row({{s0[j], 1.0}, {s1[j], 1.0}}, milp::Sense::GreaterEq, 1.0);
  std::vector<std::pair<int, double>> card;
  for (int i = 0; i < n; ++i) card.emplace_back(s1[i], 1.0);
  sep.add_row(std::move(card), milp::Sense::GreaterEq,
              static_cast<double>(big_subset_threshold(inst) + 1));

  SeparationOutcome out;
  milp::MipLimits limits;
  limits.depth = 1;
  limits.time_limit_s = opts.time_budget_s;
  limits.stop_at_first_solution = opts.first_violated;
  if (opts.use_cutoff) limits.cutoff = 1.0 - kEps;
  milp::MipResult res = milp::solve_mip(sep, {}, limits);
  if (res.status == milp::MipStatus::Optimal) out.separation_objective = res.objective;
  if (!res.has_solution) {
    out.budget_exhausted =
        res.status == milp::MipStatus::TimeLimit || res.status == milp::MipStatus::NodeLimit;
    return out;
  }

  CfProvenance prov;
  for (int i = 0; i < n; ++i)
    if (res.x[s1[i]] > 0.5) prov.members.push_back(i);
  prov.min_incentive = cf_min_incentives(inst, handle.lifted, prov.members);
  CutRecord cut = make_cf_cut(handle, prov);
  if (cut.row.violation(y) < kEps) return out;
  out.cut = std::move(cut);
  return out;
}

}  // namespace glcip
