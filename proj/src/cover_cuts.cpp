#include "glcip/cover_cuts.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "glcip/milp/branch_and_cut.hpp"

namespace glcip {

namespace {

constexpr double kEps = milp::kCutViolationTol;

std::int64_t external_influence(const Instance& inst, int i, const std::vector<int>& sources) {
  std::int64_t s = 0;
  const auto& nbrs = inst.in_neighbors[i];
  for (int j : sources) {
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
    if (it != nbrs.end() && *it == j) s += inst.in_weights[i][it - nbrs.begin()];
  }
  return s;
}

/// Number of members |X| must exceed for the rhs-1 variants.
std::int64_t big_subset_threshold(const Instance& inst) {
  Rational complement(inst.alpha.den() - inst.alpha.num(), inst.alpha.den());
  return complement.floor_mul(inst.node_count);
}

struct SepDecodeMaps {
  std::vector<int> s_var;                  // per node
  std::vector<std::vector<int>> y0_var;    // per node, per menu index
  std::vector<int> z0_var;                 // per arc (ICC form)
  std::vector<int> x0_var;                 // per node (LICC form)
};

double clamp_nonneg(double v) { return v > 0.0 ? v : 0.0; }

/**
 * Core of the SEP / SEP2 models: shared s / y0 / y1 variables, the cover
 * row encoded with the lifted coefficients, and the y1 linking rows.
 */
void add_incentive_side(const ArcModelHandle& handle, const std::vector<double>& x,
                        milp::Model& sep, SepDecodeMaps& maps) {
  const Instance& inst = *handle.inst;
  const int n = inst.node_count;
  maps.s_var.resize(n);
  maps.y0_var.resize(n);
  for (int i = 0; i < n; ++i)
    maps.s_var[i] = sep.add_variable("s_" + std::to_string(i), 0, 1, true, 0.0, 2);
  std::vector<std::vector<int>> y1(n);
  for (int i = 0; i < n; ++i) {
    const auto& menu = inst.incentives[i];
    maps.y0_var[i].resize(menu.size());
    y1[i].resize(menu.size());
    for (std::size_t p = 0; p < menu.size(); ++p) {
      maps.y0_var[i][p] = sep.add_variable("y0_" + std::to_string(i) + "_" + std::to_string(p), 0,
                                           1, true, 0.0, 1);
      y1[i][p] = sep.add_variable("y1_" + std::to_string(i) + "_" + std::to_string(p), 0, 1, true,
                                  clamp_nonneg(x[handle.y_var[i][p]]));
    }
  }
  // Linking: y1_ip >= s_i - sum_{q >= p} y0_iq.
  for (int i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p) {
      std::vector<std::pair<int, double>> coeffs{{y1[i][p], 1.0}, {maps.s_var[i], -1.0}};
      for (std::size_t q = p; q < inst.incentives[i].size(); ++q)
        coeffs.emplace_back(maps.y0_var[i][q], 1.0);
      sep.add_row(std::move(coeffs), milp::Sense::GreaterEq, 0.0);
    }
  }
}

/// z0 / z1 arc variables plus the cover and linking rows shared by the
/// anchored and cardinality ICC separation models.
void add_arc_side(const ArcModelHandle& handle, const std::vector<double>& x, milp::Model& sep,
                  SepDecodeMaps& maps) {
  const Instance& inst = *handle.inst;
  maps.z0_var.resize(inst.arcs.size());
  std::vector<int> z1(inst.arcs.size());
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    maps.z0_var[a] = sep.add_variable("z0_" + std::to_string(a), 0, 1, true, 0.0, 1);
    z1[a] = sep.add_variable("z1_" + std::to_string(a), 0, 1, true,
                             clamp_nonneg(x[handle.z_var[a]]));
  }
  for (int i = 0; i < inst.node_count; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p)
      if (handle.lifted.incentive_coeff[i][p] != 0)
        coeffs.emplace_back(maps.y0_var[i][p],
                            static_cast<double>(handle.lifted.incentive_coeff[i][p]));
    for (std::size_t a = 0; a < inst.arcs.size(); ++a)
      if (inst.arcs[a].dst == i)
        coeffs.emplace_back(maps.z0_var[a], static_cast<double>(inst.arcs[a].influence));
    if (!coeffs.empty())
      sep.add_row(std::move(coeffs), milp::Sense::LessEq,
                  static_cast<double>(handle.lifted.rhs[i] - 1));
  }
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    int j = inst.arcs[a].src, i = inst.arcs[a].dst;
    sep.add_row({{z1[a], 1.0},
                 {maps.s_var[i], -1.0},
                 {maps.s_var[j], 1.0},
                 {maps.z0_var[a], 1.0}},
                milp::Sense::GreaterEq, 0.0);
  }
}

CoverProvenance decode_members(const Instance& inst, const SepDecodeMaps& maps,
                               const std::vector<double>& sol) {
  CoverProvenance prov;
  for (int i = 0; i < inst.node_count; ++i)
    if (sol[maps.s_var[i]] > 0.5) prov.members.push_back(i);
  for (int i : prov.members) {
    std::int64_t p_tilde = 0;
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p)
      if (sol[maps.y0_var[i][p]] > 0.5) p_tilde = std::max(p_tilde, inst.incentives[i][p]);
    prov.p_tilde.push_back(p_tilde);
  }
  return prov;
}

SeparationOutcome run_separation(const ArcModelHandle& handle, const std::vector<double>& x,
                                 milp::Model& sep, const SepDecodeMaps& maps, int anchor,
                                 bool lifted_form, milp::CutKind kind, double violation_rhs,
                                 const SeparationOptions& opts) {
  const Instance& inst = *handle.inst;
  SeparationOutcome out;

  milp::MipLimits limits;
  limits.depth = 1;
  limits.time_limit_s = opts.time_budget_s;
  limits.stop_at_first_solution = opts.first_violated;
  if (opts.use_cutoff) limits.cutoff = violation_rhs - kEps;
  milp::MipResult res = milp::solve_mip(sep, {}, limits);

  if (res.status == milp::MipStatus::Optimal) out.separation_objective = res.objective;
  if (!res.has_solution) {
    out.budget_exhausted = res.status == milp::MipStatus::TimeLimit ||
                           res.status == milp::MipStatus::NodeLimit;
    return out;
  }

  CoverProvenance prov = decode_members(inst, maps, res.x);
  prov.anchor = anchor;
  prov.lifted = lifted_form;
  if (lifted_form) {
    for (int j = 0; j < inst.node_count; ++j) {
      if (res.x[maps.x0_var[j]] > 0.5 &&
          !std::binary_search(prov.members.begin(), prov.members.end(), j))
        prov.shared_external.push_back(j);
    }
  } else {
    for (std::size_t t = 0; t < prov.members.size(); ++t) {
      int i = prov.members[t];
      std::vector<int> ext;
      for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
        if (inst.arcs[a].dst != i) continue;
        int j = inst.arcs[a].src;
        if (res.x[maps.z0_var[a]] > 0.5 &&
            !std::binary_search(prov.members.begin(), prov.members.end(), j))
          ext.push_back(j);
      }
      prov.external.push_back(std::move(ext));
    }
  }
  if (!cover_condition_holds(inst, prov)) return out;  // numerically broken decode; skip

  if (!lifted_form) prov = postprocess_icc(inst, prov);
  CutRecord cut = make_cover_cut(handle, prov);
  if (cut.row.violation(x) < kEps) return out;
  out.cut = std::move(cut);
  return out;
}


/**
 * Exact per-member value of an influence cover cut, by knapsack DP: the
 * best insufficient incentive level and external neighbor set minimizing
 * the member's contribution to the cut's left-hand side at the point x.
 */
struct Bracket {
  double value = 0.0;
  std::int64_t p_tilde = 0;
  std::vector<int> external;  // chosen N~_i
};

Bracket icc_bracket(const ArcModelHandle& handle, const std::vector<double>& x, int i,
                    const std::vector<char>& in_set) {
  const Instance& inst = *handle.inst;
  const auto& nbrs = inst.in_neighbors[i];

  // External arcs, their weights, and relaxation values.
  std::vector<int> cand;
  std::vector<std::int64_t> wt;
  std::vector<double> val;
  double z_total = 0.0;
  for (std::size_t t = 0; t < nbrs.size(); ++t) {
    if (in_set[nbrs[t]]) continue;
    int a = -1;
    for (std::size_t q = 0; q < inst.arcs.size(); ++q)
      if (inst.arcs[q].src == nbrs[t] && inst.arcs[q].dst == i) { a = static_cast<int>(q); break; }
    cand.push_back(static_cast<int>(t));
    wt.push_back(inst.in_weights[i][t]);
    double zv = clamp_nonneg(x[handle.z_var[a]]);
    val.push_back(zv);
    z_total += zv;
  }

  std::vector<double> y_above(inst.incentives[i].size());  // sum of y values for p > menu[t]
  {
    double acc = 0.0;
    for (int p = static_cast<int>(inst.incentives[i].size()) - 1; p >= 0; --p) {
      y_above[p] = acc;
      acc += clamp_nonneg(x[handle.y_var[i][p]]);
    }
  }

  Bracket best;
  bool have = false;
  for (std::size_t p = 0; p < inst.incentives[i].size(); ++p) {
    std::int64_t cap = influence_requirement(inst, i, inst.incentives[i][p]) - 1;
    if (cap < 0) break;  // this and larger incentives activate alone
    // Knapsack: keep the heaviest z-mass inside the insufficient set.
    std::vector<double> dp(static_cast<std::size_t>(cap) + 1, 0.0);
    std::vector<std::vector<bool>> take(cand.size(),
                                        std::vector<bool>(static_cast<std::size_t>(cap) + 1));
    for (std::size_t t = 0; t < cand.size(); ++t) {
      if (wt[t] > cap) continue;
      for (std::int64_t c = cap; c >= wt[t]; --c) {
        double with = dp[c - wt[t]] + val[t];
        if (with > dp[c] + 1e-15) {
          dp[c] = with;
          take[t][c] = true;
        }
      }
    }
    double kept = dp[cap];
    double total = y_above[p] + (z_total - kept);
    if (!have || total < best.value - 1e-12) {
      have = true;
      best.value = total;
      best.p_tilde = inst.incentives[i][p];
      best.external.clear();
      std::int64_t c = cap;
      for (int t = static_cast<int>(cand.size()) - 1; t >= 0; --t) {
        if (!take[t].empty() && take[t][c]) {
          best.external.push_back(nbrs[cand[t]]);
          c -= wt[t];
        }
      }
      std::sort(best.external.begin(), best.external.end());
    }
  }
  return best;
}

/// Greedy anchored set growth; returns a violated cover provenance or nothing.
std::optional<CoverProvenance> heuristic_icc(const ArcModelHandle& handle,
                                             const std::vector<double>& x, int anchor,
                                             std::int64_t min_size, double rhs) {
  const Instance& inst = *handle.inst;
  const int n = inst.node_count;

  // Whole-vertex-set candidate: every neighbor is internal, so the value is
  // the pure incentive mass above the self-insufficient levels. This is the
  // configuration that bites at weak relaxations, and shedding members can
  // only strengthen it while it stays violated.
  {
    std::vector<char> full(n, 1);
    std::vector<double> member_value(n);
    double value = 0.0;
    for (int i = 0; i < n; ++i) {
      member_value[i] = icc_bracket(handle, x, i, full).value;
      value += member_value[i];
    }
    std::vector<char> keep(n, 1);
    std::int64_t size = n;
    bool changed = true;
    while (changed && value < rhs - kEps && size > min_size + 1) {
      changed = false;
      int best_j = -1;
      double best_delta = -1e-12;
      for (int j = 0; j < n; ++j) {
        if (!keep[j] || j == anchor) continue;
        // Dropping j removes its y-terms but exposes arcs from j into the
        // remaining members; exact recheck below, estimate by value parts.
        double delta = member_value[j] - clamp_nonneg(x[handle.x_var[j]]) * 0.0;
        if (delta > best_delta) {
          best_delta = delta;
          best_j = j;
        }
      }
      if (best_j < 0) break;
      keep[best_j] = 0;
      --size;
      // Exact re-evaluation of the shrunken set.
      double v = 0.0;
      for (int i = 0; i < n; ++i) {
        if (!keep[i]) continue;
        member_value[i] = icc_bracket(handle, x, i, keep).value;
        v += member_value[i];
      }
      if (v <= value + 1e-12) {
        value = v;
        changed = true;
      } else {
        keep[best_j] = 1;
        ++size;
        for (int i = 0; i < n; ++i)
          if (keep[i]) member_value[i] = icc_bracket(handle, x, i, keep).value;
        break;
      }
    }
    if (value < rhs - kEps && size > min_size) {
      CoverProvenance prov;
      prov.anchor = anchor;
      for (int i = 0; i < n; ++i)
        if (keep[i]) prov.members.push_back(i);
      for (int i : prov.members) {
        Bracket b = icc_bracket(handle, x, i, keep);
        prov.p_tilde.push_back(b.p_tilde);
        prov.external.push_back(std::move(b.external));
      }
      return prov;
    }
  }

  std::vector<char> in_set(n, 0);
  std::vector<int> members;
  auto add = [&](int j) {
    in_set[j] = 1;
    members.push_back(j);
  };
  if (anchor >= 0) {
    add(anchor);
  } else {
    // Cardinality form: seed with the nodes cheapest to cover.
    std::vector<std::pair<double, int>> ranked;
    for (int i = 0; i < n; ++i)
      ranked.emplace_back(icc_bracket(handle, x, i, in_set).value, i);
    std::stable_sort(ranked.begin(), ranked.end());
    for (std::int64_t t = 0; t <= min_size && t < n; ++t) add(ranked[t].second);
  }

  auto total_value = [&]() {
    double v = 0.0;
    for (int i : members) v += icc_bracket(handle, x, i, in_set).value;
    return v;
  };

  std::vector<char> near(n, 0);
  auto mark_near = [&](int j) {
    for (int t : inst.in_neighbors[j]) near[t] = 1;
    for (int t : inst.out_neighbors[j]) near[t] = 1;
  };
  for (int j : members) mark_near(j);

  double value = total_value();
  for (int step = 0; step < n && value >= rhs - kEps; ++step) {
    int best_j = -1;
    double best_value = value;
    for (int j = 0; j < n; ++j) {
      if (in_set[j] || (n > 30 && !near[j])) continue;
      in_set[j] = 1;
      members.push_back(j);
      double v = total_value();
      members.pop_back();
      in_set[j] = 0;
      if (v < best_value - 1e-12) {
        best_value = v;
        best_j = j;
      }
    }
    if (best_j < 0) break;
    add(best_j);
    mark_near(best_j);
    value = best_value;
  }
  if (value >= rhs - kEps) return std::nullopt;

  CoverProvenance prov;
  std::sort(members.begin(), members.end());
  prov.members = members;
  prov.anchor = anchor;
  for (int i : members) {
    Bracket b = icc_bracket(handle, x, i, in_set);
    prov.p_tilde.push_back(b.p_tilde);
    prov.external.push_back(std::move(b.external));
  }
  return prov;
}

/// Value of a lifted cover configuration with the shared external set
/// chosen greedily by descending x value.
std::optional<CoverProvenance> heuristic_licc(const ArcModelHandle& handle,
                                              const std::vector<double>& x, int anchor,
                                              std::int64_t min_size, double rhs) {
  const Instance& inst = *handle.inst;
  const int n = inst.node_count;

  // p~ contribution of member i given the influence it receives from the
  // shared external set.
  auto member_value = [&](int i, std::int64_t influence) {
    double v = 0.0;
    std::int64_t p_tilde = -1;
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p) {
      if (influence < influence_requirement(inst, i, inst.incentives[i][p]))
        p_tilde = inst.incentives[i][p];
      else
        break;
    }
    if (p_tilde < 0) return std::pair<double, std::int64_t>{1e30, std::int64_t{-1}};
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p)
      if (inst.incentives[i][p] > p_tilde) v += clamp_nonneg(x[handle.y_var[i][p]]);
    return std::pair<double, std::int64_t>{v, p_tilde};
  };

  std::vector<char> in_set(n, 0);
  std::vector<int> members;
  auto influence_from = [&](int i, const std::vector<char>& ext) {
    std::int64_t s = 0;
    const auto& nbrs = inst.in_neighbors[i];
    for (std::size_t t = 0; t < nbrs.size(); ++t)
      if (ext[nbrs[t]]) s += inst.in_weights[i][t];
    return s;
  };

  // Evaluate a member set: greedily build the shared external set, then
  // sum the y parts and the leftover x terms.
  std::vector<char> ext(n, 0);
  auto evaluate = [&]() -> std::optional<double> {
    std::fill(ext.begin(), ext.end(), 0);
    double x_out = 0.0;
    for (int j = 0; j < n; ++j)
      if (!in_set[j]) x_out += clamp_nonneg(x[handle.x_var[j]]);
    double y_part = 0.0;
    for (int i : members) {
      auto [v, pt] = member_value(i, 0);
      if (pt < 0) return std::nullopt;
      y_part += v;
    }
    double value = y_part + x_out;
    // Candidates worth absorbing, largest x first.
    std::vector<std::pair<double, int>> order;
    for (int j = 0; j < n; ++j)
      if (!in_set[j] && clamp_nonneg(x[handle.x_var[j]]) > 1e-9)
        order.emplace_back(-clamp_nonneg(x[handle.x_var[j]]), j);
    std::stable_sort(order.begin(), order.end());
    for (auto [negx, j] : order) {
      ext[j] = 1;
      double y_new = 0.0;
      bool ok = true;
      for (int i : members) {
        auto [v, pt] = member_value(i, influence_from(i, ext));
        if (pt < 0) { ok = false; break; }
        y_new += v;
      }
      double candidate = y_new + (x_out + negx);  // negx = -x_j
      if (ok && candidate < value - 1e-12) {
        value = candidate;
        x_out += negx;
      } else {
        ext[j] = 0;
      }
    }
    return value;
  };

  auto add = [&](int j) {
    in_set[j] = 1;
    members.push_back(j);
  };

  // Whole-vertex-set candidate first: no external x terms at all.
  {
    double value = 0.0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      auto [v, pt] = member_value(i, 0);
      if (pt < 0) ok = false;
      value += v;
    }
    if (ok && value < rhs - kEps && n > min_size) {
      CoverProvenance prov;
      prov.lifted = true;
      prov.anchor = anchor;
      for (int i = 0; i < n; ++i) prov.members.push_back(i);
      for (int i : prov.members) prov.p_tilde.push_back(member_value(i, 0).second);
      return prov;
    }
  }

  if (anchor >= 0) {
    add(anchor);
  } else {
    std::vector<std::pair<double, int>> ranked;
    for (int i = 0; i < n; ++i) {
      auto [v, pt] = member_value(i, 0);
      ranked.emplace_back(pt < 0 ? 1e30 : v, i);
    }
    std::stable_sort(ranked.begin(), ranked.end());
    for (std::int64_t t = 0; t <= min_size && t < n; ++t) add(ranked[t].second);
  }

  auto value_opt = evaluate();
  for (int step = 0; step < n; ++step) {
    if (value_opt && *value_opt < rhs - kEps) break;
    int best_j = -1;
    double best_value = value_opt ? *value_opt : 1e30;
    for (int j = 0; j < n; ++j) {
      if (in_set[j]) continue;
      in_set[j] = 1;
      members.push_back(j);
      auto v = evaluate();
      members.pop_back();
      in_set[j] = 0;
      if (v && *v < best_value - 1e-12) {
        best_value = *v;
        best_j = j;
      }
    }
    if (best_j < 0) break;
    add(best_j);
    value_opt = best_value;
  }
  if (!value_opt || *value_opt >= rhs - kEps) return std::nullopt;

  // Rebuild the final external set and the per-member p~ levels.
  if (!evaluate()) return std::nullopt;
  CoverProvenance prov;
  prov.lifted = true;
  prov.anchor = anchor;
  std::sort(members.begin(), members.end());
  prov.members = members;
  for (int j = 0; j < n; ++j)
    if (ext[j]) prov.shared_external.push_back(j);
  for (int i : members) {
    auto [v, pt] = member_value(i, influence_from(i, ext));
    (void)v;
    prov.p_tilde.push_back(pt);
  }
  return prov;
}

}  // namespace

bool cover_condition_holds(const Instance& inst, const CoverProvenance& prov) {
  for (std::size_t t = 0; t < prov.members.size(); ++t) {
    int i = prov.members[t];
    const std::vector<int>& ext = prov.lifted ? prov.shared_external : prov.external[t];
    std::int64_t influence = external_influence(inst, i, ext);
    if (!insufficient_to_activate(inst, i, influence, prov.p_tilde[t])) return false;
  }
  return true;
}

CutRecord make_cover_cut(const ArcModelHandle& handle, const CoverProvenance& prov) {
  const Instance& inst = *handle.inst;
  CutRecord rec;
  std::map<int, double> coeffs;

  for (std::size_t t = 0; t < prov.members.size(); ++t) {
    int i = prov.members[t];
    const auto& menu = inst.incentives[i];
    for (std::size_t p = 0; p < menu.size(); ++p)
      if (menu[p] > prov.p_tilde[t]) coeffs[handle.y_var[i][p]] += 1.0;
  }

  if (prov.lifted) {
    for (int j = 0; j < inst.node_count; ++j) {
      if (std::binary_search(prov.members.begin(), prov.members.end(), j)) continue;
      if (std::binary_search(prov.shared_external.begin(), prov.shared_external.end(), j))
        continue;
      coeffs[handle.x_var[j]] += 1.0;
    }
  } else {
    for (std::size_t t = 0; t < prov.members.size(); ++t) {
      int i = prov.members[t];
      const auto& ext = prov.external[t];
      for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
        if (inst.arcs[a].dst != i) continue;
        int j = inst.arcs[a].src;
        if (std::binary_search(prov.members.begin(), prov.members.end(), j)) continue;
        if (std::binary_search(ext.begin(), ext.end(), j)) continue;
        coeffs[handle.z_var[a]] += 1.0;
      }
    }
  }

  double rhs = 1.0;
  if (prov.anchor >= 0) {
    coeffs[handle.x_var[prov.anchor]] -= 1.0;
    rhs = 0.0;
  }
  rec.row.coeffs.assign(coeffs.begin(), coeffs.end());
  rec.row.sense = milp::Sense::GreaterEq;
  rec.row.rhs = rhs;
  if (prov.lifted)
    rec.row.kind = prov.anchor >= 0 ? milp::CutKind::Licc : milp::CutKind::LiccPlus;
  else
    rec.row.kind = prov.anchor >= 0 ? milp::CutKind::Icc : milp::CutKind::IccPlus;
  rec.provenance = prov;
  return rec;
}

CoverProvenance postprocess_icc(const Instance& inst, CoverProvenance prov) {
  for (std::size_t t = 0; t < prov.members.size(); ++t) {
    int i = prov.members[t];
    std::vector<int>& ext = prov.external[t];
    std::sort(ext.begin(), ext.end());
    std::int64_t influence = external_influence(inst, i, ext);

    // Largest incentive still insufficient together with the current set.
    for (std::int64_t p : inst.incentives[i])
      if (p > prov.p_tilde[t] && insufficient_to_activate(inst, i, influence, p))
        prov.p_tilde[t] = p;

    // Greedy completion by descending influence, ties by node id.
    std::vector<std::pair<std::int64_t, int>> candidates;
    const auto& nbrs = inst.in_neighbors[i];
    for (std::size_t s = 0; s < nbrs.size(); ++s) {
      int j = nbrs[s];
      if (std::binary_search(prov.members.begin(), prov.members.end(), j)) continue;
      if (std::binary_search(ext.begin(), ext.end(), j)) continue;
      candidates.emplace_back(-inst.in_weights[i][s], j);
    }
    std::sort(candidates.begin(), candidates.end());
    for (auto [neg_d, j] : candidates) {
      if (insufficient_to_activate(inst, i, influence - neg_d, prov.p_tilde[t])) {
        ext.push_back(j);
        influence -= neg_d;
      }
    }
    std::sort(ext.begin(), ext.end());
  }
  return prov;
}

SeparationOutcome separate_icc(const ArcModelHandle& handle, const std::vector<double>& x,
                               int anchor, const SeparationOptions& opts) {
  const double anchor_rhs = clamp_nonneg(x[handle.x_var[anchor]]);
  if (opts.heuristic_first) {
    if (auto prov = heuristic_icc(handle, x, anchor, 0, anchor_rhs)) {
      if (cover_condition_holds(*handle.inst, *prov)) {
        CutRecord cut = make_cover_cut(handle, postprocess_icc(*handle.inst, *prov));
        if (cut.row.violation(x) >= kEps) {
          SeparationOutcome out;
          out.cut = std::move(cut);
          return out;
        }
      }
    }
    if (!opts.allow_mip) return {};
  }
  milp::Model sep;
  SepDecodeMaps maps;
  add_incentive_side(handle, x, sep, maps);
  add_arc_side(handle, x, sep, maps);
  sep.add_row({{maps.s_var[anchor], 1.0}}, milp::Sense::Eq, 1.0);
  return run_separation(handle, x, sep, maps, anchor, false, milp::CutKind::Icc, anchor_rhs, opts);
}

SeparationOutcome separate_icc_plus(const ArcModelHandle& handle, const std::vector<double>& x,
                                    const SeparationOptions& opts) {
  const Instance& inst = *handle.inst;
  if (opts.heuristic_first) {
    if (auto prov = heuristic_icc(handle, x, -1, big_subset_threshold(inst), 1.0)) {
      if (cover_condition_holds(inst, *prov) &&
          static_cast<std::int64_t>(prov->members.size()) > big_subset_threshold(inst)) {
        CutRecord cut = make_cover_cut(handle, postprocess_icc(inst, *prov));
        if (cut.row.violation(x) >= kEps) {
          SeparationOutcome out;
          out.cut = std::move(cut);
          return out;
        }
      }
    }
    if (!opts.allow_mip) return {};
  }
  milp::Model sep;
  SepDecodeMaps maps;
  add_incentive_side(handle, x, sep, maps);
  add_arc_side(handle, x, sep, maps);
  std::vector<std::pair<int, double>> card;
  for (int i = 0; i < inst.node_count; ++i) card.emplace_back(maps.s_var[i], 1.0);
  sep.add_row(std::move(card), milp::Sense::GreaterEq,
              static_cast<double>(big_subset_threshold(inst) + 1));
  return run_separation(handle, x, sep, maps, -1, false, milp::CutKind::IccPlus, 1.0, opts);
}

SeparationOutcome separate_licc(const ArcModelHandle& handle, const std::vector<double>& x,
                                int anchor, const SeparationOptions& opts) {
  const Instance& inst = *handle.inst;
  const int n = inst.node_count;
  if (opts.heuristic_first) {
    double rhs = anchor >= 0 ? clamp_nonneg(x[handle.x_var[anchor]]) : 1.0;
    std::int64_t min_size = anchor >= 0 ? 0 : big_subset_threshold(inst);
    if (auto prov = heuristic_licc(handle, x, anchor, min_size, rhs)) {
      bool size_ok = anchor >= 0 ||
                     static_cast<std::int64_t>(prov->members.size()) > big_subset_threshold(inst);
      if (size_ok && cover_condition_holds(inst, *prov)) {
        CutRecord cut = make_cover_cut(handle, *prov);
        if (cut.row.violation(x) >= kEps) {
          SeparationOutcome out;
          out.cut = std::move(cut);
          return out;
        }
      }
    }
    if (!opts.allow_mip) return {};
  }
  milp::Model sep;
  SepDecodeMaps maps;
  add_incentive_side(handle, x, sep, maps);

  maps.x0_var.resize(n);
  std::vector<int> x1(n);
  for (int j = 0; j < n; ++j) {
    maps.x0_var[j] = sep.add_variable("x0_" + std::to_string(j), 0, 1, true, 0.0, 1);
    x1[j] = sep.add_variable("x1_" + std::to_string(j), 0, 1, true,
                             clamp_nonneg(x[handle.x_var[j]]));
  }

  // Cover rows with the big-M style membership term: active only for i in X.
  for (int i = 0; i < n; ++i) {
    std::int64_t total_in = inst.in_influence_sum(i);
    std::vector<std::pair<int, double>> coeffs;
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p)
      if (handle.lifted.incentive_coeff[i][p] != 0)
        coeffs.emplace_back(maps.y0_var[i][p],
                            static_cast<double>(handle.lifted.incentive_coeff[i][p]));
    const auto& nbrs = inst.in_neighbors[i];
    for (std::size_t t = 0; t < nbrs.size(); ++t)
      coeffs.emplace_back(maps.x0_var[nbrs[t]], static_cast<double>(inst.in_weights[i][t]));
    if (total_in != 0) coeffs.emplace_back(maps.s_var[i], static_cast<double>(total_in));
    if (!coeffs.empty())
      sep.add_row(std::move(coeffs), milp::Sense::LessEq,
                  static_cast<double>(total_in + handle.lifted.rhs[i] - 1));
  }
  // Linking: x1_j >= 1 - s_j - x0_j.
  for (int j = 0; j < n; ++j)
    sep.add_row({{x1[j], 1.0}, {maps.s_var[j], 1.0}, {maps.x0_var[j], 1.0}},
                milp::Sense::GreaterEq, 1.0);

  double rhs;
  if (anchor >= 0) {
    sep.add_row({{maps.s_var[anchor], 1.0}}, milp::Sense::Eq, 1.0);
    rhs = clamp_nonneg(x[handle.x_var[anchor]]);
  } else {
    std::vector<std::pair<int, double>> card;
    for (int i = 0; i < n; ++i) card.emplace_back(maps.s_var[i], 1.0);
    sep.add_row(std::move(card), milp::Sense::GreaterEq,
                static_cast<double>(big_subset_threshold(inst) + 1));
    rhs = 1.0;
  }
  return run_separation(handle, x, sep, maps, anchor, true,
                        anchor >= 0 ? milp::CutKind::Licc : milp::CutKind::LiccPlus, rhs, opts);
}

}  // namespace glcip
