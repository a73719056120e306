#include "glcip/oracle.hpp"

#include <algorithm>

#include "glcip/gamma_lift.hpp"

namespace glcip {

namespace {

void check_guard(const Instance& inst) {
  std::int64_t product = 1;
  for (int i = 0; i < inst.node_count; ++i) {
    product *= static_cast<std::int64_t>(inst.incentives[i].size());
    if (product > kOracleGuard)
      throw OracleGuardError("incentive space exceeds the enumeration guard");
  }
}

/// LHS - RHS evaluation of a cut against an induced encoding, by provenance.
double evaluate_cut(const Instance& inst, const CutRecord& cut, const InducedEncoding& enc) {
  if (const auto* cyc = std::get_if<CycleProvenance>(&cut.provenance)) {
    double lhs = 0.0;
    for (auto [u, v] : cyc->cycle_arcs) {
      const auto& nbrs = inst.in_neighbors[v];
      auto it = std::lower_bound(nbrs.begin(), nbrs.end(), u);
      if (it != nbrs.end() && *it == u && enc.z_in[v][it - nbrs.begin()]) lhs += 1.0;
    }
    double rhs = 0.0;
    for (auto [u, v] : cyc->cycle_arcs)
      if (u != cyc->excluded_node && enc.active[u]) rhs += 1.0;
    return lhs - rhs;  // <= 0 satisfied
  }
  if (const auto* cov = std::get_if<CoverProvenance>(&cut.provenance)) {
    double lhs = 0.0;
    for (std::size_t t = 0; t < cov->members.size(); ++t) {
      int i = cov->members[t];
      if (enc.active[i] && inst.incentives[i][enc.p_index[i]] > cov->p_tilde[t]) lhs += 1.0;
    }
    if (cov->lifted) {
      for (int j = 0; j < inst.node_count; ++j) {
        if (!enc.active[j]) continue;
        if (std::binary_search(cov->members.begin(), cov->members.end(), j)) continue;
        if (std::binary_search(cov->shared_external.begin(), cov->shared_external.end(), j))
          continue;
        lhs += 1.0;
      }
    } else {
      for (std::size_t t = 0; t < cov->members.size(); ++t) {
        int i = cov->members[t];
        const auto& nbrs = inst.in_neighbors[i];
        for (std::size_t s = 0; s < nbrs.size(); ++s) {
          int j = nbrs[s];
          if (!enc.z_in[i][s]) continue;
          if (std::binary_search(cov->members.begin(), cov->members.end(), j)) continue;
          if (std::binary_search(cov->external[t].begin(), cov->external[t].end(), j)) continue;
          lhs += 1.0;
        }
      }
    }
    double rhs = cov->anchor >= 0 ? (enc.active[cov->anchor] ? 1.0 : 0.0) : 1.0;
    return rhs - lhs;  // >= row: positive means violated
  }
  const auto& cf = std::get<CfProvenance>(cut.provenance);
  double lhs = 0.0;
  for (std::size_t t = 0; t < cf.members.size(); ++t) {
    if (cf.min_incentive[t] < 0) continue;
    int i = cf.members[t];
    // Compact-formulation encodings give every node its incentive variable.
    std::int64_t p = enc.source->incentive[i];
    if (p >= cf.min_incentive[t]) lhs += 1.0;
  }
  return 1.0 - lhs;  // >= 1 row
}

}  // namespace

void for_each_feasible_solution(
    const Instance& inst,
    const std::function<void(const IncentiveSolution&, const CascadeResult&)>& fn) {
  check_guard(inst);
  LiftedPropagation lifted = lift(inst);
  const int n = inst.node_count;
  std::vector<std::size_t> index(n, 0);
  IncentiveSolution sol;
  sol.incentive.assign(n, 0);
  const int target = coverage_target(inst);
  for (;;) {
    for (int i = 0; i < n; ++i) sol.incentive[i] = inst.incentives[i][index[i]];
    CascadeResult cascade = simulate_cascade(inst, lifted, sol);
    if (cascade.activated_count >= target) fn(sol, cascade);
    // Odometer increment, last node fastest: lexicographic order overall.
    int pos = n - 1;
    while (pos >= 0 && index[pos] + 1 == inst.incentives[pos].size()) index[pos--] = 0;
    if (pos < 0) break;
    ++index[pos];
  }
}

std::optional<OracleResult> brute_force_optimum(const Instance& inst) {
  std::optional<OracleResult> best;
  for_each_feasible_solution(inst, [&](const IncentiveSolution& sol, const CascadeResult&) {
    std::int64_t cost = solution_cost(inst, sol);
    if (!best || cost < best->cost) best = OracleResult{cost, sol};
  });
  return best;
}

InducedEncoding induce_encoding(const Instance& inst, const LiftedPropagation& lifted,
                                const IncentiveSolution& sol, const CascadeResult& cascade) {
  const int n = inst.node_count;
  InducedEncoding enc;
  enc.active.assign(n, false);
  enc.p_index.assign(n, -1);
  enc.z_in.resize(n);
  for (int i = 0; i < n; ++i) {
    enc.z_in[i].assign(inst.in_neighbors[i].size(), false);
    if (!cascade.activated[i]) continue;
    enc.active[i] = true;
    enc.p_index[i] = inst.incentive_index(i, sol.incentive[i]);
    std::int64_t need = lifted.requirement(i, enc.p_index[i]);
    const auto& nbrs = inst.in_neighbors[i];
    for (std::size_t t = 0; t < nbrs.size() && need > 0; ++t) {
      int j = nbrs[t];
      if (cascade.activation_round[j] >= 0 &&
          cascade.activation_round[j] < cascade.activation_round[i]) {
        enc.z_in[i][t] = true;
        need -= inst.in_weights[i][t];
      }
    }
  }
  return enc;
}

std::vector<CutViolationReport> audit_cuts(const Instance& inst,
                                           const std::vector<CutRecord>& cuts) {
  std::vector<CutViolationReport> violations;
  LiftedPropagation lifted = lift(inst);
  for_each_feasible_solution(inst, [&](const IncentiveSolution& sol, const CascadeResult& cas) {
    InducedEncoding enc = induce_encoding(inst, lifted, sol, cas);
    enc.source = &sol;
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      double v = evaluate_cut(inst, cuts[c], enc);
      if (v > 1e-9) violations.push_back({c, sol, v});
    }
  });
  return violations;
}

std::vector<std::vector<int>> enumerate_simple_cycles(const Instance& inst, int max_length) {
  const int n = inst.node_count;
  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  std::vector<bool> on_path(n, false);

  // Only cycles whose smallest node is the start are reported, so each
  // cycle appears exactly once.
  std::function<void(int, int)> dfs = [&](int start, int u) {
    for (int v : inst.out_neighbors[u]) {
      if (v == start) {
        cycles.push_back(path);
      } else if (v > start && !on_path[v] && static_cast<int>(path.size()) < max_length - 1) {
        path.push_back(v);
        on_path[v] = true;
        dfs(start, v);
        on_path[v] = false;
        path.pop_back();
      }
    }
  };
  for (int start = 0; start < n; ++start) {
    path = {start};
    on_path.assign(n, false);
    on_path[start] = true;
    dfs(start, start);
  }
  return cycles;
}

}  // namespace glcip
