#include "glcip/arc_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace glcip {

namespace {

constexpr double kEps = milp::kCutViolationTol;

int arc_position(const std::vector<int>& index, int n, int u, int v) {
  return index[static_cast<std::size_t>(u) * n + v];
}

}  // namespace

ArcModelHandle build_arc_model(const Instance& inst, const LiftedPropagation& lifted) {
  ArcModelHandle handle;
  handle.inst = &inst;
  handle.lifted = lifted;
  milp::Model& model = handle.model;

  const int n = inst.node_count;
  handle.x_var.resize(n);
  handle.y_var.resize(n);
  for (int i = 0; i < n; ++i)
    handle.x_var[i] = model.add_variable("x_" + std::to_string(i), 0, 1, true, 0.0, 2);
  for (int i = 0; i < n; ++i) {
    const auto& menu = inst.incentives[i];
    handle.y_var[i].resize(menu.size());
    for (std::size_t p = 0; p < menu.size(); ++p)
      handle.y_var[i][p] =
          model.add_variable("y_" + std::to_string(i) + "_" + std::to_string(menu[p]), 0, 1, true,
                             static_cast<double>(inst.costs[i][p]), 1);
  }
  std::vector<int> arc_index(static_cast<std::size_t>(n) * n, -1);
  handle.z_var.resize(inst.arcs.size());
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    const Arc& arc = inst.arcs[a];
    handle.z_var[a] = model.add_variable(
        "z_" + std::to_string(arc.src) + "_" + std::to_string(arc.dst), 0, 1, true, 0.0);
    arc_index[static_cast<std::size_t>(arc.src) * n + arc.dst] = static_cast<int>(a);
  }
  handle.mutual_partner.assign(inst.arcs.size(), -1);
  for (std::size_t a = 0; a < inst.arcs.size(); ++a)
    handle.mutual_partner[a] = arc_position(arc_index, n, inst.arcs[a].dst, inst.arcs[a].src);

  // Lifted propagation rows.
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p) {
      if (lifted.incentive_coeff[i][p] != 0)
        coeffs.emplace_back(handle.y_var[i][p], static_cast<double>(lifted.incentive_coeff[i][p]));
    }
    for (std::size_t a = 0; a < inst.arcs.size(); ++a)
      if (inst.arcs[a].dst == i)
        coeffs.emplace_back(handle.z_var[a], static_cast<double>(inst.arcs[a].influence));
    coeffs.emplace_back(handle.x_var[i], -static_cast<double>(lifted.rhs[i]));
    model.add_row(std::move(coeffs), milp::Sense::GreaterEq, 0.0);
  }

  // Exactly one incentive for each activated node.
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (int y : handle.y_var[i]) coeffs.emplace_back(y, 1.0);
    coeffs.emplace_back(handle.x_var[i], -1.0);
    model.add_row(std::move(coeffs), milp::Sense::Eq, 0.0);
  }

  // Linking for arcs without a reverse companion. Mutual pairs instead get
  // their two-arc cycle rows up front: the cycle family has only linearly
  // many of those and they both eliminate the pair cycles and link z to x
  // on both endpoints.
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    int b = handle.mutual_partner[a];
    if (b < 0) {
      model.add_row({{handle.z_var[a], 1.0}, {handle.x_var[inst.arcs[a].src], -1.0}},
                    milp::Sense::LessEq, 0.0);
    } else if (static_cast<int>(a) < b) {
      for (int excluded : {inst.arcs[a].dst, inst.arcs[a].src}) {
        int kept = excluded == inst.arcs[a].src ? inst.arcs[a].dst : inst.arcs[a].src;
        model.add_row({{handle.z_var[a], 1.0},
                       {handle.z_var[b], 1.0},
                       {handle.x_var[kept], -1.0}},
                      milp::Sense::LessEq, 0.0);
      }
    }
  }

  // Coverage target.
  {
    std::vector<std::pair<int, double>> coeffs;
    for (int i = 0; i < n; ++i) coeffs.emplace_back(handle.x_var[i], 1.0);
    model.add_row(std::move(coeffs), milp::Sense::GreaterEq,
                  static_cast<double>(coverage_target(inst)));
  }

  return handle;
}

CutRecord make_cycle_cut(const ArcModelHandle& handle, const std::vector<int>& arc_positions,
                         int excluded_node) {
  const Instance& inst = *handle.inst;
  CutRecord rec;
  CycleProvenance prov;
  prov.excluded_node = excluded_node;
  std::map<int, double> coeffs;
  for (int a : arc_positions) {
    const Arc& arc = inst.arcs[a];
    prov.cycle_arcs.emplace_back(arc.src, arc.dst);
    coeffs[handle.z_var[a]] += 1.0;
    if (arc.src != excluded_node) coeffs[handle.x_var[arc.src]] -= 1.0;
  }
  rec.row.coeffs.assign(coeffs.begin(), coeffs.end());
  rec.row.sense = milp::Sense::LessEq;
  rec.row.rhs = 0.0;
  rec.row.kind = milp::CutKind::Cycle;
  rec.provenance = std::move(prov);
  return rec;
}

std::vector<CutRecord> separate_cycles(const ArcModelHandle& handle,
                                       const std::vector<double>& x) {
  const Instance& inst = *handle.inst;
  const int n = inst.node_count;
  const int m = inst.arc_count();
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> xv(n);
  for (int i = 0; i < n; ++i) xv[i] = x[handle.x_var[i]];
  std::vector<double> zv(m), weight(m);
  for (int a = 0; a < m; ++a) {
    zv[a] = x[handle.z_var[a]];
    weight[a] = xv[inst.arcs[a].src] - zv[a];
  }

  std::vector<int> arc_index(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < m; ++a)
    arc_index[static_cast<std::size_t>(inst.arcs[a].src) * n + inst.arcs[a].dst] = a;

  // Best candidate per anchor (the excluded node).
  std::vector<double> best_violation(n, 0.0);
  std::vector<CutRecord> best_cut(n);
  auto offer = [&](const std::vector<int>& arcs, int excluded) {
    CutRecord rec = make_cycle_cut(handle, arcs, excluded);
    double v = rec.row.violation(x);
    if (v >= kEps && v > best_violation[excluded] + 1e-12) {
      best_violation[excluded] = v;
      best_cut[excluded] = std::move(rec);
    }
  };

  // Two-arc cycles, checked directly: the shortest-path sweep cannot see
  // them once z exceeds x on a mutual pair.
  for (int a = 0; a < m; ++a) {
    int b = handle.mutual_partner[a];
    if (b < 0 || b < a) continue;
    offer({a, b}, inst.arcs[a].src);
    offer({a, b}, inst.arcs[a].dst);
  }

  // Negative-weight cycles violate the cut for every choice of excluded
  // node; a label-correcting pass finds one if present. Shortest paths are
  // only meaningful afterwards.
  bool negative_cycle_found = false;
  {
    std::vector<double> dist(n, 0.0);
    std::vector<int> pred(n, -1);
    int touched = -1;
    for (int pass = 0; pass < n; ++pass) {
      touched = -1;
      for (int a = 0; a < m; ++a) {
        int u = inst.arcs[a].src, v = inst.arcs[a].dst;
        if (dist[u] + weight[a] < dist[v] - 1e-12) {
          dist[v] = dist[u] + weight[a];
          pred[v] = u;
          touched = v;
        }
      }
      if (touched < 0) break;
    }
    if (touched >= 0) {
      negative_cycle_found = true;
      int node = touched;
      for (int step = 0; step < n; ++step) node = pred[node];
      std::vector<int> cycle_nodes;
      for (int u = node;; u = pred[u]) {
        cycle_nodes.push_back(u);
        if (pred[u] == node) break;
      }
      std::reverse(cycle_nodes.begin(), cycle_nodes.end());
      std::vector<int> arcs;
      for (std::size_t t = 0; t < cycle_nodes.size(); ++t) {
        int u = cycle_nodes[t];
        int v = cycle_nodes[(t + 1) % cycle_nodes.size()];
        int a = arc_position(arc_index, n, u, v);
        if (a < 0) { arcs.clear(); break; }
        arcs.push_back(a);
      }
      if (!arcs.empty())
        for (int k : cycle_nodes) offer(arcs, k);
    }
  }

  if (!negative_cycle_found) {
    // All-pairs shortest paths on the exact weights; close each path with
    // the arc back into the anchor.
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
    std::vector<std::vector<int>> next(n, std::vector<int>(n, -1));
    for (int a = 0; a < m; ++a) {
      int u = inst.arcs[a].src, v = inst.arcs[a].dst;
      if (weight[a] < dist[u][v]) {
        dist[u][v] = weight[a];
        next[u][v] = v;
      }
    }
    for (int mid = 0; mid < n; ++mid) {
      for (int u = 0; u < n; ++u) {
        if (dist[u][mid] == inf) continue;
        for (int v = 0; v < n; ++v) {
          if (dist[mid][v] == inf) continue;
          double d = dist[u][mid] + dist[mid][v];
          if (d < dist[u][v] - 1e-15) {
            dist[u][v] = d;
            next[u][v] = next[u][mid];
          }
        }
      }
    }
    for (int k = 0; k < n; ++k) {
      for (std::size_t t = 0; t < inst.in_neighbors[k].size(); ++t) {
        int j = inst.in_neighbors[k][t];
        int closing = arc_position(arc_index, n, j, k);
        if (dist[k][j] == inf) continue;
        if (dist[k][j] + weight[closing] >= xv[k] - kEps) continue;
        std::vector<int> arcs;
        std::vector<bool> seen(n, false);
        int u = k;
        bool ok = true;
        while (u != j) {
          int nx = next[u][j];
          int a = arc_position(arc_index, n, u, nx);
          if (nx < 0 || a < 0 || seen[nx]) { ok = false; break; }
          seen[nx] = true;
          arcs.push_back(a);
          u = nx;
        }
        if (!ok) continue;
        arcs.push_back(closing);
        offer(arcs, k);
      }
    }
  }

  std::vector<CutRecord> out;
  for (int k = 0; k < n; ++k)
    if (best_violation[k] >= kEps) out.push_back(std::move(best_cut[k]));
  return out;
}

}  // namespace glcip
