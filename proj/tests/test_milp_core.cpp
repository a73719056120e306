#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "glcip/milp/branch_and_cut.hpp"
#include "glcip/milp/simplex.hpp"

using namespace glcip::milp;

namespace {

/**
 * Independent LP oracle: enumerate every choice of basis columns and
 * nonbasic bound assignment, solve the square system, and keep the best
 * feasible point. Exponential, so only for tiny models.
 */
struct EnumResult {
  bool feasible = false;
  double objective = 0.0;
};

EnumResult enumerate_lp(const Model& model) {
  const int n = model.num_variables();
  const int m = model.num_rows();
  const int total = n + m;

  // columns: structural then one slack per row
  auto col_bounds = [&](int j) -> std::pair<double, double> {
    if (j < n) return {model.variable(j).lb, model.variable(j).ub};
    switch (model.row(j - n).sense) {
      case Sense::LessEq: return {0.0, kInfinity};
      case Sense::Eq: return {0.0, 0.0};
      case Sense::GreaterEq: return {-kInfinity, 0.0};
    }
    return {0.0, 0.0};
  };
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, total);
  Eigen::VectorXd b(m);
  for (int r = 0; r < m; ++r) {
    for (auto [j, c] : model.row(r).coeffs) a(r, j) += c;
    a(r, n + r) = 1.0;
    b(r) = model.row(r).rhs;
  }

  EnumResult best;
  std::vector<int> cols(total);
  for (int j = 0; j < total; ++j) cols[j] = j;

  std::vector<int> basis;
  auto consider = [&](const std::vector<int>& basic) {
    std::vector<bool> is_basic(total, false);
    for (int j : basic) is_basic[j] = true;
    std::vector<int> nonbasic;
    for (int j = 0; j < total; ++j)
      if (!is_basic[j]) nonbasic.push_back(j);
    int nn = static_cast<int>(nonbasic.size());
    for (unsigned mask = 0; mask < (1u << nn); ++mask) {
      Eigen::VectorXd rhs = b;
      bool ok = true;
      std::vector<double> fixed(total, 0.0);
      for (int t = 0; t < nn; ++t) {
        auto [lb, ub] = col_bounds(nonbasic[t]);
        double v = (mask & (1u << t)) ? ub : lb;
        if (!std::isfinite(v)) { ok = false; break; }
        fixed[nonbasic[t]] = v;
        rhs -= a.col(nonbasic[t]) * v;
      }
      if (!ok) continue;
      Eigen::MatrixXd bm(m, m);
      for (int t = 0; t < m; ++t) bm.col(t) = a.col(basic[t]);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(bm);
      if (!lu.isInvertible()) continue;
      Eigen::VectorXd xb = lu.solve(rhs);
      bool feas = true;
      for (int t = 0; t < m; ++t) {
        auto [lb, ub] = col_bounds(basic[t]);
        if (xb(t) < lb - 1e-7 || xb(t) > ub + 1e-7) { feas = false; break; }
      }
      if (!feas) continue;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += model.variable(j).objective * fixed[j];
      for (int t = 0; t < m; ++t)
        if (basic[t] < n) obj += model.variable(basic[t]).objective * xb(t);
      if (!best.feasible || obj < best.objective - 1e-12) {
        best.feasible = true;
        best.objective = obj;
      } else if (best.feasible) {
        best.objective = std::min(best.objective, obj);
      }
    }
  };

  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == m) {
      consider(pick);
      return;
    }
    for (int j = start; j < total; ++j) {
      pick.push_back(j);
      rec(j + 1);
      pick.pop_back();
    }
  };
  if (m == 0) consider({});
  else rec(0);
  return best;
}

}  // namespace

TEST_CASE("lp basics") {
  SUBCASE("empty objective with only variable bounds") {
    Model model;
    model.add_variable("x", 0.0, kInfinity, false, 0.0);
    LpResult r = solve_lp(model);
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(0.0));
  }
  SUBCASE("infeasible box") {
    Model model;
    int x = model.add_variable("x", 0.0, 1.0, false, 1.0);
    int y = model.add_variable("y", 0.0, 1.0, false, 1.0);
    model.add_row({{x, 1.0}, {y, 1.0}}, Sense::GreaterEq, 3.0);
    CHECK(solve_lp(model).status == LpStatus::Infeasible);
  }
  SUBCASE("vertex optimum") {
    Model model;
    int x = model.add_variable("x", 0.0, kInfinity, false, 2.0);
    int y = model.add_variable("y", 0.0, kInfinity, false, 3.0);
    model.add_row({{x, 1.0}, {y, 1.0}}, Sense::GreaterEq, 4.0);
    LpResult r = solve_lp(model);
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(8.0));
    CHECK(r.x[0] == doctest::Approx(4.0));
    CHECK(r.x[1] == doctest::Approx(0.0));
  }
  SUBCASE("unbounded") {
    Model model;
    model.add_variable("x", 0.0, kInfinity, false, -1.0);
    Model with_row = model;
    int y = with_row.add_variable("y", 0.0, 1.0, false, 0.0);
    with_row.add_row({{0, -1.0}, {y, 1.0}}, Sense::LessEq, 5.0);
    CHECK(solve_lp(with_row).status == LpStatus::Unbounded);
  }
  SUBCASE("equality rows and upper bounds") {
    Model model;
    int x = model.add_variable("x", 0.0, 2.0, false, -1.0);
    int y = model.add_variable("y", 0.0, 2.0, false, -2.0);
    model.add_row({{x, 1.0}, {y, 1.0}}, Sense::Eq, 3.0);
    LpResult r = solve_lp(model);
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-5.0));
    CHECK(r.x[1] == doctest::Approx(2.0));
  }
}

TEST_CASE("lp agrees with basis enumeration on random boxes") {
  std::mt19937_64 rng(314159);
  auto coin = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };
  int infeasible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Model model;
    int n = coin(2, 5);
    int m = coin(1, 3);
    for (int j = 0; j < n; ++j)
      model.add_variable("x" + std::to_string(j), 0.0, coin(1, 4), false, coin(-5, 5));
    for (int r = 0; r < m; ++r) {
      std::vector<std::pair<int, double>> coeffs;
      for (int j = 0; j < n; ++j) {
        int c = coin(-3, 3);
        if (c != 0) coeffs.emplace_back(j, static_cast<double>(c));
      }
      if (coeffs.empty()) coeffs.emplace_back(0, 1.0);
      Sense sense = r % 3 == 0 ? Sense::LessEq : r % 3 == 1 ? Sense::GreaterEq : Sense::Eq;
      model.add_row(std::move(coeffs), sense, coin(-4, 6));
    }
    EnumResult expect = enumerate_lp(model);
    LpResult got = solve_lp(model);
    if (expect.feasible) {
      REQUIRE(got.status == LpStatus::Optimal);
      CHECK(got.objective == doctest::Approx(expect.objective).epsilon(1e-6));
    } else {
      CHECK(got.status == LpStatus::Infeasible);
      ++infeasible_seen;
    }
  }
  CHECK(infeasible_seen > 0);
}

TEST_CASE("warm start across added rows") {
  Model model;
  int x = model.add_variable("x", 0.0, 10.0, false, -1.0);
  int y = model.add_variable("y", 0.0, 10.0, false, -1.0);
  model.add_row({{x, 1.0}, {y, 1.0}}, Sense::LessEq, 8.0);
  SimplexSolver solver(model);
  LpResult first = solver.solve();
  CHECK(first.objective == doctest::Approx(-8.0));
  Row cut;
  cut.coeffs = {{x, 1.0}};
  cut.sense = Sense::LessEq;
  cut.rhs = 2.0;
  solver.add_rows({cut});
  LpResult second = solver.solve();
  CHECK(second.status == LpStatus::Optimal);
  CHECK(second.objective == doctest::Approx(-8.0));
  Row cut2;
  cut2.coeffs = {{y, 1.0}};
  cut2.sense = Sense::LessEq;
  cut2.rhs = 3.0;
  solver.add_rows({cut2});
  CHECK(solver.solve().objective == doctest::Approx(-5.0));
}

TEST_CASE("mip basics") {
  SUBCASE("integral shortest path solves at the root") {
    // 0 -> 1 -> 2 -> 3 plus two expensive shortcuts; unimodular flow rows.
    Model model;
    struct ArcDef { int u, v; double cost; };
    std::vector<ArcDef> arcs{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 2, 5}, {1, 3, 5}};
    for (std::size_t t = 0; t < arcs.size(); ++t)
      model.add_variable("a" + std::to_string(t), 0.0, 1.0, true, arcs[t].cost);
    for (int node = 0; node < 4; ++node) {
      std::vector<std::pair<int, double>> coeffs;
      for (std::size_t t = 0; t < arcs.size(); ++t) {
        if (arcs[t].u == node) coeffs.emplace_back(static_cast<int>(t), 1.0);
        if (arcs[t].v == node) coeffs.emplace_back(static_cast<int>(t), -1.0);
      }
      double rhs = node == 0 ? 1.0 : node == 3 ? -1.0 : 0.0;
      model.add_row(std::move(coeffs), Sense::Eq, rhs);
    }
    MipResult r = solve_mip(model, {}, {});
    CHECK(r.status == MipStatus::Optimal);
    CHECK(r.objective == doctest::Approx(3.0));
    CHECK(r.nodes == 1);
  }

  SUBCASE("knapsack") {
    Model model;
    model.add_variable("x1", 0, 1, true, -10);
    model.add_variable("x2", 0, 1, true, -6);
    model.add_variable("x3", 0, 1, true, -4);
    model.add_row({{0, 5.0}, {1, 4.0}, {2, 3.0}}, Sense::LessEq, 10.0);
    MipResult r = solve_mip(model, {}, {});
    CHECK(r.status == MipStatus::Optimal);
    CHECK(-r.objective == doctest::Approx(16.0));
  }

  SUBCASE("lazy rejection of every integral point exhausts to infeasible") {
    Model model;
    model.add_variable("x", 0, 1, true, 1);
    model.add_variable("y", 0, 1, true, 1);
    Callbacks cb;
    cb.lazy = [&](const CallbackContext& ctx) {
      // Cut off the current corner of the unit square.
      std::vector<std::pair<int, double>> coeffs;
      double rhs = 1.0;
      for (int j = 0; j < 2; ++j) {
        if (ctx.x[j] > 0.5) {
          coeffs.emplace_back(j, -1.0);
          rhs -= 1.0;
        } else {
          coeffs.emplace_back(j, 1.0);
        }
      }
      return std::vector<Row>{{coeffs, Sense::GreaterEq, rhs, CutKind::None}};
    };
    MipResult r = solve_mip(model, cb, {});
    CHECK(r.status == MipStatus::Infeasible);
    CHECK(!r.has_solution);
  }

  SUBCASE("callback rows that are not violated are dropped") {
    Model model;
    model.add_variable("x", 0, 1, true, -1);
    int calls = 0;
    Callbacks cb;
    cb.lazy = [&](const CallbackContext& ctx) {
      ++calls;
      return std::vector<Row>{{{{0, 1.0}}, Sense::LessEq, 1.5, CutKind::None}};
    };
    MipResult r = solve_mip(model, cb, {});
    CHECK(r.status == MipStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-1.0));
    CHECK(calls >= 1);
    for (auto c : r.cuts_added) CHECK(c == 0);
  }

  SUBCASE("callback row with unknown variable aborts the solve") {
    Model model;
    model.add_variable("x", 0, 1, true, -1);
    Callbacks cb;
    cb.lazy = [](const CallbackContext&) {
      return std::vector<Row>{{{{7, 1.0}}, Sense::LessEq, 0.0, CutKind::None}};
    };
    CHECK_THROWS_AS(solve_mip(model, cb, {}), std::logic_error);
  }

  SUBCASE("cutoff prunes equal-cost solutions") {
    Model model;
    model.add_variable("x", 0, 1, true, 3);
    model.add_row({{0, 1.0}}, Sense::GreaterEq, 1.0);
    MipLimits limits;
    limits.cutoff = 3.0;
    MipResult r = solve_mip(model, {}, limits);
    CHECK(r.status == MipStatus::Infeasible);
    CHECK(r.bound == doctest::Approx(3.0));
    limits.cutoff = 4.0;
    r = solve_mip(model, {}, limits);
    CHECK(r.status == MipStatus::Optimal);
    CHECK(r.objective == doctest::Approx(3.0));
  }
}

TEST_CASE("mip equals exhaustive enumeration on random binary models") {
  std::mt19937_64 rng(271828);
  auto coin = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };
  int optimal_count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Model model;
    int n = coin(3, 12);
    int m = coin(1, 5);
    for (int j = 0; j < n; ++j) model.add_variable("b" + std::to_string(j), 0, 1, true, coin(-6, 6));
    std::vector<Row> rows;
    for (int r = 0; r < m; ++r) {
      std::vector<std::pair<int, double>> coeffs;
      for (int j = 0; j < n; ++j) {
        int c = coin(-4, 4);
        if (c != 0) coeffs.emplace_back(j, static_cast<double>(c));
      }
      if (coeffs.empty()) coeffs.emplace_back(coin(0, n - 1), 1.0);
      Sense sense = coin(0, 2) == 0 ? Sense::LessEq : coin(0, 1) ? Sense::GreaterEq : Sense::Eq;
      model.add_row(coeffs, sense, coin(-3, 8));
    }

    bool any = false;
    double best = kInfinity;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) x[j] = (mask >> j) & 1u;
      bool feas = true;
      for (int r = 0; r < model.num_rows(); ++r)
        if (model.row(r).violation(x) > 1e-9) { feas = false; break; }
      if (!feas) continue;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += model.variable(j).objective * x[j];
      if (!any || obj < best) best = obj;
      any = true;
    }

    MipResult got = solve_mip(model, {}, {});
    if (any) {
      REQUIRE(got.status == MipStatus::Optimal);
      CHECK(got.objective == doctest::Approx(best));
      ++optimal_count;
    } else {
      CHECK(got.status == MipStatus::Infeasible);
    }
  }
  CHECK(optimal_count > 30);
}

TEST_CASE("mip determinism") {
  std::mt19937_64 rng(555);
  Model model;
  int n = 10;
  for (int j = 0; j < n; ++j)
    model.add_variable("b" + std::to_string(j), 0, 1, true, static_cast<double>(1 + rng() % 9));
  for (int r = 0; r < 4; ++r) {
    std::vector<std::pair<int, double>> coeffs;
    for (int j = 0; j < n; ++j) coeffs.emplace_back(j, static_cast<double>(1 + rng() % 5));
    model.add_row(std::move(coeffs), Sense::GreaterEq, 20.0 + r);
  }
  MipResult a = solve_mip(model, {}, {});
  MipResult b = solve_mip(model, {}, {});
  CHECK(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.nodes == b.nodes);
  CHECK(a.lp_iterations == b.lp_iterations);
  CHECK(a.x == b.x);
}
