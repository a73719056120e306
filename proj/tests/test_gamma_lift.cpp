#include <random>

#include "doctest.h"
#include "glcip/exact_power.hpp"
#include "glcip/gamma_lift.hpp"

using namespace glcip;

namespace {

/**
 * Single-node fixture: node 0 with the given in-neighbor weights. Used to
 * enumerate every 0/1 assignment of one incentive choice plus an arc
 * subset and compare the nonlinear activation inequality against its
 * lifted linear form.
 */
Instance star_instance(std::int64_t h, std::vector<std::int64_t> menu,
                       const std::vector<std::int64_t>& weights, const Rational& gamma) {
  Instance inst;
  inst.node_count = 1 + static_cast<int>(weights.size());
  inst.gamma = gamma;
  inst.alpha = Rational(1, inst.node_count);
  inst.thresholds.assign(inst.node_count, 1);
  inst.thresholds[0] = h;
  std::vector<std::int64_t> costs(menu.size(), 0);
  for (std::size_t i = 1; i < menu.size(); ++i) costs[i] = menu[i];
  inst.incentives.assign(inst.node_count, menu);
  inst.costs.assign(inst.node_count, costs);
  for (std::size_t j = 0; j < weights.size(); ++j)
    inst.arcs.push_back({static_cast<int>(j + 1), 0, weights[j]});
  inst.finalize();
  return inst;
}

/// Nonlinear activation constraint with x=1: p + S^gamma >= h, decided exactly.
bool nonlinear_holds(const Instance& inst, std::int64_t influence_sum, std::int64_t p) {
  return !power_less_than(influence_sum, inst.gamma, inst.thresholds[0] - p);
}

/// Lifted linear constraint with x=1: C_p + S >= H.
bool lifted_holds(const LiftedPropagation& lifted, int p_index, std::int64_t influence_sum) {
  return lifted.incentive_coeff[0][p_index] + influence_sum >= lifted.rhs[0];
}

}  // namespace

TEST_CASE("lift coefficient examples") {
  SUBCASE("gamma 1 reduces to min(p, h)") {
    Instance inst = star_instance(9, {0, 3, 9, 17}, {5}, Rational(1));
    LiftedPropagation lp = lift(inst);
    CHECK(lp.rhs[0] == 9);
    CHECK(lp.incentive_coeff[0] == std::vector<std::int64_t>{0, 3, 9, 9});
  }
  SUBCASE("gamma 1.1") {
    Instance inst = star_instance(9, {0, 3}, {5}, Rational(11, 10));
    LiftedPropagation lp = lift(inst);
    CHECK(lp.rhs[0] == 8);
    CHECK(lp.incentive_coeff[0][1] == 2);  // ceil(9^(1/1.1)) - ceil(6^(1/1.1)) = 8 - 6
  }
  SUBCASE("gamma 0.9") {
    Instance inst = star_instance(9, {0, 9}, {5}, Rational(9, 10));
    LiftedPropagation lp = lift(inst);
    CHECK(lp.rhs[0] == 12);
    CHECK(lp.incentive_coeff[0][1] == 12);
  }
}

TEST_CASE("influence requirement examples") {
  Instance inst = star_instance(9, {0, 3, 9, 17}, {5}, Rational(1));
  CHECK(influence_requirement(inst, 0, 9) == 0);
  CHECK(influence_requirement(inst, 0, 17) == 0);
  CHECK(influence_requirement(inst, 0, 3) == 6);

  Instance inst11 = star_instance(9, {0, 3}, {5}, Rational(11, 10));
  CHECK(influence_requirement(inst11, 0, 0) == 8);

  // Non-increasing in p, coefficients non-decreasing and capped by the rhs.
  for (const Rational& g : {Rational(9, 10), Rational(1), Rational(11, 10)}) {
    for (std::int64_t h : {1, 2, 9, 37, 60}) {
      Instance node = star_instance(h, {0, 2, 5, 9, 80}, {3, 7}, g);
      LiftedPropagation lp = lift(node);
      CHECK(lp.incentive_coeff[0][0] == 0);
      for (std::size_t p = 1; p < node.incentives[0].size(); ++p) {
        CHECK(lp.incentive_coeff[0][p] >= lp.incentive_coeff[0][p - 1]);
        CHECK(lp.incentive_coeff[0][p] <= lp.rhs[0]);
        CHECK(lp.requirement(0, static_cast<int>(p)) <=
              lp.requirement(0, static_cast<int>(p) - 1));
      }
    }
  }
}

TEST_CASE("lifted constraint is equivalent to the nonlinear one, exhaustively") {
  std::mt19937_64 rng(20240817);
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  long checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Rational gamma = trial % 3 == 0   ? Rational(9, 10)
                           : trial % 3 == 1 ? Rational(1)
                                            : Rational(11, 10);
    int degree = static_cast<int>(pick(0, 6));
    std::int64_t h = pick(1, 60);
    std::vector<std::int64_t> weights;
    for (int j = 0; j < degree; ++j) weights.push_back(pick(1, 10));
    std::vector<std::int64_t> menu{0};
    while (menu.size() < 5) {
      std::int64_t p = pick(1, 70);
      if (std::find(menu.begin(), menu.end(), p) == menu.end()) menu.push_back(p);
    }
    std::sort(menu.begin(), menu.end());
    if (degree == 0) weights.push_back(1), degree = 1;

    Instance inst = star_instance(h, menu, weights, gamma);
    LiftedPropagation lifted = lift(inst);
    for (int p_index = 0; p_index < 5; ++p_index) {
      for (unsigned mask = 0; mask < (1u << degree); ++mask) {
        std::int64_t sum = 0;
        for (int j = 0; j < degree; ++j)
          if (mask & (1u << j)) sum += inst.in_weights[0][j];
        CHECK(nonlinear_holds(inst, sum, menu[p_index]) == lifted_holds(lifted, p_index, sum));
        ++checked;
      }
    }
  }
  CHECK(checked >= 5 * (1 << 0) * 60);  // every assignment of every sampled node
}

TEST_CASE("gamma 1 lift accepts exactly the linear assignments") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::int64_t h = 1 + static_cast<std::int64_t>(rng() % 40);
    std::vector<std::int64_t> weights{1 + static_cast<std::int64_t>(rng() % 10),
                                      1 + static_cast<std::int64_t>(rng() % 10),
                                      1 + static_cast<std::int64_t>(rng() % 10)};
    std::vector<std::int64_t> menu{0, h / 2 + 1, h + 1};
    Instance inst = star_instance(h, menu, weights, Rational(1));
    LiftedPropagation lifted = lift(inst);
    for (int p_index = 0; p_index < 3; ++p_index) {
      for (unsigned mask = 0; mask < 8u; ++mask) {
        std::int64_t sum = 0;
        for (int j = 0; j < 3; ++j)
          if (mask & (1u << j)) sum += inst.in_weights[0][j];
        bool linear = menu[p_index] + sum >= h;  // original constraint
        CHECK(lifted_holds(lifted, p_index, sum) == linear);
      }
    }
  }
}
