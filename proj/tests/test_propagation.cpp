#include <algorithm>
#include <random>

#include "doctest.h"
#include "glcip/propagation.hpp"

using namespace glcip;

namespace {

Instance chain_instance() {
  // 1 -> 2 -> 3 (0-based: 0 -> 1 -> 2), unit weights and thresholds.
  Instance inst;
  inst.node_count = 3;
  inst.alpha = Rational(1);
  inst.gamma = Rational(1);
  inst.thresholds = {1, 1, 1};
  inst.incentives.assign(3, {0, 1});
  inst.costs.assign(3, {0, 1});
  inst.arcs = {{0, 1, 1}, {1, 2, 1}};
  inst.finalize();
  return inst;
}

Instance random_instance(std::mt19937_64& rng, int n) {
  GeneratorParams p;
  p.n = n;
  p.k = 4;
  p.beta = Rational(3, 10);
  p.seed = rng();
  p.alpha = Rational(1, 2);
  p.gamma = rng() % 3 == 0 ? Rational(9, 10) : rng() % 2 ? Rational(1) : Rational(11, 10);
  return generate_instance(p);
}

}  // namespace

TEST_CASE("activation value follows the rounded power convention") {
  Instance inst;
  inst.node_count = 4;
  inst.alpha = Rational(1);
  inst.gamma = Rational(11, 10);
  inst.thresholds = {10, 1, 1, 1};
  inst.incentives.assign(4, {0, 5});
  inst.costs.assign(4, {0, 4});
  inst.arcs = {{1, 0, 3}, {2, 0, 4}, {3, 0, 2}};
  inst.finalize();

  CHECK(activation_value(inst, 0, std::vector<int>{}, 5) == 5);  // 0^gamma = 0

  inst.gamma = Rational(1);
  std::vector<int> both{1, 2};
  CHECK(activation_value(inst, 0, both, 2) == 9);  // weights 3 + 4, linear

  inst.gamma = Rational(11, 10);
  std::vector<int> sum9{1, 2, 3};  // 3 + 4 + 2 = 9; round(9^1.1) = 11
  CHECK(activation_value(inst, 0, sum9, 0) == 11);

  std::vector<int> stranger{0};
  CHECK_THROWS_AS(activation_value(inst, 1, stranger, 0), std::invalid_argument);
  CHECK_THROWS_AS(activation_value(inst, 0, std::vector<int>{3, 0}, 0), std::invalid_argument);
}

TEST_CASE("cascade on the unit chain") {
  Instance inst = chain_instance();
  IncentiveSolution sol{{1, 0, 0}};
  CascadeResult res = simulate_cascade(inst, sol);
  CHECK(res.activated_count == 3);
  CHECK(res.activation_round == std::vector<int>{0, 1, 2});
  CHECK(res.non_activated().empty());
  CHECK(is_feasible(inst, sol));
  CHECK(solution_cost(inst, sol) == 1);
}

TEST_CASE("cascade corner cases") {
  std::mt19937_64 rng(99);
  Instance inst = random_instance(rng, 12);

  SUBCASE("full incentives activate everyone") {
    IncentiveSolution sol;
    for (int i = 0; i < inst.node_count; ++i) sol.incentive.push_back(inst.max_incentive(i));
    CascadeResult res = simulate_cascade(inst, sol);
    CHECK(res.activated_count == inst.node_count);
    for (int i = 0; i < inst.node_count; ++i) CHECK(res.activation_round[i] == 0);
  }

  SUBCASE("nothing fires when thresholds exceed total influence") {
    Instance hard = inst;
    for (int i = 0; i < hard.node_count; ++i) {
      hard.thresholds[i] = hard.in_influence_sum(i) + 1;
      // keep menus valid: raise the top incentive too
      hard.incentives[i].back() = hard.thresholds[i] + 100;
    }
    hard.finalize();
    IncentiveSolution zero{std::vector<std::int64_t>(hard.node_count, 0)};
    CascadeResult res = simulate_cascade(hard, zero);
    CHECK(res.activated_count == 0);
    CHECK(static_cast<int>(res.non_activated().size()) == hard.node_count);
  }
}

TEST_CASE("raising one incentive never shrinks the activated set") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = random_instance(rng, 10);
    IncentiveSolution sol;
    for (int i = 0; i < inst.node_count; ++i) {
      const auto& menu = inst.incentives[i];
      sol.incentive.push_back(menu[rng() % menu.size()]);
    }
    CascadeResult base = simulate_cascade(inst, sol);
    int node = static_cast<int>(rng() % inst.node_count);
    const auto& menu = inst.incentives[node];
    int idx = inst.incentive_index(node, sol.incentive[node]);
    if (idx + 1 >= static_cast<int>(menu.size())) continue;
    IncentiveSolution raised = sol;
    raised.incentive[node] = menu[idx + 1];
    CascadeResult more = simulate_cascade(inst, raised);
    for (int i = 0; i < inst.node_count; ++i)
      if (base.activated[i]) CHECK(more.activated[i]);
  }
}

TEST_CASE("activated set is invariant under node relabeling") {
  std::mt19937_64 rng(1717);
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst = random_instance(rng, 9);
    IncentiveSolution sol;
    for (int i = 0; i < inst.node_count; ++i) {
      const auto& menu = inst.incentives[i];
      sol.incentive.push_back(menu[rng() % menu.size()]);
    }
    CascadeResult base = simulate_cascade(inst, sol);

    std::vector<int> perm(inst.node_count);
    for (int i = 0; i < inst.node_count; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);

    Instance relabeled = inst;
    relabeled.arcs.clear();
    for (const Arc& a : inst.arcs) relabeled.arcs.push_back({perm[a.src], perm[a.dst], a.influence});
    for (int i = 0; i < inst.node_count; ++i) {
      relabeled.thresholds[perm[i]] = inst.thresholds[i];
      relabeled.incentives[perm[i]] = inst.incentives[i];
      relabeled.costs[perm[i]] = inst.costs[i];
    }
    relabeled.finalize();
    IncentiveSolution mapped;
    mapped.incentive.resize(inst.node_count);
    for (int i = 0; i < inst.node_count; ++i) mapped.incentive[perm[i]] = sol.incentive[i];

    CascadeResult shuffled = simulate_cascade(relabeled, mapped);
    CHECK(shuffled.activated_count == base.activated_count);
    for (int i = 0; i < inst.node_count; ++i) CHECK(shuffled.activated[perm[i]] == base.activated[i]);
  }
}

TEST_CASE("cascade decisions agree with the integer requirement") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 15; ++trial) {
    Instance inst = random_instance(rng, 10);
    IncentiveSolution sol;
    for (int i = 0; i < inst.node_count; ++i) {
      const auto& menu = inst.incentives[i];
      sol.incentive.push_back(menu[rng() % menu.size()]);
    }
    CascadeResult res = simulate_cascade(inst, sol);
    for (int i = 0; i < inst.node_count; ++i) {
      std::int64_t from_activated = 0;
      for (std::size_t t = 0; t < inst.in_neighbors[i].size(); ++t)
        if (res.activated[inst.in_neighbors[i][t]]) from_activated += inst.in_weights[i][t];
      std::int64_t need = influence_requirement(inst, i, sol.incentive[i]);
      if (res.activated[i])
        CHECK(from_activated >= need);
      else
        CHECK(from_activated < need);
    }
  }
}
