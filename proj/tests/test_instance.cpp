#include <filesystem>
#include <fstream>
#include <set>

#include "glcip/exact_power.hpp"
#include <sstream>

#include "doctest.h"
#include "glcip/instance.hpp"

using namespace glcip;

namespace {

GeneratorParams desk_params(int n, std::uint64_t seed) {
  GeneratorParams p;
  p.n = n;
  p.k = 4;
  p.beta = Rational(1, 10);
  p.seed = seed;
  p.alpha = Rational(1, 2);
  p.gamma = Rational(1);
  return p;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("benchmark incentive menu derivation") {
  // Breakpoints at the canonical largest threshold 34.
  CHECK(Rational(1, 4).ceil_mul(34) == 9);
  CHECK(Rational(1, 2).ceil_mul(34) == 17);
  CHECK(Rational(3, 4).ceil_mul(34) == 26);

  // Every generated menu is the rounded-up quarter grid of its own largest
  // threshold, with truncated power costs; the same menu on every node.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GeneratorParams p = desk_params(12, seed);
    Instance inst = generate_instance(p);
    std::int64_t h_hat = 0;
    for (auto h : inst.thresholds) h_hat = std::max(h_hat, h);
    std::vector<std::int64_t> expect{0};
    for (int q = 1; q <= 4; ++q) {
      std::int64_t bp = Rational(q, 4).ceil_mul(h_hat);
      if (bp > expect.back()) expect.push_back(bp);
    }
    for (int i = 0; i < inst.node_count; ++i) {
      CHECK(inst.incentives[i] == expect);
      for (std::size_t t = 0; t < expect.size(); ++t)
        CHECK(inst.costs[i][t] == glcip::floor_power(expect[t], Rational(9, 10)));
    }
  }
}

TEST_CASE("generator determinism and seed sensitivity") {
  GeneratorParams p = desk_params(20, 42);
  Instance a = generate_instance(p);
  Instance b = generate_instance(p);
  CHECK(a.arcs == b.arcs);
  CHECK(a.thresholds == b.thresholds);
  CHECK(a.incentives == b.incentives);
  CHECK(a.costs == b.costs);

  std::set<std::vector<Arc>> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    p.seed = seed;
    seen.insert(generate_instance(p).arcs);
  }
  CHECK(seen.size() == 100);
}

TEST_CASE("generator structural invariants") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    GeneratorParams p = desk_params(15, seed);
    p.beta = Rational(3, 10);
    Instance inst = generate_instance(p);
    std::int64_t h_hat = 0;
    for (auto h : inst.thresholds) h_hat = std::max(h_hat, h);
    for (int i = 0; i < inst.node_count; ++i) {
      CHECK(!inst.in_neighbors[i].empty());
      CHECK(inst.max_incentive(i) == h_hat);
      CHECK(inst.max_incentive(i) >= inst.thresholds[i]);
      CHECK(inst.thresholds[i] >= 1);
    }
    // Directed expansion keeps both directions of every undirected edge.
    std::set<std::pair<int, int>> arcset;
    for (const Arc& a : inst.arcs) arcset.insert({a.src, a.dst});
    for (const Arc& a : inst.arcs) CHECK(arcset.contains({a.dst, a.src}));
  }
}

TEST_CASE("generator rejects bad parameters") {
  GeneratorParams p = desk_params(10, 1);
  p.k = 3;
  CHECK_THROWS_AS(generate_instance(p), std::invalid_argument);
  p = desk_params(10, 1);
  p.k = 10;
  CHECK_THROWS_AS(generate_instance(p), std::invalid_argument);
  p = desk_params(10, 1);
  p.beta = Rational(3, 2);
  CHECK_THROWS_AS(generate_instance(p), std::invalid_argument);
}

TEST_CASE("coverage target") {
  Instance inst = generate_instance(desk_params(10, 3));
  inst.alpha = Rational(1);
  inst.node_count = 50;
  CHECK(coverage_target(inst) == 50);
  inst.alpha = Rational(1, 2);
  inst.node_count = 75;
  CHECK(coverage_target(inst) == 38);
  inst.alpha = Rational(1, 10);
  inst.node_count = 100;
  CHECK(coverage_target(inst) == 10);
}

TEST_CASE("text and json round trips") {
  GeneratorParams p = desk_params(20, 11);
  p.gamma = Rational(11, 10);
  Instance inst = generate_instance(p);

  for (const char* name : {"glcip_rt.txt", "glcip_rt.json"}) {
    auto path = temp_file(name);
    save_instance(inst, path);
    Instance loaded = load_instance(path);
    CHECK(loaded.node_count == inst.node_count);
    CHECK(loaded.arcs == inst.arcs);
    CHECK(loaded.thresholds == inst.thresholds);
    CHECK(loaded.incentives == inst.incentives);
    CHECK(loaded.costs == inst.costs);
    CHECK(loaded.alpha == inst.alpha);
    CHECK(loaded.gamma == inst.gamma);
    std::filesystem::remove(path);
  }
}

TEST_CASE("loader rejects invariant violations") {
  auto path = temp_file("glcip_bad.txt");

  {
    std::ofstream out(path);
    out << "glcip 2 1 1.0 1.0\n"
        << "node 0 0 2 0 0 5 4\n"  // threshold 0
        << "node 1 3 2 0 0 5 4\n"
        << "arc 0 1 2\n";
  }
  CHECK_THROWS_AS(load_instance(path), ValidationError);

  {
    std::ofstream out(path);
    out << "glcip 2 2 1.0 1.0\n"
        << "node 0 3 2 0 0 5 4\n"
        << "node 1 3 2 0 0 5 4\n"
        << "arc 0 1 2\n"
        << "arc 0 1 3\n";  // duplicate arc
  }
  CHECK_THROWS_AS(load_instance(path), ValidationError);

  {
    std::ofstream out(path);
    out << "glcip 2 1 1.0 1.0\n"
        << "node 0 3 2 0 0 5 4\n"
        << "node 1 3 2 0 0 5 4\n"
        << "arc 0 0 2\n";  // self loop
  }
  CHECK_THROWS_AS(load_instance(path), ValidationError);

  {
    std::ofstream out(path);
    out << "glcip 2 1 1.0 1.0\n"
        << "node 0 3 2 0 0 5 x\n"
        << "node 1 3 2 0 0 5 4\n"
        << "arc 0 1 2\n";
  }
  CHECK_THROWS_AS(load_instance(path), ParseError);

  try {
    load_instance(path);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::filesystem::remove(path);
}
