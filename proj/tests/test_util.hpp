#pragma once

#include <cstdint>
#include <vector>

#include "glcip/instance.hpp"

namespace glcip_test {

/// Single node with threshold h and menu {0, h}; cost of the full incentive is c.
inline glcip::Instance single_node(std::int64_t h, std::int64_t c) {
  glcip::Instance inst;
  inst.node_count = 1;
  inst.alpha = glcip::Rational(1);
  inst.gamma = glcip::Rational(1);
  inst.thresholds = {h};
  inst.incentives = {{0, h}};
  inst.costs = {{0, c}};
  inst.finalize();
  return inst;
}

/// Two nodes influencing each other; thresholds equal the incoming weight,
/// so either full incentive bootstraps the pair.
inline glcip::Instance mutual_pair(std::int64_t d12, std::int64_t d21, std::int64_t cost1,
                                   std::int64_t cost2, glcip::Rational alpha = glcip::Rational(1),
                                   glcip::Rational gamma = glcip::Rational(1)) {
  glcip::Instance inst;
  inst.node_count = 2;
  inst.alpha = alpha;
  inst.gamma = gamma;
  inst.thresholds = {d21, d12};
  inst.incentives = {{0, d21}, {0, d12}};
  inst.costs = {{0, cost1}, {0, cost2}};
  inst.arcs = {{0, 1, d12}, {1, 0, d21}};
  inst.finalize();
  return inst;
}

inline glcip::Instance small_world(int n, std::uint64_t seed, glcip::Rational alpha,
                                   glcip::Rational gamma, int k = 4,
                                   glcip::Rational beta = glcip::Rational(1, 10)) {
  glcip::GeneratorParams p;
  p.n = n;
  p.k = k;
  p.beta = beta;
  p.seed = seed;
  p.alpha = alpha;
  p.gamma = gamma;
  return glcip::generate_instance(p);
}

}  // namespace glcip_test
