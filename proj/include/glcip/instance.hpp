#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "glcip/rational.hpp"

namespace glcip {

/// Malformed instance file; message carries line/field context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally well-formed file whose content breaks an instance invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arc {
  int src = 0;
  int dst = 0;
  std::int64_t influence = 0;  // d[src][dst] > 0

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/**
 * A directed influence network. Node i activates once the influence
 * received from active in-neighbors, shaped by the exponent gamma, plus
 * the incentive offered to it reaches its threshold. Instances are
 * immutable after finalize() and safe to share across threads.
 */
struct Instance {
  int node_count = 0;
  std::vector<Arc> arcs;  // sorted by (src, dst), no duplicates, no self-loops
  std::vector<std::int64_t> thresholds;               // h_i >= 1
  std::vector<std::vector<std::int64_t>> incentives;  // P_i: starts at 0, strictly increasing
  std::vector<std::vector<std::int64_t>> costs;       // w_ip: w_i0 = 0, non-decreasing
  Rational alpha{1, 1};  // coverage fraction in (0, 1]
  Rational gamma{1, 1};  // activation exponent > 0

  // Derived adjacency, filled by finalize(). in_neighbors[i] lists the
  // sources j of arcs (j, i) in ascending id, in_weights[i] the matching d_ji.
  std::vector<std::vector<int>> in_neighbors;
  std::vector<std::vector<std::int64_t>> in_weights;
  std::vector<std::vector<int>> out_neighbors;

  /// Validates all invariants and builds the adjacency; throws ValidationError.
  void finalize();

  int arc_count() const { return static_cast<int>(arcs.size()); }
  std::int64_t in_influence_sum(int i) const;
  /// Index of value p in P_i, or -1.
  int incentive_index(int i, std::int64_t p) const;
  std::int64_t max_incentive(int i) const { return incentives[i].back(); }
};

/// ceil(alpha * |V|): number of nodes that must end up activated.
int coverage_target(const Instance& inst);

/**
 * Parameters of the small-world benchmark generator. The undirected
 * Watts-Strogatz skeleton is expanded into two opposing arcs per edge with
 * independently drawn integer weights.
 */
struct GeneratorParams {
  int n = 0;              // node count
  int k = 4;              // mean degree, even, < n
  Rational beta{1, 10};   // rewiring probability in [0, 1]
  std::uint64_t seed = 0;
  std::int64_t weight_min = 1;
  std::int64_t weight_max = 10;
  Rational alpha{1, 1};
  Rational gamma{1, 1};
};

/// Deterministic for a fixed seed; throws std::invalid_argument on bad params.
Instance generate_instance(const GeneratorParams& params);

/// Text format by default, JSON mirror when the extension is ".json".
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace glcip
