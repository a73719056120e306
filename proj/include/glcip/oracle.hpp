#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "glcip/cuts.hpp"
#include "glcip/instance.hpp"
#include "glcip/propagation.hpp"

namespace glcip {

/// Enumeration refused because the incentive-vector space is too large.
class OracleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::int64_t kOracleGuard = 10'000'000;

struct OracleResult {
  std::int64_t cost = 0;
  IncentiveSolution solution;
};

/**
 * Exact optimum by full enumeration of incentive vectors, simulating each
 * cascade. Ties go to the lexicographically smallest vector. Returns
 * nothing when no vector is feasible. Throws OracleGuardError when the
 * menu product exceeds the guard.
 */
std::optional<OracleResult> brute_force_optimum(const Instance& inst);

/**
 * Canonical integral encoding of a feasible solution: activated nodes keep
 * their incentive, every activated node's influencing arcs are the minimal
 * ascending-id prefix of its earlier-activated in-neighbors that meets the
 * integer requirement.
 */
struct InducedEncoding {
  std::vector<bool> active;
  std::vector<int> p_index;                  // chosen menu index, -1 on inactive nodes
  std::vector<std::vector<bool>> z_in;       // per node, aligned with in_neighbors
  const IncentiveSolution* source = nullptr;
};

InducedEncoding induce_encoding(const Instance& inst, const LiftedPropagation& lifted,
                                const IncentiveSolution& sol, const CascadeResult& cascade);

struct CutViolationReport {
  std::size_t cut_index = 0;
  IncentiveSolution solution;
  double amount = 0.0;
};

/**
 * Evaluates every cut against the induced encoding of every feasible
 * incentive vector; returns all violations (empty means every cut is
 * valid on this instance). Same enumeration guard as the optimum.
 */
std::vector<CutViolationReport> audit_cuts(const Instance& inst,
                                           const std::vector<CutRecord>& cuts);

/// All simple directed cycles up to the given length, as node sequences.
std::vector<std::vector<int>> enumerate_simple_cycles(const Instance& inst, int max_length);

/// Calls fn for every feasible incentive vector (lexicographic order).
void for_each_feasible_solution(const Instance& inst,
                                const std::function<void(const IncentiveSolution&,
                                                         const CascadeResult&)>& fn);

}  // namespace glcip
