#pragma once

#include <vector>

#include "glcip/milp/model.hpp"

namespace glcip::milp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;  // structural variable values (empty unless Optimal)
  long iterations = 0;
};

enum class VarStatus : unsigned char { AtLower, AtUpper, Basic };

struct Basis {
  std::vector<VarStatus> status;  // one entry per column (structural + slack)
  std::vector<int> basic;         // basic column per row
};

/**
 * Bounded-variable primal simplex over a growing model. Rows are turned
 * into equalities with one slack column each; phase 1 drives basic bound
 * violations to zero with composite costs, phase 2 uses Dantzig pricing
 * with a Bland fallback after stalls. The basis inverse is kept explicitly
 * and refactorized periodically, which is plenty at the model sizes the
 * branch-and-cut produces. Fully deterministic.
 */
class SimplexSolver {
 public:
  explicit SimplexSolver(const Model& model);

  /// Appends rows (e.g. cuts); their slacks enter the basis.
  void add_rows(const std::vector<Row>& rows);

  /// Temporary bound override for branching; reset_bounds restores the model's.
  void set_bounds(int var, double lb, double ub);
  void reset_bounds();

  LpResult solve(long iteration_limit = 0);

  Basis basis() const;
  void restore_basis(const Basis& basis);

  int num_rows() const { return static_cast<int>(rows_.size()); }

  /**
   * Gomory mixed-integer cuts from the current optimal tableau, strongest
   * fractionality first. Only valid while the solver carries the model's
   * original bounds, so the engine calls this at the root alone. Slack
   * entries are substituted away; returned rows span structural variables
   * only and are violated by the current point.
   */
  std::vector<Row> generate_gomory_cuts(const Model& model, int max_cuts);

 private:
  struct Column {
    std::vector<std::pair<int, double>> entries;  // (row, coefficient)
    double cost = 0.0;
    double lb = 0.0;
    double ub = 0.0;
  };

  void append_row_internal(const Row& row);
  void refactorize();
  void compute_basic_values();
  double nonbasic_value(int j) const;
  bool price(bool phase1, const std::vector<double>& duals, bool bland, int& entering,
             double& entering_dj) const;
  long pivot_loop(bool phase1, long budget, bool& feasible_out, LpStatus& status);
  double infeasibility_cost(int row_pos, double& direction) const;

  const Model* model_;
  std::vector<Column> cols_;            // structural then slack columns
  std::vector<Row> rows_;               // original rows (for slack construction)
  std::vector<double> rhs_;
  int num_structural_ = 0;

  std::vector<VarStatus> status_;
  std::vector<int> basic_;              // column index per row
  std::vector<int> row_of_basic_;       // row position per column, -1 if nonbasic
  std::vector<double> x_basic_;
  std::vector<std::vector<double>> binv_;  // dense basis inverse, row-major
  long pivots_since_refactor_ = 0;
  bool basis_valid_ = false;
};

/// One-shot solve of the model's LP relaxation.
LpResult solve_lp(const Model& model, long iteration_limit = 0);

}  // namespace glcip::milp
