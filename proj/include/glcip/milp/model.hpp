#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace glcip::milp {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Engine tolerances. All instance data are integral, so anything sharper
// than these would only chase floating-point noise.
constexpr double kFeasibilityTol = 1e-7;
constexpr double kOptimalityTol = 1e-7;
constexpr double kIntegralityTol = 1e-6;
constexpr double kCutViolationTol = 1e-4;

enum class Sense { LessEq, Eq, GreaterEq };

/// Families of dynamically separated rows, used for per-kind accounting.
enum class CutKind { None, Cycle, Icc, IccPlus, Licc, LiccPlus, Cf };
constexpr int kCutKindCount = 7;

const char* cut_kind_name(CutKind kind);

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = kInfinity;
  bool integral = false;
  double objective = 0.0;
  // Branching picks the most fractional variable among the highest
  // priority class that still has fractional values.
  int branch_priority = 0;
};

struct Row {
  std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
  Sense sense = Sense::LessEq;
  double rhs = 0.0;
  CutKind kind = CutKind::None;

  double activity(const std::vector<double>& x) const {
    double a = 0.0;
    for (auto [j, c] : coeffs) a += c * x[j];
    return a;
  }

  /// Amount by which x violates the row; <= 0 means satisfied.
  double violation(const std::vector<double>& x) const {
    double a = activity(x);
    switch (sense) {
      case Sense::LessEq: return a - rhs;
      case Sense::GreaterEq: return rhs - a;
      case Sense::Eq: return a > rhs ? a - rhs : rhs - a;
    }
    return 0.0;
  }
};

/**
 * Sparse minimization model. Integer variables must carry finite bounds;
 * rows must be non-empty.
 */
class Model {
 public:
  int add_variable(std::string name, double lb, double ub, bool integral, double objective,
                   int branch_priority = 0);
  int add_row(Row row);
  int add_row(std::vector<std::pair<int, double>> coeffs, Sense sense, double rhs,
              CutKind kind = CutKind::None);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Variable& variable(int j) const { return vars_[j]; }
  const Row& row(int r) const { return rows_[r]; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }

  /// True when every objective coefficient is integral and sits on an
  /// integer variable, so every attainable objective value is integral.
  bool objective_is_integral() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
};

}  // namespace glcip::milp
