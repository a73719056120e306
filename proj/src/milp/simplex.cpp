#include "glcip/milp/simplex.hpp"

#include <Eigen/Dense>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace glcip::milp {

namespace {

constexpr double kPivotTol = 1e-8;
constexpr double kDegenerateStep = 1e-10;
constexpr int kStallThreshold = 64;    // degenerate steps before Bland's rule
constexpr long kRefactorInterval = 192;

}  // namespace

SimplexSolver::SimplexSolver(const Model& model) : model_(&model) {
  num_structural_ = model.num_variables();
  cols_.resize(num_structural_);
  for (int j = 0; j < num_structural_; ++j) {
    const Variable& v = model.variable(j);
    cols_[j].cost = v.objective;
    cols_[j].lb = v.lb;
    cols_[j].ub = v.ub;
    if (!std::isfinite(v.lb) && !std::isfinite(v.ub))
      throw std::invalid_argument("free variable '" + v.name + "' is not supported");
  }
  for (const Row& r : model.rows()) append_row_internal(r);

  status_.assign(cols_.size(), VarStatus::AtLower);
  for (int j = 0; j < num_structural_; ++j)
    status_[j] = std::isfinite(cols_[j].lb) ? VarStatus::AtLower : VarStatus::AtUpper;
  basic_.resize(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    int slack = num_structural_ + static_cast<int>(r);
    basic_[r] = slack;
    status_[slack] = VarStatus::Basic;
  }
  basis_valid_ = false;
}

void SimplexSolver::append_row_internal(const Row& row) {
  int r = static_cast<int>(rows_.size());
  rows_.push_back(row);
  rhs_.push_back(row.rhs);
  for (auto [j, c] : row.coeffs) {
    if (j < 0 || j >= num_structural_)
      throw std::invalid_argument("row references unknown variable " + std::to_string(j));
    cols_[j].entries.emplace_back(r, c);
  }
  Column slack;
  slack.entries.emplace_back(r, 1.0);
  switch (row.sense) {
    case Sense::LessEq: slack.lb = 0.0; slack.ub = kInfinity; break;
    case Sense::Eq: slack.lb = 0.0; slack.ub = 0.0; break;
    case Sense::GreaterEq: slack.lb = -kInfinity; slack.ub = 0.0; break;
  }
  cols_.push_back(std::move(slack));
}

void SimplexSolver::add_rows(const std::vector<Row>& rows) {
  const int old_m = static_cast<int>(rows_.size());
  for (const Row& row : rows) {
    append_row_internal(row);
    int slack = static_cast<int>(cols_.size()) - 1;
    status_.push_back(VarStatus::Basic);
    basic_.push_back(slack);
  }
  const int m = static_cast<int>(rows_.size());
  if (!basis_valid_) return;

  // The basis matrix grows block-triangularly (new slacks are basic), so
  // its inverse extends in place: rows [-C B^-1 | I] where C holds the new
  // rows' coefficients on the old basic columns.
  for (int r = 0; r < old_m; ++r) binv_[r].resize(m, 0.0);
  row_of_basic_.resize(cols_.size(), -1);
  for (int q = old_m; q < m; ++q) {
    std::vector<double> c(old_m, 0.0);
    for (auto [var, coef] : rows_[q].coeffs) {
      int pos = row_of_basic_[var];
      if (pos >= 0 && pos < old_m) c[pos] += coef;
    }
    std::vector<double> row(m, 0.0);
    for (int i = 0; i < old_m; ++i) {
      if (c[i] == 0.0) continue;
      const std::vector<double>& bi = binv_[i];
      for (int col = 0; col < old_m; ++col) row[col] -= c[i] * bi[col];
    }
    row[q] = 1.0;
    binv_.push_back(std::move(row));
    row_of_basic_[basic_[q]] = q;
  }
}

void SimplexSolver::set_bounds(int var, double lb, double ub) {
  cols_[var].lb = lb;
  cols_[var].ub = ub;
}

void SimplexSolver::reset_bounds() {
  for (int j = 0; j < num_structural_; ++j) {
    cols_[j].lb = model_->variable(j).lb;
    cols_[j].ub = model_->variable(j).ub;
  }
}

Basis SimplexSolver::basis() const { return {status_, basic_}; }

void SimplexSolver::restore_basis(const Basis& basis) {
  if (basis.status.size() > cols_.size() || basis.basic.size() > rows_.size())
    throw std::invalid_argument("basis does not match model");
  // Siblings restored right after each other share the snapshot; keep the
  // current factorization when nothing changes.
  if (basis_valid_ && basis.status.size() == status_.size() &&
      basis.basic.size() == basic_.size() && basis.basic == basic_ && basis.status == status_)
    return;
  status_ = basis.status;
  basic_ = basis.basic;
  // Rows appended after the snapshot get their slacks back into the basis.
  status_.resize(cols_.size(), VarStatus::AtLower);
  for (std::size_t r = basis.basic.size(); r < rows_.size(); ++r) {
    int slack = num_structural_ + static_cast<int>(r);
    basic_.push_back(slack);
    status_[slack] = VarStatus::Basic;
  }
  for (std::size_t c = basis.status.size(); c < cols_.size(); ++c) {
    int row = static_cast<int>(c) - num_structural_;
    if (row < 0 || static_cast<std::size_t>(row) >= rows_.size() || basic_[row] != static_cast<int>(c))
      status_[c] = VarStatus::AtLower;
  }
  basis_valid_ = false;
}

double SimplexSolver::nonbasic_value(int j) const {
  const Column& c = cols_[j];
  if (status_[j] == VarStatus::AtLower) return std::isfinite(c.lb) ? c.lb : 0.0;
  return std::isfinite(c.ub) ? c.ub : 0.0;
}

void SimplexSolver::refactorize() {
  const int m = static_cast<int>(rows_.size());
  row_of_basic_.assign(cols_.size(), -1);
  for (int r = 0; r < m; ++r) row_of_basic_[basic_[r]] = r;

  if (m == 0) {
    binv_.clear();
    basis_valid_ = true;
    pivots_since_refactor_ = 0;
    return;
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
  for (int r = 0; r < m; ++r)
    for (auto [row, coef] : cols_[basic_[r]].entries) b(row, r) = coef;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  Eigen::MatrixXd inv = lu.inverse();
  // Partial pivoting does not flag singular bases; verify the inverse on a
  // residual and fall back to the always-valid slack basis if broken.
  double residual = (b * inv.col(0) - Eigen::VectorXd::Unit(m, 0)).cwiseAbs().maxCoeff();
  if (!std::isfinite(residual) || residual > 1e-6) {
    for (int r = 0; r < m; ++r) {
      int old = basic_[r];
      status_[old] = VarStatus::AtLower;
      int slack = num_structural_ + r;
      basic_[r] = slack;
      status_[slack] = VarStatus::Basic;
    }
    row_of_basic_.assign(cols_.size(), -1);
    for (int r = 0; r < m; ++r) row_of_basic_[basic_[r]] = r;
    inv.setIdentity();
  }
  binv_.assign(m, std::vector<double>(m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) binv_[r][c] = inv(r, c);
  basis_valid_ = true;
  pivots_since_refactor_ = 0;
}

void SimplexSolver::compute_basic_values() {
  const int m = static_cast<int>(rows_.size());
  std::vector<double> t = rhs_;
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (status_[j] == VarStatus::Basic) continue;
    double v = nonbasic_value(j);
    if (v == 0.0) continue;
    for (auto [r, c] : cols_[j].entries) t[r] -= c * v;
  }
  x_basic_.assign(m, 0.0);
  for (int r = 0; r < m; ++r) {
    double s = 0.0;
    for (int c = 0; c < m; ++c) s += binv_[r][c] * t[c];
    x_basic_[r] = s;
  }
}

double SimplexSolver::infeasibility_cost(int row_pos, double& direction) const {
  const Column& c = cols_[basic_[row_pos]];
  double x = x_basic_[row_pos];
  if (x < c.lb - kFeasibilityTol) {
    direction = c.lb - x;
    return -1.0;
  }
  if (x > c.ub + kFeasibilityTol) {
    direction = x - c.ub;
    return 1.0;
  }
  direction = 0.0;
  return 0.0;
}

bool SimplexSolver::price(bool phase1, const std::vector<double>& duals, bool bland, int& entering,
                          double& entering_dj) const {
  entering = -1;
  entering_dj = 0.0;
  double best_score = kOptimalityTol;
  for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
    if (status_[j] == VarStatus::Basic) continue;
    const Column& col = cols_[j];
    if (col.lb == col.ub) continue;  // fixed
    double cost = phase1 ? 0.0 : col.cost;
    double dj = cost;
    for (auto [r, a] : col.entries) dj -= duals[r] * a;
    bool eligible = (status_[j] == VarStatus::AtLower && dj < -kOptimalityTol) ||
                    (status_[j] == VarStatus::AtUpper && dj > kOptimalityTol);
    if (!eligible) continue;
    if (bland) {
      entering = j;
      entering_dj = dj;
      return true;
    }
    double score = std::fabs(dj);
    if (score > best_score) {
      best_score = score;
      entering = j;
      entering_dj = dj;
    }
  }
  return entering >= 0;
}

long SimplexSolver::pivot_loop(bool phase1, long budget, bool& feasible_out, LpStatus& status) {
  const int m = static_cast<int>(rows_.size());
  long iterations = 0;
  int stall = 0;
  std::vector<double> duals(m), w(m), cb(m);

  for (;;) {
    if (iterations >= budget) {
      status = LpStatus::IterationLimit;
      return iterations;
    }
    if (pivots_since_refactor_ >= kRefactorInterval) {
      refactorize();
      compute_basic_values();
    }

    bool any_infeasible = false;
    if (phase1) {
      for (int r = 0; r < m; ++r) {
        double amount;
        cb[r] = infeasibility_cost(r, amount);
        if (cb[r] != 0.0) any_infeasible = true;
      }
      if (!any_infeasible) {
        feasible_out = true;
        status = LpStatus::Optimal;
        return iterations;
      }
    } else {
      for (int r = 0; r < m; ++r) cb[r] = cols_[basic_[r]].cost;
    }

    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (int rr = 0; rr < m; ++rr) s += cb[rr] * binv_[rr][r];
      duals[r] = s;
    }

    bool bland = stall > kStallThreshold;
    int entering;
    double dj;
    if (!price(phase1, duals, bland, entering, dj)) {
      feasible_out = !phase1 || !any_infeasible;
      status = phase1 && any_infeasible ? LpStatus::Infeasible : LpStatus::Optimal;
      return iterations;
    }

    // Direction of basic values per unit increase of the entering variable.
    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (auto [row, a] : cols_[entering].entries) s += binv_[r][row] * a;
      w[r] = s;
    }
    double sigma = status_[entering] == VarStatus::AtLower ? 1.0 : -1.0;

    const Column& ecol = cols_[entering];
    double t_bound = (std::isfinite(ecol.lb) && std::isfinite(ecol.ub)) ? ecol.ub - ecol.lb
                                                                        : kInfinity;
    double best_t = t_bound;
    int leave_row = -1;
    bool leave_at_upper = false;
    double best_pivot = 0.0;
    for (int r = 0; r < m; ++r) {
      double delta = -sigma * w[r];  // change of x_basic_[r] per unit t
      if (std::fabs(delta) <= kPivotTol) continue;
      const Column& bcol = cols_[basic_[r]];
      double x = x_basic_[r];
      double limit = kInfinity;
      bool at_upper = false;
      bool below = phase1 && x < bcol.lb - kFeasibilityTol;
      bool above = phase1 && x > bcol.ub + kFeasibilityTol;
      if (below) {
        // Infeasible basic may only be limited by the bound it violates.
        if (delta > 0.0) { limit = (bcol.lb - x) / delta; at_upper = false; }
      } else if (above) {
        if (delta < 0.0) { limit = (x - bcol.ub) / (-delta); at_upper = true; }
      } else if (delta < 0.0) {
        if (std::isfinite(bcol.lb)) { limit = (x - bcol.lb) / (-delta); at_upper = false; }
      } else {
        if (std::isfinite(bcol.ub)) { limit = (bcol.ub - x) / delta; at_upper = true; }
      }
      if (limit == kInfinity) continue;
      if (limit < 0.0) limit = 0.0;
      bool better = false;
      if (limit < best_t - 1e-9) {
        better = true;
      } else if (limit < best_t + 1e-9 && leave_row >= 0) {
        if (bland)
          better = basic_[r] < basic_[leave_row];
        else
          better = std::fabs(delta) > std::fabs(best_pivot) + 1e-12;
      } else if (limit < best_t + 1e-9 && leave_row < 0 && limit < t_bound - 1e-9) {
        better = true;
      }
      if (better) {
        best_t = std::min(best_t, limit);
        leave_row = r;
        leave_at_upper = at_upper;
        best_pivot = delta;
      }
    }

    if (best_t == kInfinity) {
      if (phase1) throw std::logic_error("phase-1 direction unbounded");
      status = LpStatus::Unbounded;
      return iterations;
    }

    ++iterations;
    stall = best_t < kDegenerateStep ? stall + 1 : 0;

    if (leave_row < 0) {
      // Bound flip: the entering variable travels to its opposite bound.
      for (int r = 0; r < m; ++r) x_basic_[r] -= sigma * w[r] * best_t;
      status_[entering] =
          status_[entering] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
      continue;
    }

    double enter_value = nonbasic_value(entering) + sigma * best_t;
    int leaving = basic_[leave_row];
    for (int r = 0; r < m; ++r)
      if (r != leave_row) x_basic_[r] -= sigma * w[r] * best_t;
    x_basic_[leave_row] = enter_value;
    status_[leaving] = leave_at_upper ? VarStatus::AtUpper : VarStatus::AtLower;
    status_[entering] = VarStatus::Basic;
    basic_[leave_row] = entering;
    row_of_basic_[leaving] = -1;
    row_of_basic_[entering] = leave_row;

    double pivot = w[leave_row];
    assert(std::fabs(pivot) > kPivotTol * 0.1);
    double inv_pivot = 1.0 / pivot;
    std::vector<double>& prow = binv_[leave_row];
    for (int r = 0; r < m; ++r) {
      if (r == leave_row) continue;
      double factor = w[r] * inv_pivot;
      if (factor == 0.0) continue;
      std::vector<double>& row = binv_[r];
      for (int c = 0; c < m; ++c) row[c] -= factor * prow[c];
    }
    for (int c = 0; c < m; ++c) prow[c] *= inv_pivot;
    ++pivots_since_refactor_;
  }
}

LpResult SimplexSolver::solve(long iteration_limit) {
  if (iteration_limit <= 0)
    iteration_limit = 20000 + 200L * static_cast<long>(cols_.size() + rows_.size());
  if (!basis_valid_) refactorize();
  compute_basic_values();

  LpResult result;
  bool feasible = true;
  const int m = static_cast<int>(rows_.size());
  for (int r = 0; r < m; ++r) {
    double amount;
    if (infeasibility_cost(r, amount) != 0.0) {
      feasible = false;
      break;
    }
  }

  long used = 0;
  if (!feasible) {
    LpStatus p1;
    used = pivot_loop(true, iteration_limit, feasible, p1);
    if (p1 == LpStatus::Infeasible || p1 == LpStatus::IterationLimit) {
      result.status = p1;
      result.iterations = used;
      return result;
    }
  }

  LpStatus p2;
  bool ignored;
  used += pivot_loop(false, iteration_limit - used, ignored, p2);
  result.status = p2;
  result.iterations = used;
  if (p2 != LpStatus::Optimal) return result;

  result.x.assign(num_structural_, 0.0);
  for (int j = 0; j < num_structural_; ++j)
    if (status_[j] != VarStatus::Basic) result.x[j] = nonbasic_value(j);
  for (int r = 0; r < m; ++r)
    if (basic_[r] < num_structural_) result.x[basic_[r]] = x_basic_[r];
  double obj = 0.0;
  for (int j = 0; j < num_structural_; ++j) obj += cols_[j].cost * result.x[j];
  result.objective = obj;

#ifndef NDEBUG
  // Optimality certificate: reduced costs of nonbasic columns must point
  // away from the interior.
  {
    std::vector<double> cb(m), duals(m);
    for (int r = 0; r < m; ++r) cb[r] = cols_[basic_[r]].cost;
    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (int rr = 0; rr < m; ++rr) s += cb[rr] * binv_[rr][r];
      duals[r] = s;
    }
    for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
      if (status_[j] == VarStatus::Basic || cols_[j].lb == cols_[j].ub) continue;
      double dj = cols_[j].cost;
      for (auto [r, a] : cols_[j].entries) dj -= duals[r] * a;
      if (status_[j] == VarStatus::AtLower)
        assert(dj >= -1e-6);
      else
        assert(dj <= 1e-6);
    }
  }
#endif
  return result;
}

std::vector<Row> SimplexSolver::generate_gomory_cuts(const Model& model, int max_cuts) {
  std::vector<Row> cuts;
  if (!basis_valid_ || max_cuts <= 0) return cuts;
  const int m = static_cast<int>(rows_.size());

  // Rank candidate tableau rows by how fractional their basic value is.
  std::vector<std::pair<double, int>> candidates;
  for (int r = 0; r < m; ++r) {
    int col = basic_[r];
    if (col >= num_structural_ || !model.variable(col).integral) continue;
    double value = x_basic_[r];
    double frac = value - std::floor(value);
    double score = 0.5 - std::fabs(frac - 0.5);
    if (frac < 0.02 || frac > 0.98) continue;
    candidates.emplace_back(-score, r);
  }
  std::sort(candidates.begin(), candidates.end());

  for (auto [neg_score, r] : candidates) {
    if (static_cast<int>(cuts.size()) >= max_cuts) break;
    // Tableau row in complemented nonbasic space: x_B = b0 - sum a~_j t_j,
    // t_j >= 0 measured from the bound each nonbasic sits at.
    double b0 = x_basic_[r];
    double f0 = b0 - std::floor(b0);

    // gamma coefficients on t_j, then translated back to original space.
    std::vector<std::pair<int, double>> terms;  // (column, gamma) in t-space
    bool numerically_ok = true;
    for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
      if (status_[j] == VarStatus::Basic) continue;
      const Column& col = cols_[j];
      if (col.lb == col.ub) continue;  // fixed: t == 0
      double ahat = 0.0;
      for (auto [row, a] : col.entries) ahat += binv_[r][row] * a;
      double atilde = status_[j] == VarStatus::AtLower ? ahat : -ahat;
      if (std::fabs(atilde) < 1e-11) continue;
      if (std::fabs(atilde) > 1e8) { numerically_ok = false; break; }
      bool integral_col = j < num_structural_ && model.variable(j).integral;
      double gamma;
      if (integral_col) {
        double fj = atilde - std::floor(atilde);
        gamma = fj <= f0 + 1e-12 ? fj : f0 * (1.0 - fj) / (1.0 - f0);
      } else {
        gamma = atilde >= 0.0 ? atilde : f0 / (1.0 - f0) * (-atilde);
      }
      if (gamma > 1e-11) terms.emplace_back(j, gamma);
    }
    if (!numerically_ok || terms.empty()) continue;

    // sum gamma_j t_j >= f0; substitute t_j and eliminate slack columns.
    std::vector<double> dense(num_structural_, 0.0);
    double rhs = f0;
    for (auto [j, gamma] : terms) {
      bool at_lower = status_[j] == VarStatus::AtLower;
      if (j < num_structural_) {
        double bound = at_lower ? cols_[j].lb : cols_[j].ub;
        if (!std::isfinite(bound)) { numerically_ok = false; break; }
        if (at_lower) {
          dense[j] += gamma;
          rhs += gamma * bound;
        } else {
          dense[j] -= gamma;
          rhs -= gamma * bound;
        }
      } else {
        // Slack of row q: s = rhs_q - a_q x, with bound 0 on the side it
        // sits at, so t = +-s expands onto the row's structural columns.
        int q = j - num_structural_;
        double sign = at_lower ? 1.0 : -1.0;  // t = sign * s = sign * (rhs_q - a_q x)
        rhs -= sign * gamma * rhs_[q];
        for (auto [var, coef] : rows_[q].coeffs) dense[var] -= sign * gamma * coef;
      }
    }
    if (!numerically_ok) continue;

    Row cut;
    cut.sense = Sense::GreaterEq;
    cut.rhs = rhs;
    double maxc = 0.0;
    for (int j = 0; j < num_structural_; ++j) {
      if (std::fabs(dense[j]) < 1e-10) continue;
      cut.coeffs.emplace_back(j, dense[j]);
      maxc = std::max(maxc, std::fabs(dense[j]));
    }
    if (cut.coeffs.empty() || maxc > 1e7) continue;
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

LpResult solve_lp(const Model& model, long iteration_limit) {
  SimplexSolver solver(model);
  return solver.solve(iteration_limit);
}

}  // namespace glcip::milp
