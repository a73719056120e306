#include "glcip/milp/model.hpp"

#include <cmath>
#include <stdexcept>

namespace glcip::milp {

const char* cut_kind_name(CutKind kind) {
  switch (kind) {
    case CutKind::None: return "none";
    case CutKind::Cycle: return "cycle";
    case CutKind::Icc: return "icc";
    case CutKind::IccPlus: return "icc_plus";
    case CutKind::Licc: return "licc";
    case CutKind::LiccPlus: return "licc_plus";
    case CutKind::Cf: return "cf";
  }
  return "?";
}

int Model::add_variable(std::string name, double lb, double ub, bool integral, double objective,
                        int branch_priority) {
  if (lb > ub) throw std::invalid_argument("variable '" + name + "' has crossed bounds");
  if (integral && (!std::isfinite(lb) || !std::isfinite(ub)))
    throw std::invalid_argument("integer variable '" + name + "' must have finite bounds");
  vars_.push_back({std::move(name), lb, ub, integral, objective, branch_priority});
  return static_cast<int>(vars_.size()) - 1;
}

int Model::add_row(Row row) {
  if (row.coeffs.empty()) throw std::invalid_argument("empty constraint row");
  for (auto [j, c] : row.coeffs) {
    if (j < 0 || j >= num_variables())
      throw std::invalid_argument("row references unknown variable " + std::to_string(j));
    (void)c;
  }
  rows_.push_back(std::move(row));
  return static_cast<int>(rows_.size()) - 1;
}

int Model::add_row(std::vector<std::pair<int, double>> coeffs, Sense sense, double rhs,
                   CutKind kind) {
  Row r;
  r.coeffs = std::move(coeffs);
  r.sense = sense;
  r.rhs = rhs;
  r.kind = kind;
  return add_row(std::move(r));
}

bool Model::objective_is_integral() const {
  for (const Variable& v : vars_) {
    if (v.objective == 0.0) continue;
    if (!v.integral) return false;
    if (v.objective != std::floor(v.objective)) return false;
  }
  return true;
}

}  // namespace glcip::milp
