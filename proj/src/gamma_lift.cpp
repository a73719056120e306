#include "glcip/gamma_lift.hpp"

#include "glcip/exact_power.hpp"

namespace glcip {

LiftedPropagation lift(const Instance& inst) {
  LiftedPropagation out;
  out.rhs.resize(inst.node_count);
  out.incentive_coeff.resize(inst.node_count);
  for (int i = 0; i < inst.node_count; ++i) {
    out.rhs[i] = ceil_root_power(inst.thresholds[i], inst.gamma);
    const auto& menu = inst.incentives[i];
    auto& coeff = out.incentive_coeff[i];
    coeff.resize(menu.size());
    for (std::size_t p = 0; p < menu.size(); ++p) {
      std::int64_t residual = inst.thresholds[i] - menu[p];
      coeff[p] = out.rhs[i] - (residual > 0 ? ceil_root_power(residual, inst.gamma) : 0);
    }
  }
  return out;
}

std::int64_t influence_requirement(const Instance& inst, int i, std::int64_t p) {
  std::int64_t residual = inst.thresholds[i] - p;
  if (residual <= 0) return 0;
  return ceil_root_power(residual, inst.gamma);
}

bool insufficient_to_activate(const Instance& inst, int i, std::int64_t influence_sum,
                              std::int64_t p) {
  // S^gamma + p < h  <=>  S < requirement(i, p) for integer S.
  return influence_sum < influence_requirement(inst, i, p);
}

}  // namespace glcip
