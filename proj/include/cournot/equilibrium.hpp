#pragma once

#include "cournot/types.hpp"

namespace cournot {

struct EquilibriumReport {
  State state;
  double residual1 = 0.0;  // firm 1 FOC residual at the equilibrium
  double residual2 = 0.0;
  CostKind cost_kind = CostKind::Quadratic;
};

// The unique positive Nash equilibrium in closed form. Quadratic costs:
//   q1 = sqrt(c2)/(sqrt(c1)+sqrt(c2)) / sqrt(2*sqrt(c1*c2)),  q2 symmetric.
// Linear costs: (c2/(c1+c2)^2, c1/(c1+c2)^2).
// Both cost sides must share one kind; mixed kinds are rejected.
EquilibriumReport nash_equilibrium(const CostSide& cost1, const CostSide& cost2);
EquilibriumReport nash_equilibrium(const ModelSpec& spec);

}  // namespace cournot
