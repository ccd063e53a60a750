#include "cournot/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "cournot/responses.hpp"

namespace cournot {

EquilibriumReport nash_equilibrium(const CostSide& cost1, const CostSide& cost2) {
  if (cost1.kind != cost2.kind)
    throw std::invalid_argument("nash_equilibrium: cost kinds must match");
  if (!(cost1.c > 0.0)) throw std::invalid_argument("c1 must be positive");
  if (!(cost2.c > 0.0)) throw std::invalid_argument("c2 must be positive");

  EquilibriumReport report;
  report.cost_kind = cost1.kind;
  if (cost1.kind == CostKind::Quadratic) {
    const double r1 = std::sqrt(cost1.c);
    const double r2 = std::sqrt(cost2.c);
    const double scale = 1.0 / std::sqrt(2.0 * std::sqrt(cost1.c * cost2.c));
    report.state.q1 = r2 / (r1 + r2) * scale;
    report.state.q2 = r1 / (r1 + r2) * scale;
  } else {
    const double s = cost1.c + cost2.c;
    report.state.q1 = cost2.c / (s * s);
    report.state.q2 = cost1.c / (s * s);
  }
  report.residual1 = foc_residual(cost1, report.state.q1, report.state.q2);
  report.residual2 = foc_residual(cost2, report.state.q2, report.state.q1);
  return report;
}

EquilibriumReport nash_equilibrium(const ModelSpec& spec) {
  return nash_equilibrium(spec.cost1, spec.cost2);
}

}  // namespace cournot
