#include "cournot/responses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cournot {

namespace {

double checked_total(double q_self, double q_rival) {
  const double total = q_self + q_rival;
  if (!(total > 0.0))
    throw std::domain_error("total supply must be positive");
  return total;
}

}  // namespace

double profit(const CostSide& cost, double q_self, double q_rival) {
  const double total = checked_total(q_self, q_rival);
  const double revenue = q_self / total;
  if (cost.kind == CostKind::Quadratic)
    return revenue - cost.c * q_self * q_self;
  return revenue - cost.c * q_self;
}

double marginal_profit(const CostSide& cost, double q_self, double q_rival) {
  const double total = checked_total(q_self, q_rival);
  const double slope = q_rival / (total * total);
  if (cost.kind == CostKind::Quadratic) return slope - 2.0 * cost.c * q_self;
  return slope - cost.c;
}

double foc_residual(const CostSide& cost, double q_self, double q_rival) {
  const double total = checked_total(q_self, q_rival);
  if (cost.kind == CostKind::Quadratic)
    return q_rival - 2.0 * cost.c * q_self * total * total;
  return q_rival / (total * total) - cost.c;
}

double best_response_closed_form(double c, double q_rival) {
  const double r2 = q_rival * q_rival;
  const double m = std::cbrt(c * c * q_rival *
                             (4.0 * c * r2 +
                              3.0 * std::sqrt(3.0) * std::sqrt(8.0 * c * r2 + 27.0) +
                              27.0));
  return std::cbrt(2.0) * m / (6.0 * c) +
         std::cbrt(4.0) * c * r2 / (3.0 * m) - 2.0 * q_rival / 3.0;
}

double best_response(const CostSide& cost, double q_rival,
                     const ResponseOptions& opts) {
  if (!(q_rival > 0.0) || !std::isfinite(q_rival))
    throw std::domain_error("best_response: q_rival must be positive");

  if (cost.kind == CostKind::Linear) {
    const double interior = std::sqrt(q_rival / cost.c) - q_rival;
    return interior > 0.0 ? interior : 0.0;
  }

  const double c = cost.c;
  const double tol = opts.newton_tol * (1.0 + q_rival);

  // The FOC residual g(q) = q_rival - 2cq(q+q_rival)^2 is strictly decreasing
  // with g(0) = q_rival > 0, so the positive root is unique and bracketing is
  // safe. The closed form loses digits when c*q_rival^2 is small; it only
  // seeds the iteration.
  double lo = 0.0;
  double hi = std::max(q_rival, 1.0 / std::sqrt(2.0 * c));
  int iter = 0;
  while (foc_residual(cost, hi, q_rival) >= 0.0) {
    hi *= opts.bracket_growth;
    if (++iter > opts.max_iter)
      throw std::runtime_error("best_response: bracket expansion failed");
  }

  double q = best_response_closed_form(c, q_rival);
  if (!(q > lo) || !(q < hi) || !std::isfinite(q)) q = 0.5 * (lo + hi);

  // Newton with bisection fallback; after reaching tol, two more full steps
  // push the residual to the rounding floor.
  int extra = 2;
  for (iter = 0; iter < opts.max_iter; ++iter) {
    const double total = q + q_rival;
    const double g = q_rival - 2.0 * c * q * total * total;
    if (std::abs(g) <= tol && --extra < 0) return q;
    if (g > 0.0) lo = q; else hi = q;
    const double dg = -2.0 * c * total * (total + 2.0 * q);
    double next = q - g / dg;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (next == q) break;  // rounding floor reached
    q = next;
  }
  if (std::abs(foc_residual(cost, q, q_rival)) <= tol) return q;
  throw std::runtime_error("best_response: Newton did not converge");
}

double lma_response(const CostSide& cost, double q_self, double q_rival) {
  const double total = checked_total(q_self, q_rival);
  if (cost.kind == CostKind::Quadratic)
    return (2.0 * q_self + q_rival) / (2.0 * (1.0 + cost.c * total * total));
  const double interior = 0.5 * (2.0 * q_self + q_rival - cost.c * total * total);
  return interior > 0.0 ? interior : 0.0;
}

double gradient_term(const CostSide& cost, double q_self, double q_rival) {
  return q_self * marginal_profit(cost, q_self, q_rival);
}

}  // namespace cournot
