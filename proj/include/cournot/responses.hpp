#pragma once

#include "cournot/types.hpp"

namespace cournot {

// Controls for the safeguarded Newton polish used by best_response.
struct ResponseOptions {
  double newton_tol = 1e-12;    // residual target, scaled by (1 + q_rival)
  int max_iter = 200;
  double bracket_growth = 2.0;  // upper bracket expansion factor
};

// Profit under isoelastic demand p = 1/(q_self + q_rival):
//   q_self / (q_self + q_rival) - c*q_self^2   (quadratic cost)
//   q_self / (q_self + q_rival) - c*q_self     (linear cost)
// Throws std::domain_error if q_self + q_rival == 0.
double profit(const CostSide& cost, double q_self, double q_rival);

// d(profit)/d(q_self): q_rival/Q^2 - 2*c*q_self (quadratic) or
// q_rival/Q^2 - c (linear).
double marginal_profit(const CostSide& cost, double q_self, double q_rival);

// First-order condition for the reaction function, zero exactly at the best
// response. Quadratic costs use the polynomial form
//   q_rival - 2*c*q_self*(q_self + q_rival)^2,
// linear costs the bare derivative q_rival/Q^2 - c.
double foc_residual(const CostSide& cost, double q_self, double q_rival);

// Profit-maximizing output against q_rival > 0. Quadratic costs: the unique
// positive root of the FOC cubic, seeded by the closed form and polished by
// a bracketed Newton until |foc_residual| <= newton_tol*(1 + q_rival).
// Linear costs: max(0, sqrt(q_rival/c) - q_rival).
double best_response(const CostSide& cost, double q_rival,
                     const ResponseOptions& opts = {});

// The raw closed form for the positive FOC cubic root (quadratic costs),
// without the Newton polish. Kept separate so the algebraic route can be
// checked against an independent solve.
double best_response_closed_form(double c, double q_rival);

// Next-period output of a local monopolistic approximation player that
// linearizes the demand around the observed (price, supply) point:
//   (2*q_self + q_rival) / (2*(1 + c*Q^2))            (quadratic cost)
//   max(0, (2*q_self + q_rival - c*Q^2) / 2)          (linear cost)
double lma_response(const CostSide& cost, double q_self, double q_rival);

// Gradient-adjustment term G = q_self * marginal_profit.
double gradient_term(const CostSide& cost, double q_self, double q_rival);

}  // namespace cournot
