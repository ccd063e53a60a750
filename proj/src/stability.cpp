#include "cournot/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cournot/equilibrium.hpp"

namespace cournot {

namespace {

struct GradientPartials {
  double d_self;   // d G / d q_self
  double d_rival;  // d G / d q_rival
};

GradientPartials gradient_partials(const CostSide& cost, double q_self,
                                   double q_rival) {
  const double total = q_self + q_rival;
  const double cube = total * total * total;
  const double own_cost =
      cost.kind == CostKind::Quadratic ? 4.0 * cost.c * q_self : cost.c;
  return {q_rival * (q_rival - q_self) / cube - own_cost,
          q_self * (q_self - q_rival) / cube};
}

// dR2/dq1 with q2 = R2(q1) already solved. Implicit differentiation of
// q1 - 2 c2 q2 (q1+q2)^2 = 0 for the quadratic cubic; the linear reaction
// sqrt(q1/c2) - q1 differentiates directly (derivative 0 on the clamped
// branch where the interior candidate is negative).
double reaction_derivative(const CostSide& cost2, double q1, double q2) {
  if (cost2.kind == CostKind::Quadratic) {
    const double total = q1 + q2;
    return (1.0 - 4.0 * cost2.c * q2 * total) /
           (2.0 * cost2.c * total * (total + 2.0 * q2));
  }
  if (std::sqrt(q1 / cost2.c) < q1) return 0.0;
  return 1.0 / (2.0 * std::sqrt(cost2.c * q1)) - 1.0;
}

struct LmaPartials {
  double d_rival;  // d S2 / d q1
  double d_self;   // d S2 / d q2
};

LmaPartials lma_partials(const CostSide& cost2, double q_self, double q_rival) {
  const double total = q_self + q_rival;
  if (cost2.kind == CostKind::Quadratic) {
    const double numer = 2.0 * q_self + q_rival;
    const double denom = 2.0 * (1.0 + cost2.c * total * total);
    const double d_denom = 4.0 * cost2.c * total;
    return {(denom - numer * d_denom) / (denom * denom),
            (2.0 * denom - numer * d_denom) / (denom * denom)};
  }
  if (2.0 * q_self + q_rival - cost2.c * total * total < 0.0) return {0.0, 0.0};
  return {0.5 * (1.0 - 2.0 * cost2.c * total), 1.0 - cost2.c * total};
}

}  // namespace

Jacobian2 jacobian(const ModelSpec& spec, const State& s,
                   const ResponseOptions& opts) {
  if (!(s.q1 > 0.0) || !(s.q2 > 0.0))
    throw std::domain_error("jacobian: state must be strictly positive");

  Jacobian2 J;
  if (spec.model == Model::GR) {
    // derivative of the reduced map q1 + K*G1(q1, R2(q1))
    const double rival = best_response(spec.cost2, s.q1, opts);
    const auto g = gradient_partials(spec.cost1, s.q1, rival);
    const double dr = reaction_derivative(spec.cost2, s.q1, rival);
    J.a11 = 1.0 + spec.K * (g.d_self + g.d_rival * dr);
    return J;
  }

  const auto g1 = gradient_partials(spec.cost1, s.q1, s.q2);
  J.a11 = 1.0 + spec.K * g1.d_self;
  J.a12 = spec.K * g1.d_rival;
  switch (spec.model) {
    case Model::GB: {
      const double reaction = best_response(spec.cost2, s.q1, opts);
      J.a21 = reaction_derivative(spec.cost2, s.q1, reaction);
      J.a22 = 0.0;
      break;
    }
    case Model::GL: {
      const auto s2 = lma_partials(spec.cost2, s.q2, s.q1);
      J.a21 = s2.d_rival;
      J.a22 = s2.d_self;
      break;
    }
    case Model::GA: {
      const double reaction = best_response(spec.cost2, s.q1, opts);
      J.a21 = spec.L * reaction_derivative(spec.cost2, s.q1, reaction);
      J.a22 = 1.0 - spec.L;
      break;
    }
    case Model::GG: {
      const auto g2 = gradient_partials(spec.cost2, s.q2, s.q1);
      J.a21 = spec.K2 * g2.d_rival;
      J.a22 = 1.0 + spec.K2 * g2.d_self;
      break;
    }
    case Model::GR:
      break;  // handled above
  }
  return J;
}

double spectral_radius(const Jacobian2& J) {
  const double tr = J.trace();
  const double det = J.det();
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    return std::max(std::abs(0.5 * (tr + root)), std::abs(0.5 * (tr - root)));
  }
  return std::sqrt(det);  // complex pair, |lambda|^2 = Det
}

StabilityVerdict jury(const Jacobian2& J, double boundary_tol) {
  StabilityVerdict v;
  if (!std::isfinite(J.a11) || !std::isfinite(J.a12) || !std::isfinite(J.a21) ||
      !std::isfinite(J.a22)) {
    v.cls = StabilityClass::Infeasible;
    return v;
  }
  const double tr = J.trace();
  const double det = J.det();
  v.jury1 = 1.0 + tr + det;
  v.jury2 = 1.0 - tr + det;
  v.jury3 = 1.0 - det;
  v.spectral_radius = spectral_radius(J);

  const double scale = 1.0 + std::abs(tr) + std::abs(det);
  const double n1 = v.jury1 / scale;
  const double n2 = v.jury2 / scale;
  const double n3 = v.jury3 / scale;
  // a decisively violated condition wins over another sitting in the band:
  // an eigenvalue strictly outside the unit circle is unstable regardless
  if (n1 < -boundary_tol || n2 < -boundary_tol || n3 < -boundary_tol)
    v.cls = StabilityClass::Unstable;
  else if (n1 <= boundary_tol || n2 <= boundary_tol || n3 <= boundary_tol)
    v.cls = StabilityClass::Boundary;
  else
    v.cls = StabilityClass::Stable;
  return v;
}

double jury_margin(const StabilityVerdict& verdict) {
  // Tr and Det are recoverable from the raw Jury values.
  const double det = 1.0 - verdict.jury3;
  const double tr = 0.5 * (verdict.jury1 - verdict.jury2);
  const double scale = 1.0 + std::abs(tr) + std::abs(det);
  return std::min({std::abs(verdict.jury1), std::abs(verdict.jury2),
                   std::abs(verdict.jury3)}) /
         scale;
}

const char* to_string(AgreementResult r) {
  switch (r) {
    case AgreementResult::Agree: return "agree";
    case AgreementResult::Disagree: return "disagree";
    case AgreementResult::NearBoundary: return "near_boundary";
  }
  return "?";
}

AgreementResult agreement(const ModelSpec& spec, double band) {
  const CriterionSet cs = criteria(spec);
  const EquilibriumReport eq = nash_equilibrium(spec);
  const StabilityVerdict verdict = jury(jacobian(spec, eq.state));
  if (cs.min_margin <= band || jury_margin(verdict) <= band ||
      verdict.cls == StabilityClass::Boundary)
    return AgreementResult::NearBoundary;
  const bool numeric_stable = verdict.cls == StabilityClass::Stable;
  return cs.stable == numeric_stable ? AgreementResult::Agree
                                     : AgreementResult::Disagree;
}

}  // namespace cournot
