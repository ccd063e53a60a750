#pragma once

#include <utility>
#include <vector>

#include "cournot/responses.hpp"
#include "cournot/types.hpp"

namespace cournot {

// Linearization of step() at a point. GR is governed by its one-dimensional
// reduction, so its derivative sits in a11 with the rest zero.
struct Jacobian2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
};

// Exact Jacobian of the model map at a strictly positive state. The reaction
// derivative dR2/dq1 comes from implicit differentiation of the FOC, not from
// differentiating the closed form, so it is free of cube-root branch issues.
Jacobian2 jacobian(const ModelSpec& spec, const State& s,
                   const ResponseOptions& opts = {});

// Jury test for a 2x2 map: evaluates 1+Tr+Det, 1-Tr+Det, 1-Det and the
// closed-form spectral radius. Classification uses values normalized by
// (1 + |Tr| + |Det|): Boundary inside the tolerance band, Stable when all
// three are positive, Unstable otherwise.
StabilityVerdict jury(const Jacobian2& J, double boundary_tol = kBoundaryTol);

// Smallest |normalized Jury value| of a verdict; how close the verdict sits
// to the stability boundary.
double jury_margin(const StabilityVerdict& verdict);

double spectral_radius(const Jacobian2& J);

// --- criterion polynomials -------------------------------------------------

// The stability criterion polynomials, one table per symbol. Quadratic-cost
// criteria: R_GR1, R_GB1, R_GL1, R_GA1, R_GG1/R_GG2. Linear-cost criteria:
// R_GR2, R_GB2/R_GB3, R_GL2/R_GL3, R_GA2/R_GA3, R_GG3/R_GG4.
enum class Criterion {
  R_GR1, R_GR2,
  R_GB1, R_GB2, R_GB3,
  R_GL1, R_GL2, R_GL3,
  R_GA1, R_GA2, R_GA3,
  R_GG1, R_GG2, R_GG3, R_GG4,
};
const char* to_string(Criterion id);

// Value of one criterion polynomial, together with the sum of its term
// magnitudes at the same point (the natural scale for sign margins).
// Parameters not appearing in the polynomial are ignored. K doubles as K1
// for the GG criteria.
struct CriterionEvaluation {
  double value = 0.0;
  double scale = 0.0;
};
CriterionEvaluation criterion_value(Criterion id, double c1, double c2,
                                    double k, double k2, double l);

// The applicable criteria for a (model, cost kind) pair, evaluated at the
// spec's parameters, with the per-criterion sign conditions applied.
struct CriterionSet {
  std::vector<CriterionValue> values;
  bool stable = false;      // all sign conditions hold
  double min_margin = 0.0;  // smallest normalized |value| across the set
};
CriterionSet criteria(const ModelSpec& spec);

// Factor values of the squarefree border polynomial of the GR system:
// c1 * c2 * K * (c1-c2) * (c1+c2) * (c1-c2/9) * quartic, where
// 64 * quartic == R_GR1 identically.
struct GrBorderFactors {
  double c1 = 0.0;
  double c2 = 0.0;
  double k = 0.0;
  double c1_minus_c2 = 0.0;
  double c1_plus_c2 = 0.0;
  double c1_minus_c2_ninth = 0.0;
  double quartic = 0.0;
};
GrBorderFactors border_poly_gr(double c1, double c2, double k);

// --- cross validation -------------------------------------------------------

enum class AgreementResult { Agree, Disagree, NearBoundary };
const char* to_string(AgreementResult r);

// Compares the criterion verdict against the numeric Jury verdict at the
// closed-form equilibrium. NearBoundary when either side's normalized margin
// falls within `band`; every other sample must Agree if the polynomial
// tables and the Jacobians are both right.
AgreementResult agreement(const ModelSpec& spec, double band = 1e-7);

}  // namespace cournot
