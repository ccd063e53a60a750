#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cournot/dynamics.hpp"
#include "cournot/stability.hpp"
#include "cournot/types.hpp"

namespace cournot {

// --- parameter sweeps -------------------------------------------------------

enum class SweepMode { Criterion, Numeric, Both };

// Verdict lattice over a 2-D parameter rectangle, evaluated at the
// closed-form equilibrium of each cell. Both the criterion polynomials and
// the numeric Jury test run for every feasible cell; `mode` selects which
// classification fills the cell and whether disagreements are recorded.
// Cells whose parameters violate the model's domain become Infeasible.
// Throws std::invalid_argument when an axis does not apply to the model.
SweepGrid sweep2d(const ModelSpec& base, const AxisSpec& x_axis,
                  const AxisSpec& y_axis, SweepMode mode, int threads = 0);

// --- bifurcation scans ------------------------------------------------------

struct BifurcationScan {
  std::string param_name;
  std::vector<double> param_values;           // strictly increasing
  std::vector<std::vector<double>> samples;   // retained orbit values per
                                              // parameter; empty if escaped
};

struct BifurcationOptions {
  std::size_t transient = kDefaultTransient;
  std::size_t keep = 100;              // post-transient samples retained
  int coordinate = 0;                  // 0 -> q1, 1 -> q2
  std::optional<State> start;          // default: 0.9 * equilibrium
  int threads = 0;
  ResponseOptions response;
};

BifurcationScan bifurcation(const ModelSpec& base, const std::string& param_name,
                            double lo, double hi, std::size_t n_points,
                            const BifurcationOptions& opts = {});

// --- Lyapunov exponent ------------------------------------------------------

// Largest Lyapunov exponent estimate: average log growth of a tangent vector
// propagated by jacobian() along the orbit, renormalized every step. GR runs
// on its one-dimensional reduction. EscapeError propagates if the orbit
// leaves the domain within n steps.
double lyapunov(const ModelSpec& spec, const State& s0, std::size_t n,
                const ResponseOptions& opts = {});

// --- agreement suite --------------------------------------------------------

struct ParamPoint {
  double c1 = 0.0, c2 = 0.0, k = 0.0, k2 = 0.0, l = 0.0;
};

struct AgreementSuiteConfig {
  Model model = Model::GR;
  CostKind kind = CostKind::Quadratic;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 42;
  double band = 1e-7;
  int threads = 0;
};

struct AgreementCounts {
  std::size_t agree = 0;
  std::size_t near_boundary = 0;
  std::size_t disagree = 0;
  std::vector<ParamPoint> disagreements;  // in sample order
  std::vector<ParamPoint> near_points;    // in sample order
};

// Draws random specs (costs log-uniform on [0.05,20], speeds log-uniform on
// [0.01,5], L uniform on (0,1)) and cross-validates criteria() against
// jury(jacobian()) at the equilibrium. Off-boundary samples must all agree;
// this is the decisive transcription check for the criterion tables.
AgreementCounts agreement_suite(const AgreementSuiteConfig& cfg);

// --- containment probes -----------------------------------------------------

struct ProbeBox {
  double lo = 0.0;
  double hi = 1.0;
};

struct ContainmentConfig {
  Model model = Model::GR;
  ProbeBox cost1{0.05, 20.0};   // log-uniform
  ProbeBox cost2{0.05, 20.0};   // log-uniform
  ProbeBox speed{0.01, 5.0};    // K (and K2 unless tied), log-uniform
  ProbeBox weight{0.02, 0.98};  // L, uniform (GA only)
  bool tie_speeds = false;      // GG: force K2 = K
  // keep only draws with c1 > region_c1 or c2 > region_c2
  bool region_filter = false;
  double region_c1 = 0.0;
  double region_c2 = 0.0;
  bool search_witness = false;  // also pick the strongest verified violation
  std::size_t n_samples = 100000;
  std::uint64_t seed = 42;
  double band = 1e-7;
  int threads = 0;
};

// At each sampled parameter point, evaluates linear-cost and quadratic-cost
// stability. A violation is a point that is linear-stable but
// quadratic-unstable; every reported violation is re-verified through the
// numeric Jury test before being counted. With search_witness set, the
// violation with the widest spectral margins is additionally confirmed by
// orbit runs under both cost kinds and returned as `witness`. Reports are
// reproducible bit-for-bit for a fixed seed at any thread count.
struct ContainmentReport {
  std::size_t n_samples = 0;
  std::size_t n_linear_stable = 0;
  std::size_t n_near_boundary = 0;
  std::vector<ParamPoint> violations;  // in sample order
  std::optional<ParamPoint> witness;
  bool witness_orbit_confirmed = false;
};

ContainmentReport containment_probe(const ContainmentConfig& cfg);

// Probe configurations for the stated containment claims and the two
// witness searches.
ContainmentConfig gr_containment_config();        // region c1 > 4 or c2 > 3
ContainmentConfig gb_containment_config();        // region c1 > 13 or c2 > 7
ContainmentConfig gg_tied_containment_config();   // K1 = K2
ContainmentConfig ga_containment_config();        // GA over its own box
ContainmentConfig gl_witness_config();
ContainmentConfig gg_free_witness_config();       // free K1, K2

}  // namespace cournot
