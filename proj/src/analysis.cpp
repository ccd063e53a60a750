#include "cournot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "cournot/equilibrium.hpp"
#include "cournot/parallel.hpp"
#include "cournot/rng.hpp"

namespace cournot {

namespace {

bool axis_applicable(Model model, const std::string& name) {
  if (name == "c1" || name == "c2" || name == "c" || name == "k") return true;
  if (name == "k2" || name == "k12") return model == Model::GG;
  if (name == "l") return model == Model::GA;
  return false;
}

void apply_axis(ModelSpec& spec, const std::string& name, double value) {
  if (name == "c1") spec.cost1.c = value;
  else if (name == "c2") spec.cost2.c = value;
  else if (name == "c") spec.cost1.c = spec.cost2.c = value;
  else if (name == "k") spec.K = value;
  else if (name == "k2") spec.K2 = value;
  else if (name == "k12") spec.K = spec.K2 = value;
  else if (name == "l") spec.L = value;
  else throw std::invalid_argument("unknown axis: " + name);
}

void apply_point(ModelSpec& spec, const ParamPoint& p) {
  spec.cost1.c = p.c1;
  spec.cost2.c = p.c2;
  spec.K = p.k;
  spec.K2 = p.k2;
  spec.L = p.l;
}

}  // namespace

SweepGrid sweep2d(const ModelSpec& base, const AxisSpec& x_axis,
                  const AxisSpec& y_axis, SweepMode mode, int threads) {
  if (!axis_applicable(base.model, x_axis.name))
    throw std::invalid_argument("axis " + x_axis.name + " not applicable to model " +
                                to_string(base.model));
  if (!axis_applicable(base.model, y_axis.name))
    throw std::invalid_argument("axis " + y_axis.name + " not applicable to model " +
                                to_string(base.model));
  if (x_axis.name == y_axis.name)
    throw std::invalid_argument("sweep axes must be distinct");
  if (x_axis.resolution < 2 || y_axis.resolution < 2)
    throw std::invalid_argument("axis resolution must be at least 2");

  SweepGrid grid;
  grid.x_axis = x_axis;
  grid.y_axis = y_axis;
  grid.fixed = base;
  const std::size_t nx = x_axis.resolution;
  const std::size_t ny = y_axis.resolution;
  grid.cells.resize(nx * ny);
  std::vector<unsigned char> disagree(nx * ny, 0);

  parallel_for(nx * ny, threads, [&](std::size_t idx) {
    ModelSpec spec = base;
    apply_axis(spec, x_axis.name, x_axis.value(idx % nx));
    apply_axis(spec, y_axis.name, y_axis.value(idx / nx));
    StabilityVerdict& cell = grid.cells[idx];
    try {
      validate(spec);
    } catch (const std::invalid_argument&) {
      cell = StabilityVerdict{};  // Infeasible
      return;
    }
    const CriterionSet cs = criteria(spec);
    const EquilibriumReport eq = nash_equilibrium(spec);
    cell = jury(jacobian(spec, eq.state));
    cell.criterion_values = cs.values;

    StabilityClass crit_cls = StabilityClass::Boundary;
    if (cs.min_margin > kBoundaryTol)
      crit_cls = cs.stable ? StabilityClass::Stable : StabilityClass::Unstable;

    if (mode == SweepMode::Criterion) {
      cell.cls = crit_cls;
    } else if (mode == SweepMode::Both) {
      // off-band disagreements point at a transcription or Jacobian bug
      const bool off_band = cs.min_margin > 1e-6 && jury_margin(cell) > 1e-6;
      if (off_band && crit_cls != cell.cls &&
          crit_cls != StabilityClass::Boundary &&
          cell.cls != StabilityClass::Boundary)
        disagree[idx] = 1;
    }
  });

  for (std::size_t i = 0; i < disagree.size(); ++i)
    if (disagree[i]) grid.disagree_cells.push_back(i);
  return grid;
}

BifurcationScan bifurcation(const ModelSpec& base, const std::string& param_name,
                            double lo, double hi, std::size_t n_points,
                            const BifurcationOptions& opts) {
  if (!axis_applicable(base.model, param_name))
    throw std::invalid_argument("axis " + param_name + " not applicable to model " +
                                to_string(base.model));
  if (n_points < 2) throw std::invalid_argument("bifurcation needs >= 2 points");
  if (!(hi > lo)) throw std::invalid_argument("bifurcation range must increase");
  if (opts.coordinate != 0 && opts.coordinate != 1)
    throw std::invalid_argument("coordinate must be 0 (q1) or 1 (q2)");

  BifurcationScan scan;
  scan.param_name = param_name;
  scan.param_values.resize(n_points);
  scan.samples.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    scan.param_values[i] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);

  parallel_for(n_points, opts.threads, [&](std::size_t i) {
    ModelSpec spec = base;
    apply_axis(spec, param_name, scan.param_values[i]);
    try {
      validate(spec);
    } catch (const std::invalid_argument&) {
      return;  // outside the model's domain: recorded as empty
    }
    State s0;
    if (opts.start) {
      s0 = *opts.start;
    } else {
      const State eq = nash_equilibrium(spec).state;
      s0 = {0.9 * eq.q1, 0.9 * eq.q2};
    }
    const Orbit orb = orbit(spec, s0, opts.transient + opts.keep, opts.transient,
                            opts.response);
    if (orb.escaped) return;  // empty sample list marks divergence
    auto& dst = scan.samples[i];
    dst.reserve(orb.states.size());
    for (const State& s : orb.states)
      dst.push_back(opts.coordinate == 0 ? s.q1 : s.q2);
  });
  return scan;
}

double lyapunov(const ModelSpec& spec, const State& s0, std::size_t n,
                const ResponseOptions& opts) {
  if (n == 0) throw std::invalid_argument("lyapunov: n must be positive");

  double sum = 0.0;
  if (spec.model == Model::GR) {
    // one-dimensional reduction: average log |f'| along the orbit
    double q1 = s0.q1;
    for (std::size_t t = 0; t < n; ++t) {
      const double deriv = jacobian(spec, {q1, q1}, opts).a11;
      if (deriv == 0.0) return -std::numeric_limits<double>::infinity();
      sum += std::log(std::abs(deriv));
      q1 = gr_reduced_step(spec, q1, opts);
      if (!std::isfinite(q1) || q1 <= 0.0)
        throw EscapeError("lyapunov: orbit left the positive domain");
    }
    return sum / static_cast<double>(n);
  }

  State s = s0;
  // generic start direction; renormalized every step
  double v1 = 1.0 / std::sqrt(2.0);
  double v2 = 1.0 / std::sqrt(2.0);
  for (std::size_t t = 0; t < n; ++t) {
    const Jacobian2 J = jacobian(spec, s, opts);
    const double w1 = J.a11 * v1 + J.a12 * v2;
    const double w2 = J.a21 * v1 + J.a22 * v2;
    const double growth = std::sqrt(w1 * w1 + w2 * w2);
    if (growth == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(growth);
    v1 = w1 / growth;
    v2 = w2 / growth;
    s = step(spec, s, opts);
  }
  return sum / static_cast<double>(n);
}

AgreementCounts agreement_suite(const AgreementSuiteConfig& cfg) {
  struct Slot {
    AgreementResult result = AgreementResult::Agree;
    ParamPoint point;
  };
  std::vector<Slot> slots(cfg.n_samples);

  parallel_for(cfg.n_samples, cfg.threads, [&](std::size_t i) {
    SplitMix64 rng = stream_rng(cfg.seed, i);
    ParamPoint p;
    p.c1 = rng.log_uniform(0.05, 20.0);
    p.c2 = rng.log_uniform(0.05, 20.0);
    p.k = rng.log_uniform(0.01, 5.0);
    p.k2 = rng.log_uniform(0.01, 5.0);
    do {
      p.l = rng.uniform01();
    } while (!(p.l > 0.0 && p.l < 1.0));

    ModelSpec spec;
    spec.model = cfg.model;
    spec.cost1.kind = spec.cost2.kind = cfg.kind;
    apply_point(spec, p);
    slots[i] = {agreement(spec, cfg.band), p};
  });

  AgreementCounts counts;
  for (const Slot& s : slots) {
    switch (s.result) {
      case AgreementResult::Agree:
        ++counts.agree;
        break;
      case AgreementResult::NearBoundary:
        ++counts.near_boundary;
        counts.near_points.push_back(s.point);
        break;
      case AgreementResult::Disagree:
        ++counts.disagree;
        counts.disagreements.push_back(s.point);
        break;
    }
  }
  return counts;
}

namespace {

struct ProbeOutcome {
  bool near_boundary = false;
  bool linear_stable = false;
  bool violation = false;  // linear-stable, quadratic-unstable, verified
  // violations: min(1 - rho_lin, rho_quad - 1); linear-stable non-violations:
  // minus the quadratic criterion margin (near-miss rank for refinement)
  double score = 0.0;
  ParamPoint point;
};

ModelSpec spec_for_probe(const ContainmentConfig& cfg, const ParamPoint& p,
                         CostKind kind) {
  ModelSpec spec;
  spec.model = cfg.model;
  spec.cost1.kind = spec.cost2.kind = kind;
  apply_point(spec, p);
  return spec;
}

// criterion check + numeric re-verification at both equilibria
ProbeOutcome probe_point(const ContainmentConfig& cfg, const ParamPoint& p) {
  ProbeOutcome out;
  out.point = p;
  const ModelSpec lin = spec_for_probe(cfg, p, CostKind::Linear);
  const ModelSpec quad = spec_for_probe(cfg, p, CostKind::Quadratic);
  const CriterionSet cs_lin = criteria(lin);
  const CriterionSet cs_quad = criteria(quad);
  if (cs_lin.min_margin <= cfg.band || cs_quad.min_margin <= cfg.band) {
    out.near_boundary = true;
    return out;
  }
  out.linear_stable = cs_lin.stable;
  if (!cs_lin.stable || cs_quad.stable) {
    // near-miss score for the refinement fallback: linear-stable points
    // close to the quadratic stability boundary rank highest
    if (cs_lin.stable) out.score = -cs_quad.min_margin;
    return out;
  }

  const StabilityVerdict v_lin = jury(jacobian(lin, nash_equilibrium(lin).state));
  const StabilityVerdict v_quad =
      jury(jacobian(quad, nash_equilibrium(quad).state));
  if (jury_margin(v_lin) <= cfg.band || jury_margin(v_quad) <= cfg.band) {
    out.near_boundary = true;
    return out;
  }
  if (v_lin.cls != StabilityClass::Stable || v_quad.cls != StabilityClass::Unstable) {
    // criterion and Jury verdicts crossed; treat as boundary noise, the
    // agreement suite polices genuine disagreement
    out.near_boundary = true;
    return out;
  }
  out.violation = true;
  out.score = std::min(1.0 - v_lin.spectral_radius, v_quad.spectral_radius - 1.0);
  return out;
}

ParamPoint draw_point(const ContainmentConfig& cfg, SplitMix64& rng) {
  ParamPoint p;
  for (;;) {
    p.c1 = rng.log_uniform(cfg.cost1.lo, cfg.cost1.hi);
    p.c2 = rng.log_uniform(cfg.cost2.lo, cfg.cost2.hi);
    if (!cfg.region_filter || p.c1 > cfg.region_c1 || p.c2 > cfg.region_c2) break;
  }
  p.k = rng.log_uniform(cfg.speed.lo, cfg.speed.hi);
  p.k2 = cfg.tie_speeds ? p.k : rng.log_uniform(cfg.speed.lo, cfg.speed.hi);
  p.l = rng.uniform(cfg.weight.lo, cfg.weight.hi);
  return p;
}

// Orbit confirmation for a witness: the perturbed linear orbit must return
// to the equilibrium, the quadratic one must not.
bool confirm_witness(const ContainmentConfig& cfg, const ParamPoint& p) {
  const std::size_t steps = 20000;
  const ModelSpec lin = spec_for_probe(cfg, p, CostKind::Linear);
  const ModelSpec quad = spec_for_probe(cfg, p, CostKind::Quadratic);

  const State eq_lin = nash_equilibrium(lin).state;
  State s{eq_lin.q1 * (1.0 + 1e-4), eq_lin.q2 * (1.0 - 1e-4)};
  const Orbit orb_lin = orbit(lin, s, steps, steps - 1);
  if (orb_lin.escaped) return false;
  const State last = orb_lin.states.back();
  const double dist_lin = std::hypot(last.q1 - eq_lin.q1, last.q2 - eq_lin.q2);
  if (dist_lin > 1e-9 * (1.0 + std::hypot(eq_lin.q1, eq_lin.q2))) return false;

  const State eq_quad = nash_equilibrium(quad).state;
  const double d0 = 1e-4 * std::hypot(eq_quad.q1, eq_quad.q2);
  State s_quad{eq_quad.q1 * (1.0 + 1e-4), eq_quad.q2 * (1.0 - 1e-4)};
  const Orbit orb_quad = orbit(quad, s_quad, steps, steps - 1);
  if (orb_quad.escaped) return true;  // divergence confirms instability
  const State last_quad = orb_quad.states.back();
  const double dist_quad =
      std::hypot(last_quad.q1 - eq_quad.q1, last_quad.q2 - eq_quad.q2);
  return dist_quad > 10.0 * d0;
}

}  // namespace

ContainmentReport containment_probe(const ContainmentConfig& cfg) {
  std::vector<ProbeOutcome> outcomes(cfg.n_samples);
  parallel_for(cfg.n_samples, cfg.threads, [&](std::size_t i) {
    SplitMix64 rng = stream_rng(cfg.seed, i);
    outcomes[i] = probe_point(cfg, draw_point(cfg, rng));
  });

  ContainmentReport report;
  report.n_samples = cfg.n_samples;
  std::ptrdiff_t best = -1;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const ProbeOutcome& o = outcomes[i];
    if (o.near_boundary) ++report.n_near_boundary;
    if (o.linear_stable) ++report.n_linear_stable;
    if (o.violation) {
      report.violations.push_back(o.point);
      if (best < 0 || o.score > outcomes[static_cast<std::size_t>(best)].score)
        best = static_cast<std::ptrdiff_t>(i);
    }
  }

  if (cfg.search_witness) {
    // prefer hits with clear spectral margins so the orbit check is decisive
    if (best >= 0) {
      const ProbeOutcome& o = outcomes[static_cast<std::size_t>(best)];
      report.witness = o.point;
      report.witness_orbit_confirmed = confirm_witness(cfg, o.point);
    } else {
      // no direct hit: refine locally around the linear-stable sample that
      // sits closest to the quadratic stability boundary
      std::ptrdiff_t seed_idx = -1;
      for (std::size_t i = 0; i < outcomes.size(); ++i)
        if (outcomes[i].linear_stable &&
            (seed_idx < 0 || outcomes[i].score >
                                 outcomes[static_cast<std::size_t>(seed_idx)].score))
          seed_idx = static_cast<std::ptrdiff_t>(i);
      if (seed_idx >= 0) {
        const ParamPoint center = outcomes[static_cast<std::size_t>(seed_idx)].point;
        SplitMix64 rng = stream_rng(cfg.seed, cfg.n_samples + 7);
        for (int trial = 0; trial < 2000 && !report.witness; ++trial) {
          ParamPoint p = center;
          const double spread = 0.5 * std::pow(0.999, trial);
          p.c1 *= std::exp(rng.uniform(-spread, spread));
          p.c2 *= std::exp(rng.uniform(-spread, spread));
          p.k *= std::exp(rng.uniform(-spread, spread));
          if (!cfg.tie_speeds) p.k2 *= std::exp(rng.uniform(-spread, spread));
          else p.k2 = p.k;
          const ProbeOutcome o = probe_point(cfg, p);
          if (o.violation) {
            report.witness = p;
            report.witness_orbit_confirmed = confirm_witness(cfg, p);
          }
        }
      }
    }
  }
  return report;
}

ContainmentConfig gr_containment_config() {
  ContainmentConfig cfg;
  cfg.model = Model::GR;
  cfg.region_filter = true;
  cfg.region_c1 = 4.0;
  cfg.region_c2 = 3.0;
  return cfg;
}

ContainmentConfig gb_containment_config() {
  ContainmentConfig cfg;
  cfg.model = Model::GB;
  cfg.region_filter = true;
  cfg.region_c1 = 13.0;
  cfg.region_c2 = 7.0;
  return cfg;
}

ContainmentConfig gg_tied_containment_config() {
  ContainmentConfig cfg;
  cfg.model = Model::GG;
  cfg.tie_speeds = true;
  return cfg;
}

ContainmentConfig ga_containment_config() {
  ContainmentConfig cfg;
  cfg.model = Model::GA;
  return cfg;
}

ContainmentConfig gl_witness_config() {
  ContainmentConfig cfg;
  cfg.model = Model::GL;
  cfg.search_witness = true;
  return cfg;
}

ContainmentConfig gg_free_witness_config() {
  ContainmentConfig cfg;
  cfg.model = Model::GG;
  cfg.search_witness = true;
  return cfg;
}

}  // namespace cournot
