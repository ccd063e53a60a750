// cournot: simulation, equilibrium, stability and parameter-space analysis
// of five heterogeneous duopoly adjustment models (GR, GB, GL, GA, GG) under
// isoelastic demand with quadratic or linear costs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cournot/analysis.hpp"
#include "cournot/dynamics.hpp"
#include "cournot/equilibrium.hpp"
#include "cournot/io.hpp"
#include "cournot/stability.hpp"

namespace {

using namespace cournot;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CommonFlags {
  std::string model = "gr";
  std::string cost = "quadratic";
  double c1 = 1.0;
  double c2 = 1.0;
  double k = 1.0;
  double k2 = 1.0;
  double l = 0.5;
  std::uint64_t seed = 42;
  int threads = 0;  // 0: hardware_concurrency capped by COURNOT_THREADS
};

void add_model_flags(CLI::App* cmd, CommonFlags& f, bool with_cost = true) {
  cmd->add_option("--model", f.model, "model: gr, gb, gl, ga, gg");
  if (with_cost)
    cmd->add_option("--cost", f.cost, "cost kind: quadratic or linear");
  cmd->add_option("--c1", f.c1, "cost coefficient of firm 1");
  cmd->add_option("--c2", f.c2, "cost coefficient of firm 2");
  cmd->add_option("--k", f.k, "adjustment speed of firm 1");
  cmd->add_option("--k2", f.k2, "adjustment speed of firm 2 (gg)");
  cmd->add_option("--l", f.l, "adaptive weight in (0,1) (ga)");
}

ModelSpec build_spec(const CommonFlags& f) {
  const auto model = model_from_string(f.model);
  if (!model) throw std::invalid_argument("unknown model: " + f.model);
  const auto kind = cost_kind_from_string(f.cost);
  if (!kind) throw std::invalid_argument("unknown cost kind: " + f.cost);
  ModelSpec spec;
  spec.model = *model;
  spec.cost1 = {*kind, f.c1};
  spec.cost2 = {*kind, f.c2};
  spec.K = f.k;
  spec.K2 = f.k2;
  spec.L = f.l;
  return validate(spec);
}

AxisSpec parse_axis(const std::string& text) {
  // name:min:max:n
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4)
    throw std::invalid_argument("axis must be name:min:max:n, got '" + text + "'");
  AxisSpec axis;
  axis.name = parts[0];
  axis.min = std::stod(parts[1]);
  axis.max = std::stod(parts[2]);
  const long n = std::stol(parts[3]);
  if (n < 2) throw std::invalid_argument("axis resolution must be at least 2");
  axis.resolution = static_cast<std::size_t>(n);
  return axis;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open " + path);
  return os;
}

void print_spec_fields(std::ostream& os, const ModelSpec& spec, char sep) {
  os << "model=" << to_string(spec.model) << sep
     << "cost=" << to_string(spec.cost1.kind) << sep
     << "c1=" << format_double(spec.cost1.c) << sep
     << "c2=" << format_double(spec.cost2.c) << sep
     << "k=" << format_double(spec.K);
  if (spec.model == Model::GG) os << sep << "k2=" << format_double(spec.K2);
  if (spec.model == Model::GA) os << sep << "l=" << format_double(spec.L);
}

int cmd_equilibrium(const CommonFlags& flags, bool record) {
  const ModelSpec spec = build_spec(flags);
  const EquilibriumReport eq = nash_equilibrium(spec);
  const CriterionSet cs = criteria(spec);
  const StabilityVerdict verdict = jury(jacobian(spec, eq.state));

  const char sep = record ? ' ' : '\n';
  std::ostream& os = std::cout;
  print_spec_fields(os, spec, sep);
  os << sep << "q1=" << format_double(eq.state.q1)
     << sep << "q2=" << format_double(eq.state.q2)
     << sep << "residual1=" << format_double(eq.residual1)
     << sep << "residual2=" << format_double(eq.residual2);
  for (const CriterionValue& v : cs.values)
    os << sep << v.name << "=" << format_double(v.value);
  os << sep << "crit_stable=" << (cs.stable ? 1 : 0)
     << sep << "jury1=" << format_double(verdict.jury1)
     << sep << "jury2=" << format_double(verdict.jury2)
     << sep << "jury3=" << format_double(verdict.jury3)
     << sep << "rho=" << format_double(verdict.spectral_radius)
     << sep << "class=" << to_string(verdict.cls)
     << sep << "agreement=" << to_string(agreement(spec)) << '\n';
  return 0;
}

int cmd_simulate(const CommonFlags& flags, double q1, double q2,
                 std::size_t steps, std::size_t transient,
                 const std::string& out_path) {
  const ModelSpec spec = build_spec(flags);
  State s0{q1, q2};
  if (q1 <= 0.0 || q2 <= 0.0) {
    const State eq = nash_equilibrium(spec).state;
    s0 = {0.9 * eq.q1, 0.9 * eq.q2};
  }
  const Orbit orb = orbit(spec, s0, steps, transient);
  if (!out_path.empty()) {
    auto os = open_output(out_path);
    write_orbit_csv(os, orb, transient + 1);
  }
  std::cout << "steps=" << steps << " recorded=" << orb.states.size()
            << " escaped=" << (orb.escaped ? 1 : 0);
  if (orb.escaped)
    std::cout << " escape_index=" << *orb.escape_index;
  else if (!orb.states.empty())
    std::cout << " final_q1=" << format_double(orb.states.back().q1)
              << " final_q2=" << format_double(orb.states.back().q2);
  std::cout << '\n';
  return 0;
}

SweepMode parse_mode(const std::string& mode) {
  if (mode == "criterion") return SweepMode::Criterion;
  if (mode == "numeric") return SweepMode::Numeric;
  if (mode == "both") return SweepMode::Both;
  throw std::invalid_argument("mode must be criterion, numeric or both");
}

int cmd_sweep(const CommonFlags& flags, const std::string& x_text,
              const std::string& y_text, const std::string& mode_text,
              const std::string& out_path, const std::string& pgm_path) {
  const ModelSpec spec = build_spec(flags);
  const SweepGrid grid = sweep2d(spec, parse_axis(x_text), parse_axis(y_text),
                                 parse_mode(mode_text), flags.threads);
  if (!out_path.empty()) {
    auto os = open_output(out_path);
    write_sweep_csv(os, grid);
  }
  if (!pgm_path.empty()) {
    auto os = open_output(pgm_path);
    write_sweep_pgm(os, grid);
  }
  std::size_t by_class[4] = {0, 0, 0, 0};
  for (const auto& cell : grid.cells) ++by_class[static_cast<int>(cell.cls)];
  std::cout << "cells=" << grid.cells.size()
            << " stable=" << by_class[static_cast<int>(StabilityClass::Stable)]
            << " unstable=" << by_class[static_cast<int>(StabilityClass::Unstable)]
            << " boundary=" << by_class[static_cast<int>(StabilityClass::Boundary)]
            << " infeasible=" << by_class[static_cast<int>(StabilityClass::Infeasible)]
            << " disagree=" << grid.disagree_cells.size() << '\n';
  return 0;
}

int cmd_bifurcation(const CommonFlags& flags, const std::string& param_text,
                    const std::string& coord, std::size_t transient,
                    std::size_t keep, const std::string& out_path) {
  const ModelSpec spec = build_spec(flags);
  const AxisSpec axis = parse_axis(param_text);
  BifurcationOptions opts;
  opts.transient = transient;
  opts.keep = keep;
  opts.threads = flags.threads;
  if (coord == "q1") opts.coordinate = 0;
  else if (coord == "q2") opts.coordinate = 1;
  else throw std::invalid_argument("coord must be q1 or q2");
  const BifurcationScan scan =
      bifurcation(spec, axis.name, axis.min, axis.max, axis.resolution, opts);
  if (!out_path.empty()) {
    auto os = open_output(out_path);
    write_bifurcation_csv(os, scan);
  }
  std::size_t escaped = 0;
  for (const auto& s : scan.samples)
    if (s.empty()) ++escaped;
  std::cout << "points=" << scan.param_values.size() << " escaped=" << escaped
            << '\n';
  return 0;
}

int cmd_lyapunov(const CommonFlags& flags, double q1, double q2,
                 std::size_t steps) {
  const ModelSpec spec = build_spec(flags);
  State s0{q1, q2};
  if (q1 <= 0.0 || q2 <= 0.0) {
    const State eq = nash_equilibrium(spec).state;
    s0 = {0.99 * eq.q1, 0.99 * eq.q2};
  }
  std::cout << "lambda=" << format_double(lyapunov(spec, s0, steps)) << '\n';
  return 0;
}

int cmd_verify(const CommonFlags& flags, const std::string& cost,
               std::size_t samples, const std::string& out_path) {
  const auto model = model_from_string(flags.model);
  if (!model) throw std::invalid_argument("unknown model: " + flags.model);
  std::vector<CostKind> kinds;
  if (cost.empty()) {
    kinds = {CostKind::Quadratic, CostKind::Linear};
  } else {
    const auto kind = cost_kind_from_string(cost);
    if (!kind) throw std::invalid_argument("unknown cost kind: " + cost);
    kinds = {*kind};
  }

  std::optional<std::ofstream> os;
  if (!out_path.empty()) os = open_output(out_path);

  std::size_t agree = 0, near = 0, disagree = 0;
  bool first_section = true;
  for (const CostKind kind : kinds) {
    AgreementSuiteConfig cfg;
    cfg.model = *model;
    cfg.kind = kind;
    cfg.n_samples = samples;
    cfg.seed = flags.seed;
    cfg.threads = flags.threads;
    const AgreementCounts counts = agreement_suite(cfg);
    agree += counts.agree;
    near += counts.near_boundary;
    disagree += counts.disagree;
    if (os) {
      write_agreement_csv(*os, *model, kind, counts, first_section);
      first_section = false;
    }
  }
  std::cout << "agree=" << agree << " near_boundary=" << near
            << " disagree=" << disagree << '\n';
  return disagree > 0 ? 1 : 0;
}

int run_containment(const ContainmentConfig& base, std::uint64_t seed,
                    std::size_t samples, int threads, const char* label,
                    bool claimed, std::ostream* csv, bool csv_header = true) {
  ContainmentConfig cfg = base;
  cfg.seed = seed;
  cfg.n_samples = samples;
  cfg.threads = threads;
  const ContainmentReport report = containment_probe(cfg);
  if (csv) write_containment_csv(*csv, label, report, csv_header);
  std::cout << "probe=" << label << " samples=" << report.n_samples
            << " linear_stable=" << report.n_linear_stable
            << " violations=" << report.violations.size()
            << " near_boundary=" << report.n_near_boundary;
  if (cfg.search_witness) {
    if (report.witness) {
      std::cout << " witness_c1=" << format_double(report.witness->c1)
                << " witness_c2=" << format_double(report.witness->c2)
                << " witness_k=" << format_double(report.witness->k);
      if (cfg.model == Model::GG && !cfg.tie_speeds)
        std::cout << " witness_k2=" << format_double(report.witness->k2);
      std::cout << " orbit_confirmed="
                << (report.witness_orbit_confirmed ? 1 : 0);
    } else {
      std::cout << " witness=none";
    }
  }
  if (claimed)
    std::cout << " claim=" << (report.violations.empty() ? "held" : "violated");
  std::cout << '\n';
  return claimed && !report.violations.empty() ? 1 : 0;
}

int cmd_containment(const CommonFlags& flags, std::size_t samples,
                    const std::string& out_path) {
  const auto model = model_from_string(flags.model);
  if (!model) throw std::invalid_argument("unknown model: " + flags.model);

  std::optional<std::ofstream> os;
  if (!out_path.empty()) os = open_output(out_path);
  std::ostream* csv = os ? &*os : nullptr;

  switch (*model) {
    case Model::GR:
      return run_containment(gr_containment_config(), flags.seed, samples,
                             flags.threads, "gr_c1gt4_or_c2gt3", true, csv);
    case Model::GB:
      return run_containment(gb_containment_config(), flags.seed, samples,
                             flags.threads, "gb_c1gt13_or_c2gt7", true, csv);
    case Model::GA:
      // informational probe; no containment claim is asserted for GA
      run_containment(ga_containment_config(), flags.seed, samples,
                      flags.threads, "ga_full_box", false, csv);
      return 0;
    case Model::GL:
      return run_containment(gl_witness_config(), flags.seed, samples,
                             flags.threads, "gl_witness", false, csv);
    case Model::GG: {
      const int tied =
          run_containment(gg_tied_containment_config(), flags.seed, samples,
                          flags.threads, "gg_tied_speeds", true, csv);
      run_containment(gg_free_witness_config(), flags.seed, samples,
                      flags.threads, "gg_free_witness", false, csv,
                      /*csv_header=*/csv == nullptr);
      return tied;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cournot duopoly dynamics: five heterogeneous adjustment models"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* eq = app.add_subcommand("equilibrium",
                                "closed-form Nash equilibrium and verdicts");
  add_model_flags(eq, flags);
  bool record = false;
  eq->add_flag("--record", record, "single-line machine-readable output");

  auto* sim = app.add_subcommand("simulate", "iterate the map, write t,q1,q2");
  add_model_flags(sim, flags);
  double q1 = 0.0, q2 = 0.0;
  std::size_t steps = 5000, transient = 0;
  std::string out, pgm;
  sim->add_option("--q1", q1, "initial q1 (default 0.9 * equilibrium)");
  sim->add_option("--q2", q2, "initial q2 (default 0.9 * equilibrium)");
  sim->add_option("--steps", steps, "number of iterations");
  sim->add_option("--transient", transient, "steps to drop before recording");
  sim->add_option("-o,--output", out, "CSV output path");

  auto* sweep = app.add_subcommand("sweep", "2-D stability sweep");
  add_model_flags(sweep, flags);
  std::string x_axis, y_axis, mode = "criterion";
  sweep->add_option("--x", x_axis, "x axis as name:min:max:n")->required();
  sweep->add_option("--y", y_axis, "y axis as name:min:max:n")->required();
  sweep->add_option("--mode", mode, "criterion, numeric or both");
  sweep->add_option("-o,--output", out, "CSV output path");
  sweep->add_option("--pgm", pgm, "PGM raster output path");
  sweep->add_option("--threads", flags.threads, "worker threads");

  auto* bif = app.add_subcommand("bifurcation", "orbit samples along a parameter");
  add_model_flags(bif, flags);
  std::string param, coord = "q1";
  std::size_t keep = 100;
  std::size_t bif_transient = 1000;
  bif->add_option("--param", param, "parameter as name:min:max:n")->required();
  bif->add_option("--coord", coord, "recorded coordinate: q1 or q2");
  bif->add_option("--transient", bif_transient, "steps dropped per parameter");
  bif->add_option("--keep", keep, "post-transient samples kept per parameter");
  bif->add_option("-o,--output", out, "CSV output path");
  bif->add_option("--threads", flags.threads, "worker threads");

  auto* lyap = app.add_subcommand("lyapunov", "largest Lyapunov exponent");
  add_model_flags(lyap, flags);
  lyap->add_option("--q1", q1, "initial q1 (default 0.99 * equilibrium)");
  lyap->add_option("--q2", q2, "initial q2 (default 0.99 * equilibrium)");
  lyap->add_option("--steps", steps, "number of iterations");

  auto* verify = app.add_subcommand(
      "verify", "criterion vs numeric agreement over random specs");
  std::string verify_cost;
  std::size_t samples = 10000;
  verify->add_option("--model", flags.model, "model: gr, gb, gl, ga, gg");
  verify->add_option("--cost", verify_cost,
                     "cost kind (default: both kinds, --samples each)");
  verify->add_option("--samples", samples, "samples per cost kind");
  verify->add_option("--seed", flags.seed, "sampling seed");
  verify->add_option("--threads", flags.threads, "worker threads");
  verify->add_option("-o,--output", out, "CSV of non-agreeing samples");

  auto* contain = app.add_subcommand(
      "containment", "linear-vs-quadratic stable region containment probes");
  std::size_t probe_samples = 100000;
  contain->add_option("--model", flags.model, "model: gr, gb, gl, ga, gg");
  contain->add_option("--samples", probe_samples, "parameter samples");
  contain->add_option("--seed", flags.seed, "sampling seed");
  contain->add_option("--threads", flags.threads, "worker threads");
  contain->add_option("-o,--output", out, "CSV of violations/witnesses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (eq->parsed()) return cmd_equilibrium(flags, record);
    if (sim->parsed()) return cmd_simulate(flags, q1, q2, steps, transient, out);
    if (sweep->parsed()) return cmd_sweep(flags, x_axis, y_axis, mode, out, pgm);
    if (bif->parsed())
      return cmd_bifurcation(flags, param, coord, bif_transient, keep, out);
    if (lyap->parsed()) return cmd_lyapunov(flags, q1, q2, steps);
    if (verify->parsed()) return cmd_verify(flags, verify_cost, samples, out);
    if (contain->parsed()) return cmd_containment(flags, probe_samples, out);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
