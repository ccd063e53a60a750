#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "cournot/dynamics.hpp"
#include "cournot/equilibrium.hpp"
#include "cournot/rng.hpp"
#include "cournot/stability.hpp"

using namespace cournot;

namespace {

ModelSpec make(Model m, CostKind kind, double c1, double c2, double k,
               double k2 = 1.0, double l = 0.5) {
  ModelSpec s;
  s.model = m;
  s.cost1 = {kind, c1};
  s.cost2 = {kind, c2};
  s.K = k;
  s.K2 = k2;
  s.L = l;
  return s;
}

constexpr Model kAll[] = {Model::GR, Model::GB, Model::GL, Model::GA, Model::GG};

ModelSpec random_spec(Model m, CostKind kind, SplitMix64& rng) {
  ModelSpec s = make(m, kind, rng.log_uniform(0.05, 20.0),
                     rng.log_uniform(0.05, 20.0), rng.log_uniform(0.01, 5.0),
                     rng.log_uniform(0.01, 5.0));
  do {
    s.L = rng.uniform01();
  } while (!(s.L > 0.0 && s.L < 1.0));
  return s;
}

// The linear-cost reaction and LMA response clamp at zero output; the map is
// smooth on either side of the clamp but not across it. Finite differences
// need every evaluation point on the interior branch.
bool fd_interior(const ModelSpec& spec, const State& s, double h1, double h2) {
  if (spec.cost2.kind != CostKind::Linear) return true;
  const Model m = spec.model;
  if (m == Model::GR || m == Model::GB || m == Model::GA) {
    auto slack = [&](double q1) { return std::sqrt(q1 / spec.cost2.c) - q1; };
    return std::min({slack(s.q1 - h1), slack(s.q1), slack(s.q1 + h1)}) > 1e-9;
  }
  if (m == Model::GL) {
    auto slack = [&](double q1, double q2) {
      const double total = q1 + q2;
      return 2.0 * q2 + q1 - spec.cost2.c * total * total;
    };
    return std::min({slack(s.q1, s.q2), slack(s.q1 - h1, s.q2),
                     slack(s.q1 + h1, s.q2), slack(s.q1, s.q2 - h2),
                     slack(s.q1, s.q2 + h2)}) > 1e-9;
  }
  return true;  // GG has no clamped branch
}

// Draws (spec, state) pairs with the state near the equilibrium and every
// finite-difference evaluation point on a smooth branch. Specs whose
// equilibrium hugs a clamp are redrawn.
struct Draw {
  ModelSpec spec;
  State state;
};

// Steps proportional to the coordinate keep the truncation error of the
// central difference scale free (the maps are built from homogeneous terms,
// so q^2 f'''/f' stays O(1)).
double fd_step(double q) { return 1e-4 * q; }

Draw smooth_draw(Model m, CostKind kind, SplitMix64& rng) {
  for (;;) {
    const ModelSpec spec = random_spec(m, kind, rng);
    const State eq = nash_equilibrium(spec).state;
    for (int tries = 0; tries < 16; ++tries) {
      const State s{eq.q1 * rng.uniform(0.7, 1.3), eq.q2 * rng.uniform(0.7, 1.3)};
      if (fd_interior(spec, s, fd_step(s.q1), fd_step(s.q2))) return {spec, s};
    }
  }
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

TEST_CASE("jacobian matches central finite differences of step") {
  SplitMix64 rng(42);
  for (const Model m : kAll) {
    for (const CostKind kind : {CostKind::Quadratic, CostKind::Linear}) {
      for (int i = 0; i < 1000; ++i) {
        const Draw draw = smooth_draw(m, kind, rng);
        const ModelSpec& spec = draw.spec;
        const State& s = draw.state;
        const Jacobian2 J = jacobian(spec, s);

        const double h1 = fd_step(s.q1);
        const double h2 = fd_step(s.q2);
        try {
          if (m == Model::GR) {
            // GR is governed by its 1-D reduction
            const double fd = (gr_reduced_step(spec, s.q1 + h1) -
                               gr_reduced_step(spec, s.q1 - h1)) /
                              (2.0 * h1);
            CHECK(rel_err(J.a11, fd) <= 1e-5);
            CHECK(J.a12 == 0.0);
            CHECK(J.a21 == 0.0);
            CHECK(J.a22 == 0.0);
            continue;
          }
          const State xp = step(spec, {s.q1 + h1, s.q2});
          const State xm = step(spec, {s.q1 - h1, s.q2});
          const State yp = step(spec, {s.q1, s.q2 + h2});
          const State ym = step(spec, {s.q1, s.q2 - h2});
          CHECK(rel_err(J.a11, (xp.q1 - xm.q1) / (2.0 * h1)) <= 1e-5);
          CHECK(rel_err(J.a12, (yp.q1 - ym.q1) / (2.0 * h2)) <= 1e-5);
          CHECK(rel_err(J.a21, (xp.q2 - xm.q2) / (2.0 * h1)) <= 1e-5);
          CHECK(rel_err(J.a22, (yp.q2 - ym.q2) / (2.0 * h2)) <= 1e-5);
        } catch (const EscapeError&) {
          --i;  // one step already leaves the domain here; not differentiable
        }
      }
    }
  }
}

TEST_CASE("GB Jacobian has a zero bottom-right entry") {
  SplitMix64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const CostKind kind = rng.next() & 1 ? CostKind::Quadratic : CostKind::Linear;
    const Draw draw = smooth_draw(Model::GB, kind, rng);
    CHECK(jacobian(draw.spec, draw.state).a22 == 0.0);
  }
}

TEST_CASE("GG Jacobian is diagonal at a symmetric equilibrium") {
  const ModelSpec spec = make(Model::GG, CostKind::Quadratic, 1.0, 1.0, 1.0, 1.0);
  const Jacobian2 J = jacobian(spec, nash_equilibrium(spec).state);
  CHECK(J.a12 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(J.a21 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(J.a11 == doctest::Approx(J.a22).epsilon(1e-14));
}

TEST_CASE("jacobian requires a strictly positive state") {
  const ModelSpec spec = make(Model::GB, CostKind::Quadratic, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(jacobian(spec, {0.0, 1.0}), std::domain_error);
}

TEST_CASE("jury classification") {
  // zero matrix: all three conditions maximally positive
  const StabilityVerdict zero = jury(Jacobian2{0, 0, 0, 0});
  CHECK(zero.cls == StabilityClass::Stable);
  CHECK(zero.jury1 == 1.0);
  CHECK(zero.jury2 == 1.0);
  CHECK(zero.jury3 == 1.0);
  CHECK(zero.spectral_radius == 0.0);

  // Tr=2.5, Det=1: second condition fails
  const StabilityVerdict unstable = jury(Jacobian2{2.0, 0.0, 0.0, 0.5});
  CHECK(unstable.jury2 == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(unstable.cls == StabilityClass::Unstable);

  // Det=1, Tr=0: third condition sits on the Neimark-Sacker boundary
  const StabilityVerdict boundary = jury(Jacobian2{0.0, 1.0, -1.0, 0.0});
  CHECK(boundary.jury3 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(boundary.cls == StabilityClass::Boundary);
  CHECK(boundary.spectral_radius == doctest::Approx(1.0).epsilon(1e-14));

  const StabilityVerdict bad =
      jury(Jacobian2{std::numeric_limits<double>::quiet_NaN(), 0, 0, 0});
  CHECK(bad.cls == StabilityClass::Infeasible);
}

TEST_CASE("criterion fingerprints at the probe point") {
  // Stored values computed by an independent transcription of the same
  // polynomials evaluated in exact rational arithmetic at
  // (c1,c2,K,K2,L) = (2,3,1/2,1/3,1/4).
  const double c1 = 2.0, c2 = 3.0, k = 0.5, k2 = 1.0 / 3.0, l = 0.25;
  auto value = [&](Criterion id) {
    return criterion_value(id, c1, c2, k, k2, l).value;
  };
  CHECK(value(Criterion::R_GR1) == doctest::Approx(-417.0).epsilon(1e-14));
  CHECK(value(Criterion::R_GR2) == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(value(Criterion::R_GB1) == doctest::Approx(-586947.0).epsilon(1e-12));
  CHECK(value(Criterion::R_GB2) == doctest::Approx(8.5).epsilon(1e-14));
  CHECK(value(Criterion::R_GB3) == doctest::Approx(-9.5).epsilon(1e-14));
  CHECK(value(Criterion::R_GL1) == doctest::Approx(-166843.0).epsilon(1e-12));
  CHECK(value(Criterion::R_GL2) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(value(Criterion::R_GL3) == doctest::Approx(-11.5).epsilon(1e-14));
  CHECK(value(Criterion::R_GA1) ==
        doctest::Approx(-1739975.00390625).epsilon(1e-12));
  CHECK(value(Criterion::R_GA2) == doctest::Approx(-11.375).epsilon(1e-14));
  CHECK(value(Criterion::R_GA3) == doctest::Approx(14.125).epsilon(1e-14));
  CHECK(value(Criterion::R_GG1) ==
        doctest::Approx(19099.0 / 12.0).epsilon(1e-13));
  CHECK(value(Criterion::R_GG2) == doctest::Approx(-6134.5).epsilon(1e-12));
  CHECK(value(Criterion::R_GG3) == doctest::Approx(-5.0 / 6.0).epsilon(1e-14));
  CHECK(value(Criterion::R_GG4) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("criteria worked examples") {
  auto crit = [](const ModelSpec& s) { return criteria(s); };

  const CriterionSet gr_stable =
      crit(make(Model::GR, CostKind::Quadratic, 1.0, 1.0, 1.0));
  CHECK(gr_stable.values.size() == 1);
  CHECK(gr_stable.values[0].value == doctest::Approx(-96.0).epsilon(1e-14));
  CHECK(gr_stable.stable);

  const CriterionSet gr_unstable =
      crit(make(Model::GR, CostKind::Quadratic, 1.0, 1.0, 2.0));
  CHECK(gr_unstable.values[0].value == doctest::Approx(576.0).epsilon(1e-14));
  CHECK(!gr_unstable.stable);

  const CriterionSet gr_lin = crit(make(Model::GR, CostKind::Linear, 1.0, 1.0, 1.0));
  CHECK(gr_lin.values[0].value == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(gr_lin.stable);

  // GG linear at c1=c2=1, K1=K2=1: R_GG3 = -2 as displayed, and the point is
  // numerically stable (the Jacobian vanishes), which fixes the sign
  // conditions to R_GG3 < 0 and R_GG4 > 0.
  const CriterionSet gg_lin =
      crit(make(Model::GG, CostKind::Linear, 1.0, 1.0, 1.0, 1.0));
  CHECK(gg_lin.values[0].value == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(gg_lin.values[1].value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gg_lin.stable);
  const ModelSpec gg_spec = make(Model::GG, CostKind::Linear, 1.0, 1.0, 1.0, 1.0);
  const StabilityVerdict gg_numeric =
      jury(jacobian(gg_spec, nash_equilibrium(gg_spec).state));
  CHECK(gg_numeric.cls == StabilityClass::Stable);
  CHECK(gg_numeric.spectral_radius == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(
      criteria(ModelSpec{Model::GR, 1.0, 1.0, 0.5,
                         CostSide{CostKind::Quadratic, 1.0},
                         CostSide{CostKind::Linear, 1.0}, false}),
      std::invalid_argument);
}

TEST_CASE("R_GA1 collapses onto R_GB1 at L = 1") {
  SplitMix64 rng(77);
  for (int i = 0; i < 1000; ++i) {
    const double c1 = rng.log_uniform(0.05, 20.0);
    const double c2 = rng.log_uniform(0.05, 20.0);
    const double k = rng.log_uniform(0.01, 5.0);
    const auto ga = criterion_value(Criterion::R_GA1, c1, c2, k, 0.0, 1.0);
    const auto gb = criterion_value(Criterion::R_GB1, c1, c2, k, 0.0, 0.0);
    CHECK(std::abs(ga.value - gb.value) <= 1e-12 * ga.scale);
  }
}

TEST_CASE("GG criteria are invariant under relabeling") {
  SplitMix64 rng(78);
  for (int i = 0; i < 1000; ++i) {
    const double c1 = rng.log_uniform(0.05, 20.0);
    const double c2 = rng.log_uniform(0.05, 20.0);
    const double k1 = rng.log_uniform(0.01, 5.0);
    const double k2 = rng.log_uniform(0.01, 5.0);
    for (const Criterion id : {Criterion::R_GG1, Criterion::R_GG2}) {
      const auto ab = criterion_value(id, c1, c2, k1, k2, 0.0);
      const auto ba = criterion_value(id, c2, c1, k2, k1, 0.0);
      CHECK(std::abs(ab.value - ba.value) <= 1e-12 * ab.scale);
    }
  }
}

TEST_CASE("border polynomial factors") {
  const GrBorderFactors at_diag = border_poly_gr(1.0, 1.0, 1.0);
  CHECK(at_diag.c1_minus_c2 == 0.0);  // equal costs sit on the border variety

  // 64 * quartic factor reproduces R_GR1
  SplitMix64 rng(79);
  for (int i = 0; i < 100; ++i) {
    const double c1 = rng.log_uniform(0.05, 20.0);
    const double c2 = rng.log_uniform(0.05, 20.0);
    const double k = rng.log_uniform(0.01, 5.0);
    const auto r = criterion_value(Criterion::R_GR1, c1, c2, k, 0.0, 0.0);
    const double quartic = border_poly_gr(c1, c2, k).quartic;
    CHECK(std::abs(64.0 * quartic - r.value) <= 1e-12 * r.scale);
  }

  // none of the factors vanishes at the five sample points (c1, c2, K)
  const double samples[5][3] = {
      {1.0, 0.5, 2.0}, {1.0, 2.0, 1.0}, {1.0, 2.0, 2.0},
      {1.0, 10.0, 1.0}, {1.0, 10.0, 2.0}};
  for (const auto& p : samples) {
    const GrBorderFactors f = border_poly_gr(p[0], p[1], p[2]);
    CHECK(std::abs(f.c1) > 1e-9);
    CHECK(std::abs(f.c2) > 1e-9);
    CHECK(std::abs(f.k) > 1e-9);
    CHECK(std::abs(f.c1_minus_c2) > 1e-9);
    CHECK(std::abs(f.c1_plus_c2) > 1e-9);
    CHECK(std::abs(f.c1_minus_c2_ninth) > 1e-9);
    CHECK(std::abs(f.quartic) > 1e-9);
  }
}

TEST_CASE("agreement worked examples") {
  CHECK(agreement(make(Model::GR, CostKind::Quadratic, 1.0, 1.0, 1.0)) ==
        AgreementResult::Agree);
  // R_GR1(1,1,K) has its root exactly at K = sqrt(2)
  CHECK(agreement(make(Model::GR, CostKind::Quadratic, 1.0, 1.0, std::sqrt(2.0))) ==
        AgreementResult::NearBoundary);
  for (const auto& p : {std::pair{0.5, 2.0}, {2.0, 1.0}, {2.0, 2.0},
                        {10.0, 1.0}, {10.0, 2.0}})
    CHECK(agreement(make(Model::GB, CostKind::Quadratic, 1.0, p.first, p.second)) ==
          AgreementResult::Agree);
}

TEST_CASE("spectral radius boundary matches the analytic root") {
  // bisection on rho(K) = 1 along c1 = c2 = 1, quadratic costs
  auto rho = [](double k) {
    const ModelSpec spec = make(Model::GR, CostKind::Quadratic, 1.0, 1.0, k);
    return spectral_radius(jacobian(spec, nash_equilibrium(spec).state));
  };
  double lo = 1.0, hi = 2.0;
  REQUIRE(rho(lo) < 1.0);
  REQUIRE(rho(hi) > 1.0);
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (rho(mid) < 1.0 ? lo : hi) = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}
