#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "cournot/stability.hpp"

namespace cournot {

namespace {

// One term coeff * c1^e1 * c2^e2 * K^ek * K2^ek2 * L^el. Every criterion
// polynomial lives in exactly one table below, kept in display order so a
// table can be proofread term by term. The tables are guarded by stored
// fingerprints at the probe point (c1,c2,K,K2,L) = (2,3,1/2,1/3,1/4) in the
// stability tests and by the random-sample agreement suite.
struct Monomial {
  double coeff;
  int c1, c2, k, k2, l;
};

// Model GR, quadratic costs: stable iff R_GR1 < 0.
constexpr Monomial kRGr1[] = {
    {64, 3, 1, 4, 0, 0},
    {-96, 2, 1, 2, 0, 0},
    {-81, 2, 0, 0, 0, 0},
    {18, 1, 1, 0, 0, 0},
    {-1, 0, 2, 0, 0, 0},
};

// Model GR, linear costs: stable iff R_GR2 < 0.
constexpr Monomial kRGr2[] = {
    {1, 1, 0, 1, 0, 0},
    {1, 0, 1, 1, 0, 0},
    {-4, 0, 0, 0, 0, 0},
};

// Model GB, quadratic costs: stable iff R_GB1 < 0.
constexpr Monomial kRGb1[] = {
    {4, 7, 1, 4, 0, 0},
    {-272, 6, 2, 4, 0, 0},
    {4632, 5, 3, 4, 0, 0},
    {-272, 4, 4, 4, 0, 0},
    {4, 3, 5, 4, 0, 0},
    {264, 6, 1, 2, 0, 0},
    {-2464, 5, 2, 2, 0, 0},
    {-6096, 4, 3, 2, 0, 0},
    {96, 3, 4, 2, 0, 0},
    {8, 2, 5, 2, 0, 0},
    {-81, 6, 0, 0, 0, 0},
    {342, 5, 1, 0, 0, 0},
    {-559, 4, 2, 0, 0, 0},
    {436, 3, 3, 0, 0, 0},
    {-159, 2, 4, 0, 0, 0},
    {22, 1, 5, 0, 0, 0},
    {-1, 0, 6, 0, 0, 0},
};

// Model GB, linear costs: stable iff R_GB2 > 0 and R_GB3 < 0.
constexpr Monomial kRGb2[] = {
    {1, 2, 0, 1, 0, 0},
    {-6, 1, 1, 1, 0, 0},
    {1, 0, 2, 1, 0, 0},
    {4, 1, 0, 0, 0, 0},
    {4, 0, 1, 0, 0, 0},
};

constexpr Monomial kRGb3[] = {
    {1, 2, 0, 1, 0, 0},
    {-2, 1, 1, 1, 0, 0},
    {1, 0, 2, 1, 0, 0},
    {-2, 1, 0, 0, 0, 0},
    {-2, 0, 1, 0, 0, 0},
};

// Model GL, quadratic costs: stable iff R_GL1 < 0.
constexpr Monomial kRGl1[] = {
    {64, 7, 1, 4, 0, 0},
    {-672, 6, 2, 4, 0, 0},
    {1796, 5, 3, 4, 0, 0},
    {-168, 4, 4, 4, 0, 0},
    {4, 3, 5, 4, 0, 0},
    {384, 6, 1, 2, 0, 0},
    {-400, 5, 2, 2, 0, 0},
    {-2136, 4, 3, 2, 0, 0},
    {96, 3, 4, 2, 0, 0},
    {8, 2, 5, 2, 0, 0},
    {-256, 6, 0, 0, 0, 0},
    {544, 5, 1, 0, 0, 0},
    {-353, 4, 2, 0, 0, 0},
    {100, 3, 3, 0, 0, 0},
    {-38, 2, 4, 0, 0, 0},
    {4, 1, 5, 0, 0, 0},
    {-1, 0, 6, 0, 0, 0},
};

// Model GL, linear costs: stable iff R_GL2 > 0 and R_GL3 < 0.
constexpr Monomial kRGl2[] = {
    {3, 1, 0, 1, 0, 0},
    {-1, 0, 1, 1, 0, 0},
    {2, 0, 0, 0, 0, 0},
};

constexpr Monomial kRGl3[] = {
    {7, 1, 1, 1, 0, 0},
    {-1, 0, 2, 1, 0, 0},
    {-8, 1, 0, 0, 0, 0},
    {-4, 0, 1, 0, 0, 0},
};

// Model GA, quadratic costs: stable iff R_GA1 < 0. At L = 1 this table
// collapses term-for-term onto R_GB1, which the tests verify.
constexpr Monomial kRGa1[] = {
    {64, 7, 1, 4, 0, 4},
    {-256, 6, 2, 4, 0, 4},
    {384, 5, 3, 4, 0, 4},
    {-256, 4, 4, 4, 0, 4},
    {64, 3, 5, 4, 0, 4},
    {-384, 7, 1, 4, 0, 3},
    {2560, 6, 2, 4, 0, 3},
    {-4352, 5, 3, 4, 0, 3},
    {2560, 4, 4, 4, 0, 3},
    {-384, 3, 5, 4, 0, 3},
    {864, 7, 1, 4, 0, 2},
    {-8576, 6, 2, 4, 0, 2},
    {19520, 5, 3, 4, 0, 2},
    {-8576, 4, 4, 4, 0, 2},
    {864, 3, 5, 4, 0, 2},
    {-864, 7, 1, 4, 0, 1},
    {11904, 6, 2, 4, 0, 1},
    {-96, 6, 1, 2, 0, 4},
    {-38464, 5, 3, 4, 0, 1},
    {384, 5, 2, 2, 0, 4},
    {11904, 4, 4, 4, 0, 1},
    {-576, 4, 3, 2, 0, 4},
    {-864, 3, 5, 4, 0, 1},
    {384, 3, 4, 2, 0, 4},
    {-96, 2, 5, 2, 0, 4},
    {324, 7, 1, 4, 0, 0},
    {-5904, 6, 2, 4, 0, 0},
    {96, 6, 1, 2, 0, 3},
    {27544, 5, 3, 4, 0, 0},
    {-2944, 5, 2, 2, 0, 3},
    {-5904, 4, 4, 4, 0, 0},
    {6208, 4, 3, 2, 0, 3},
    {324, 3, 5, 4, 0, 0},
    {-3968, 3, 4, 2, 0, 3},
    {608, 2, 5, 2, 0, 3},
    {1416, 6, 1, 2, 0, 2},
    {5728, 5, 2, 2, 0, 2},
    {-27344, 4, 3, 2, 0, 2},
    {13408, 3, 4, 2, 0, 2},
    {-1400, 2, 5, 2, 0, 2},
    {-3744, 6, 1, 2, 0, 1},
    {-81, 6, 0, 0, 0, 4},
    {128, 5, 2, 2, 0, 1},
    {342, 5, 1, 0, 0, 4},
    {53312, 4, 3, 2, 0, 1},
    {-559, 4, 2, 0, 0, 4},
    {-18304, 3, 4, 2, 0, 1},
    {436, 3, 3, 0, 0, 4},
    {1376, 2, 5, 2, 0, 1},
    {-159, 2, 4, 0, 0, 4},
    {22, 1, 5, 0, 0, 4},
    {-1, 0, 6, 0, 0, 4},
    {2592, 6, 1, 2, 0, 0},
    {648, 6, 0, 0, 0, 3},
    {-5760, 5, 2, 2, 0, 0},
    {-2736, 5, 1, 0, 0, 3},
    {-37696, 4, 3, 2, 0, 0},
    {4472, 4, 2, 0, 0, 3},
    {8576, 3, 4, 2, 0, 0},
    {-3488, 3, 3, 0, 0, 3},
    {-480, 2, 5, 2, 0, 0},
    {1272, 2, 4, 0, 0, 3},
    {-176, 1, 5, 0, 0, 3},
    {8, 0, 6, 0, 0, 3},
    {-1944, 6, 0, 0, 0, 2},
    {8208, 5, 1, 0, 0, 2},
    {-13416, 4, 2, 0, 0, 2},
    {10464, 3, 3, 0, 0, 2},
    {-3816, 2, 4, 0, 0, 2},
    {528, 1, 5, 0, 0, 2},
    {-24, 0, 6, 0, 0, 2},
    {2592, 6, 0, 0, 0, 1},
    {-10944, 5, 1, 0, 0, 1},
    {17888, 4, 2, 0, 0, 1},
    {-13952, 3, 3, 0, 0, 1},
    {5088, 2, 4, 0, 0, 1},
    {-704, 1, 5, 0, 0, 1},
    {32, 0, 6, 0, 0, 1},
    {-1296, 6, 0, 0, 0, 0},
    {5472, 5, 1, 0, 0, 0},
    {-8944, 4, 2, 0, 0, 0},
    {6976, 3, 3, 0, 0, 0},
    {-2544, 2, 4, 0, 0, 0},
    {352, 1, 5, 0, 0, 0},
    {-16, 0, 6, 0, 0, 0},
};

// Model GA, linear costs: stable iff R_GA2 < 0 and R_GA3 > 0. These sign
// conditions are the numerically verified ones: 2*(c1+c2)*jury3 == -R_GA2
// and 2*(c1+c2)*jury1 == R_GA3 at the linear equilibrium.
constexpr Monomial kRGa2[] = {
    {1, 2, 0, 1, 0, 1},
    {2, 1, 1, 1, 0, 1},
    {1, 0, 2, 1, 0, 1},
    {-4, 1, 1, 1, 0, 0},
    {-2, 1, 0, 0, 0, 1},
    {-2, 0, 1, 0, 0, 1},
};

constexpr Monomial kRGa3[] = {
    {1, 2, 0, 1, 0, 1},
    {2, 1, 1, 1, 0, 1},
    {1, 0, 2, 1, 0, 1},
    {-8, 1, 1, 1, 0, 0},
    {-4, 1, 0, 0, 0, 1},
    {-4, 0, 1, 0, 0, 1},
    {8, 1, 0, 0, 0, 0},
    {8, 0, 1, 0, 0, 0},
};

// Model GG, quadratic costs: stable iff R_GG1 > 0 and R_GG2 < 0. K plays
// the role of K1.
constexpr Monomial kRGg1[] = {
    {-1024, 3, 3, 4, 4, 0},
    {384, 3, 2, 4, 2, 0},
    {384, 3, 2, 3, 3, 0},
    {384, 2, 3, 3, 3, 0},
    {384, 2, 3, 2, 4, 0},
    {1, 4, 0, 4, 0, 0},
    {-18, 3, 1, 4, 0, 0},
    {-32, 3, 1, 3, 1, 0},
    {-18, 3, 1, 2, 2, 0},
    {81, 2, 2, 4, 0, 0},
    {288, 2, 2, 3, 1, 0},
    {420, 2, 2, 2, 2, 0},
    {288, 2, 2, 1, 3, 0},
    {81, 2, 2, 0, 4, 0},
    {-18, 1, 3, 2, 2, 0},
    {-32, 1, 3, 1, 3, 0},
    {-18, 1, 3, 0, 4, 0},
    {1, 0, 4, 0, 4, 0},
};

constexpr Monomial kRGg2[] = {
    {-64, 4, 4, 4, 4, 0},
    {96, 4, 3, 4, 2, 0},
    {-32, 4, 3, 3, 3, 0},
    {-32, 3, 4, 3, 3, 0},
    {96, 3, 4, 2, 4, 0},
    {1, 5, 1, 4, 0, 0},
    {-18, 4, 2, 4, 0, 0},
    {32, 4, 2, 3, 1, 0},
    {-18, 4, 2, 2, 2, 0},
    {81, 3, 3, 4, 0, 0},
    {96, 3, 3, 3, 1, 0},
    {-92, 3, 3, 2, 2, 0},
    {96, 3, 3, 1, 3, 0},
    {81, 3, 3, 0, 4, 0},
    {-18, 2, 4, 2, 2, 0},
    {32, 2, 4, 1, 3, 0},
    {-18, 2, 4, 0, 4, 0},
    {1, 1, 5, 0, 4, 0},
    {8, 4, 1, 2, 0, 0},
    {-8, 4, 1, 1, 1, 0},
    {-16, 3, 2, 2, 0, 0},
    {-120, 3, 2, 1, 1, 0},
    {-120, 3, 2, 0, 2, 0},
    {-120, 2, 3, 2, 0, 0},
    {-120, 2, 3, 1, 1, 0},
    {-16, 2, 3, 0, 2, 0},
    {-8, 1, 4, 1, 1, 0},
    {8, 1, 4, 0, 2, 0},
    {-4, 4, 0, 0, 0, 0},
    {16, 3, 1, 0, 0, 0},
    {-24, 2, 2, 0, 0, 0},
    {16, 1, 3, 0, 0, 0},
    {-4, 0, 4, 0, 0, 0},
};

// Model GG, linear costs: stable iff R_GG3 < 0 and R_GG4 > 0. As with GA,
// these are the sign conditions the Jury test reproduces:
// (c1+c2)*jury1 == R_GG4 and jury3 == -(c1*c2/(c1+c2))*R_GG3.
constexpr Monomial kRGg3[] = {
    {1, 1, 0, 1, 1, 0},
    {1, 0, 1, 1, 1, 0},
    {-2, 0, 0, 1, 0, 0},
    {-2, 0, 0, 0, 1, 0},
};

constexpr Monomial kRGg4[] = {
    {1, 2, 1, 1, 1, 0},
    {1, 1, 2, 1, 1, 0},
    {-4, 1, 1, 1, 0, 0},
    {-4, 1, 1, 0, 1, 0},
    {4, 1, 0, 0, 0, 0},
    {4, 0, 1, 0, 0, 0},
};

// Quartic factor of the squarefree GR border polynomial; 64 * this table
// reproduces kRGr1 (transcribed independently, checked by identity tests).
constexpr Monomial kGrBorderQuartic[] = {
    {1, 3, 1, 4, 0, 0},
    {-3.0 / 2.0, 2, 1, 2, 0, 0},
    {-81.0 / 64.0, 2, 0, 0, 0, 0},
    {9.0 / 32.0, 1, 1, 0, 0, 0},
    {-1.0 / 64.0, 0, 2, 0, 0, 0},
};

double ipow(double x, int e) {
  double r = 1.0;
  while (e-- > 0) r *= x;
  return r;
}

CriterionEvaluation eval_table(std::span<const Monomial> table, double c1,
                               double c2, double k, double k2, double l) {
  CriterionEvaluation out;
  for (const Monomial& m : table) {
    const double term = m.coeff * ipow(c1, m.c1) * ipow(c2, m.c2) *
                        ipow(k, m.k) * ipow(k2, m.k2) * ipow(l, m.l);
    out.value += term;
    out.scale += std::abs(term);
  }
  return out;
}

std::span<const Monomial> table_for(Criterion id) {
  switch (id) {
    case Criterion::R_GR1: return kRGr1;
    case Criterion::R_GR2: return kRGr2;
    case Criterion::R_GB1: return kRGb1;
    case Criterion::R_GB2: return kRGb2;
    case Criterion::R_GB3: return kRGb3;
    case Criterion::R_GL1: return kRGl1;
    case Criterion::R_GL2: return kRGl2;
    case Criterion::R_GL3: return kRGl3;
    case Criterion::R_GA1: return kRGa1;
    case Criterion::R_GA2: return kRGa2;
    case Criterion::R_GA3: return kRGa3;
    case Criterion::R_GG1: return kRGg1;
    case Criterion::R_GG2: return kRGg2;
    case Criterion::R_GG3: return kRGg3;
    case Criterion::R_GG4: return kRGg4;
  }
  throw std::invalid_argument("unknown criterion");
}

enum class Sign { Negative, Positive };

struct Condition {
  Criterion id;
  Sign stable_sign;  // criterion value must have this sign for stability
};

// Applicable conditions per (model, cost kind).
std::span<const Condition> conditions_for(Model model, CostKind kind) {
  static constexpr Condition gr_q[] = {{Criterion::R_GR1, Sign::Negative}};
  static constexpr Condition gr_l[] = {{Criterion::R_GR2, Sign::Negative}};
  static constexpr Condition gb_q[] = {{Criterion::R_GB1, Sign::Negative}};
  static constexpr Condition gb_l[] = {{Criterion::R_GB2, Sign::Positive},
                                       {Criterion::R_GB3, Sign::Negative}};
  static constexpr Condition gl_q[] = {{Criterion::R_GL1, Sign::Negative}};
  static constexpr Condition gl_l[] = {{Criterion::R_GL2, Sign::Positive},
                                       {Criterion::R_GL3, Sign::Negative}};
  static constexpr Condition ga_q[] = {{Criterion::R_GA1, Sign::Negative}};
  static constexpr Condition ga_l[] = {{Criterion::R_GA2, Sign::Negative},
                                       {Criterion::R_GA3, Sign::Positive}};
  static constexpr Condition gg_q[] = {{Criterion::R_GG1, Sign::Positive},
                                       {Criterion::R_GG2, Sign::Negative}};
  static constexpr Condition gg_l[] = {{Criterion::R_GG3, Sign::Negative},
                                       {Criterion::R_GG4, Sign::Positive}};
  const bool q = kind == CostKind::Quadratic;
  switch (model) {
    case Model::GR: return q ? std::span<const Condition>(gr_q) : gr_l;
    case Model::GB: return q ? std::span<const Condition>(gb_q) : gb_l;
    case Model::GL: return q ? std::span<const Condition>(gl_q) : gl_l;
    case Model::GA: return q ? std::span<const Condition>(ga_q) : ga_l;
    case Model::GG: return q ? std::span<const Condition>(gg_q) : gg_l;
  }
  throw std::invalid_argument("unknown model");
}

}  // namespace

const char* to_string(Criterion id) {
  switch (id) {
    case Criterion::R_GR1: return "R_GR1";
    case Criterion::R_GR2: return "R_GR2";
    case Criterion::R_GB1: return "R_GB1";
    case Criterion::R_GB2: return "R_GB2";
    case Criterion::R_GB3: return "R_GB3";
    case Criterion::R_GL1: return "R_GL1";
    case Criterion::R_GL2: return "R_GL2";
    case Criterion::R_GL3: return "R_GL3";
    case Criterion::R_GA1: return "R_GA1";
    case Criterion::R_GA2: return "R_GA2";
    case Criterion::R_GA3: return "R_GA3";
    case Criterion::R_GG1: return "R_GG1";
    case Criterion::R_GG2: return "R_GG2";
    case Criterion::R_GG3: return "R_GG3";
    case Criterion::R_GG4: return "R_GG4";
  }
  return "?";
}

CriterionEvaluation criterion_value(Criterion id, double c1, double c2,
                                    double k, double k2, double l) {
  return eval_table(table_for(id), c1, c2, k, k2, l);
}

CriterionSet criteria(const ModelSpec& spec) {
  if (spec.cost1.kind != spec.cost2.kind)
    throw std::invalid_argument("criteria: cost kinds must match");
  CriterionSet set;
  set.stable = true;
  set.min_margin = std::numeric_limits<double>::infinity();
  for (const Condition& cond : conditions_for(spec.model, spec.cost1.kind)) {
    const CriterionEvaluation e = criterion_value(
        cond.id, spec.cost1.c, spec.cost2.c, spec.K, spec.K2, spec.L);
    CriterionValue v;
    v.name = to_string(cond.id);
    v.value = e.value;
    v.margin = e.scale > 0.0 ? std::abs(e.value) / e.scale : 0.0;
    v.satisfied =
        cond.stable_sign == Sign::Negative ? e.value < 0.0 : e.value > 0.0;
    set.stable = set.stable && v.satisfied;
    set.min_margin = std::min(set.min_margin, v.margin);
    set.values.push_back(v);
  }
  return set;
}

GrBorderFactors border_poly_gr(double c1, double c2, double k) {
  GrBorderFactors f;
  f.c1 = c1;
  f.c2 = c2;
  f.k = k;
  f.c1_minus_c2 = c1 - c2;
  f.c1_plus_c2 = c1 + c2;
  f.c1_minus_c2_ninth = c1 - c2 / 9.0;
  f.quartic = eval_table(kGrBorderQuartic, c1, c2, k, 0.0, 0.0).value;
  return f;
}

}  // namespace cournot
