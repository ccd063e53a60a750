#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cournot {

enum class CostKind { Quadratic, Linear };

// The five duopoly adjustment models. Firm 1 always adjusts along its profit
// gradient; the second firm is rational (GR), boundedly rational (GB), an LMA
// player (GL), adaptive (GA), or another gradient adjuster (GG).
enum class Model { GR, GB, GL, GA, GG };

const char* to_string(CostKind kind);
const char* to_string(Model model);
std::optional<CostKind> cost_kind_from_string(const std::string& name);
std::optional<Model> model_from_string(const std::string& name);

// One firm's cost model: C(q) = c*q^2 (Quadratic) or C(q) = c*q (Linear), c > 0.
struct CostSide {
  CostKind kind = CostKind::Quadratic;
  double c = 1.0;
};

// A model identifier plus its adjustment parameters. K2 is read only by GG,
// L only by GA; the other models ignore them.
struct ModelSpec {
  Model model = Model::GR;
  double K = 1.0;   // gradient speed of firm 1 (K1 for GG)
  double K2 = 1.0;  // gradient speed of firm 2 (GG only)
  double L = 0.5;   // adaptive weight (GA only)
  CostSide cost1;
  CostSide cost2;
  // Lets validate() accept L == 1, where the GA map coincides with GB.
  // Only the GA/GB consistency tests set this.
  bool allow_unit_L = false;
};

// Production pair, the dynamical variable. Both outputs are non-negative and
// q1 + q2 must stay positive wherever the price 1/(q1+q2) is evaluated.
struct State {
  double q1 = 0.0;
  double q2 = 0.0;
};

enum class StabilityClass { Stable, Unstable, Boundary, Infeasible };
const char* to_string(StabilityClass cls);

// Value of one named criterion polynomial at a parameter point.
struct CriterionValue {
  const char* name = "";  // e.g. "R_GR1"
  double value = 0.0;
  // |value| divided by the sum of the magnitudes of the polynomial's terms at
  // the same point; measures how far the sign is from flipping.
  double margin = 0.0;
  bool satisfied = false;  // the sign condition required for stability holds
};

// Classification of a fixed point plus the numbers behind it. jury1..3 are
// the raw left-hand sides 1+Tr+Det, 1-Tr+Det, 1-Det of the Jacobian.
struct StabilityVerdict {
  StabilityClass cls = StabilityClass::Infeasible;
  double jury1 = 0.0;
  double jury2 = 0.0;
  double jury3 = 0.0;
  double spectral_radius = 0.0;
  std::vector<CriterionValue> criterion_values;
};

// Band half-width on normalized Jury/criterion values inside which a verdict
// is classified Boundary. The criteria are polynomial sign conditions, so
// exact zeros have measure zero, but float noise needs a band.
inline constexpr double kBoundaryTol = 1e-9;

// One sweep axis. Valid names: c1, c2, k, k2, l, plus the tied axes
// c (c1 = c2) and k12 (K = K2) used for diagonal parameter slices.
struct AxisSpec {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t resolution = 2;

  double value(std::size_t i) const {
    return min + (max - min) * static_cast<double>(i) /
                     static_cast<double>(resolution - 1);
  }
};

// 2-D lattice of verdicts over a parameter rectangle, row-major with the row
// index running along the y axis: cells[iy * nx + ix].
struct SweepGrid {
  AxisSpec x_axis;
  AxisSpec y_axis;
  ModelSpec fixed;
  std::vector<StabilityVerdict> cells;
  // mode=both only: cells where criterion and numeric class differ with both
  // margins outside the boundary band.
  std::vector<std::size_t> disagree_cells;

  std::size_t nx() const { return x_axis.resolution; }
  std::size_t ny() const { return y_axis.resolution; }
  const StabilityVerdict& cell(std::size_t ix, std::size_t iy) const {
    return cells[iy * nx() + ix];
  }
};

// Checks every ModelSpec invariant (c_i > 0, K > 0, K2 > 0 for GG,
// 0 < L < 1 for GA) and returns the spec unchanged. Throws
// std::invalid_argument naming the first violated constraint; values are
// never silently clamped.
ModelSpec validate(const ModelSpec& spec);

}  // namespace cournot
