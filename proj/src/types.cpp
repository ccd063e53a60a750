#include "cournot/types.hpp"

#include <cmath>
#include <stdexcept>

namespace cournot {

const char* to_string(CostKind kind) {
  return kind == CostKind::Quadratic ? "quadratic" : "linear";
}

const char* to_string(Model model) {
  switch (model) {
    case Model::GR: return "gr";
    case Model::GB: return "gb";
    case Model::GL: return "gl";
    case Model::GA: return "ga";
    case Model::GG: return "gg";
  }
  return "?";
}

const char* to_string(StabilityClass cls) {
  switch (cls) {
    case StabilityClass::Stable: return "stable";
    case StabilityClass::Unstable: return "unstable";
    case StabilityClass::Boundary: return "boundary";
    case StabilityClass::Infeasible: return "infeasible";
  }
  return "?";
}

std::optional<CostKind> cost_kind_from_string(const std::string& name) {
  if (name == "quadratic") return CostKind::Quadratic;
  if (name == "linear") return CostKind::Linear;
  return std::nullopt;
}

std::optional<Model> model_from_string(const std::string& name) {
  if (name == "gr") return Model::GR;
  if (name == "gb") return Model::GB;
  if (name == "gl") return Model::GL;
  if (name == "ga") return Model::GA;
  if (name == "gg") return Model::GG;
  return std::nullopt;
}

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

ModelSpec validate(const ModelSpec& spec) {
  if (!positive_finite(spec.cost1.c))
    throw std::invalid_argument("c1 must be positive");
  if (!positive_finite(spec.cost2.c))
    throw std::invalid_argument("c2 must be positive");
  if (!positive_finite(spec.K))
    throw std::invalid_argument("K must be positive");
  if (spec.model == Model::GG && !positive_finite(spec.K2))
    throw std::invalid_argument("K2 must be positive");
  if (spec.model == Model::GA) {
    const double hi = spec.allow_unit_L ? std::nextafter(1.0, 2.0) : 1.0;
    if (!std::isfinite(spec.L) || spec.L <= 0.0 || spec.L >= hi)
      throw std::invalid_argument("L out of (0,1)");
  }
  return spec;
}

}  // namespace cournot
