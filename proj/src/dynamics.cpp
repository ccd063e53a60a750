#include "cournot/dynamics.hpp"

#include <cmath>

namespace cournot {

namespace {

double require_positive(double q, const char* what) {
  if (!std::isfinite(q) || q <= 0.0)
    throw EscapeError(std::string("output ") + what + " left the positive domain");
  return q;
}

}  // namespace

State step(const ModelSpec& spec, const State& s, const ResponseOptions& opts) {
  if (!std::isfinite(s.q1) || !std::isfinite(s.q2) || s.q1 < 0.0 || s.q2 < 0.0 ||
      !(s.q1 + s.q2 > 0.0))
    throw EscapeError("state outside the feasible domain");

  const double q1_next =
      require_positive(s.q1 + spec.K * gradient_term(spec.cost1, s.q1, s.q2), "q1");

  double q2_next = 0.0;
  switch (spec.model) {
    case Model::GR:
      // firm 2 reacts to the already-updated q1
      q2_next = best_response(spec.cost2, q1_next, opts);
      break;
    case Model::GB:
      require_positive(s.q1, "q1(t)");
      q2_next = best_response(spec.cost2, s.q1, opts);
      break;
    case Model::GL:
      q2_next = lma_response(spec.cost2, s.q2, s.q1);
      break;
    case Model::GA:
      require_positive(s.q1, "q1(t)");
      q2_next = (1.0 - spec.L) * s.q2 + spec.L * best_response(spec.cost2, s.q1, opts);
      break;
    case Model::GG:
      q2_next = s.q2 + spec.K2 * gradient_term(spec.cost2, s.q2, s.q1);
      break;
  }
  return {q1_next, require_positive(q2_next, "q2")};
}

double gr_reduced_step(const ModelSpec& spec, double q1,
                       const ResponseOptions& opts) {
  if (spec.model != Model::GR)
    throw std::invalid_argument("gr_reduced_step: spec.model must be GR");
  if (!std::isfinite(q1) || q1 <= 0.0)
    throw EscapeError("q1 left the positive domain");
  const double rival = best_response(spec.cost2, q1, opts);
  return q1 + spec.K * gradient_term(spec.cost1, q1, rival);
}

Orbit orbit(const ModelSpec& spec, const State& s0, std::size_t n_steps,
            std::size_t transient, const ResponseOptions& opts) {
  if (transient > n_steps)
    throw std::invalid_argument("orbit: transient must not exceed n_steps");
  Orbit out;
  out.states.reserve(n_steps - transient);
  State s = s0;
  for (std::size_t t = 1; t <= n_steps; ++t) {
    try {
      s = step(spec, s, opts);
    } catch (const EscapeError&) {
      out.escaped = true;
      out.escape_index = t;
      return out;
    }
    if (t > transient) out.states.push_back(s);
  }
  return out;
}

}  // namespace cournot
