#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cournot/responses.hpp"
#include "cournot/types.hpp"

namespace cournot {

// An orbit left the positive domain the maps are defined on. The maps are
// not clamped: a non-positive or non-finite intermediate output means the
// trajectory is economically infeasible and iteration stops.
struct EscapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Orbit {
  std::vector<State> states;  // states after the transient, in order
  bool escaped = false;
  std::optional<std::size_t> escape_index;  // 1-based step at which escape hit
};

// One period of the chosen model. Firm 1 always moves q1 + K*G1(q1, q2);
// firm 2 per model: GR reacts to the updated q1, GB/GA to the old q1, GL
// applies its LMA response, GG gradient-adjusts with speed K2.
// Throws EscapeError if any consumed or produced output is <= 0 or
// non-finite.
State step(const ModelSpec& spec, const State& s,
           const ResponseOptions& opts = {});

// The one-dimensional reduction of GR along the invariant set q2 = R2(q1):
// returns q1 + K*G1(q1, R2(q1)). spec.model must be GR.
double gr_reduced_step(const ModelSpec& spec, double q1,
                       const ResponseOptions& opts = {});

// Iterates step() n_steps times from s0, recording the states produced after
// the first `transient` steps. An EscapeError ends the orbit early with
// escaped=true; all recorded states are finite and positive.
Orbit orbit(const ModelSpec& spec, const State& s0, std::size_t n_steps,
            std::size_t transient, const ResponseOptions& opts = {});

// Defaults used by the analysis consumers; the maps are cheap and stable
// equilibria attract quickly.
inline constexpr std::size_t kDefaultTransient = 1000;
inline constexpr std::size_t kDefaultOrbitSteps = 5000;

}  // namespace cournot
