#pragma once

#include <ostream>
#include <string>

#include "cournot/analysis.hpp"
#include "cournot/types.hpp"

namespace cournot {

// Locale-independent decimal rendering with 17 significant digits, enough to
// round-trip any double. Output files must be byte-identical across runs and
// platforms, so all numeric formatting funnels through here.
std::string format_double(double value);

// CSV schema: x,y,class,jury1,jury2,jury3,rho,crit_primary
// Rows run x-fastest with y ascending; crit_primary is the first criterion
// value of the cell's set (nan for infeasible cells).
void write_sweep_csv(std::ostream& os, const SweepGrid& grid);

// Plain-text PGM (P2), maxval 255. Cell values: Stable=0, Boundary=128,
// Unstable=255, Infeasible=64. Row 0 carries the maximum y (image
// convention), as documented in the header comment.
void write_sweep_pgm(std::ostream& os, const SweepGrid& grid);

// CSV schema: param,value — one row per retained orbit sample; escaped
// parameters contribute no rows.
void write_bifurcation_csv(std::ostream& os, const BifurcationScan& scan);

// CSV schema: t,q1,q2 with t starting at first_step.
void write_orbit_csv(std::ostream& os, const Orbit& orb, std::size_t first_step);

// CSV schema: model,cost,result,c1,c2,k,k2,l — the non-agreeing samples of
// an agreement run, in sample order. Pass include_header=false when
// appending a further section to the same file.
void write_agreement_csv(std::ostream& os, Model model, CostKind kind,
                         const AgreementCounts& counts,
                         bool include_header = true);

// CSV schema: probe,role,c1,c2,k,k2,l with role in {violation, witness}.
void write_containment_csv(std::ostream& os, const std::string& probe,
                           const ContainmentReport& report,
                           bool include_header = true);

}  // namespace cournot
