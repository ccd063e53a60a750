#include "cournot/io.hpp"

#include <charconv>
#include <cstddef>
#include <limits>

namespace cournot {

std::string format_double(double value) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double primary_value(const StabilityVerdict& cell) {
  return cell.criterion_values.empty()
             ? std::numeric_limits<double>::quiet_NaN()
             : cell.criterion_values.front().value;
}

int pgm_level(StabilityClass cls) {
  switch (cls) {
    case StabilityClass::Stable: return 0;
    case StabilityClass::Infeasible: return 64;
    case StabilityClass::Boundary: return 128;
    case StabilityClass::Unstable: return 255;
  }
  return 255;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepGrid& grid) {
  os << "x,y,class,jury1,jury2,jury3,rho,crit_primary\n";
  for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
    const std::string y = format_double(grid.y_axis.value(iy));
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
      const StabilityVerdict& cell = grid.cell(ix, iy);
      os << format_double(grid.x_axis.value(ix)) << ',' << y << ','
         << to_string(cell.cls) << ',' << format_double(cell.jury1) << ','
         << format_double(cell.jury2) << ',' << format_double(cell.jury3) << ','
         << format_double(cell.spectral_radius) << ','
         << format_double(primary_value(cell)) << '\n';
    }
  }
}

void write_sweep_pgm(std::ostream& os, const SweepGrid& grid) {
  os << "P2\n";
  os << "# " << grid.x_axis.name << " in [" << format_double(grid.x_axis.min)
     << "," << format_double(grid.x_axis.max) << "] left to right, "
     << grid.y_axis.name << " in [" << format_double(grid.y_axis.min) << ","
     << format_double(grid.y_axis.max)
     << "]; row 0 = maximum y. stable=0 infeasible=64 boundary=128 unstable=255\n";
  os << grid.nx() << ' ' << grid.ny() << "\n255\n";
  for (std::size_t row = 0; row < grid.ny(); ++row) {
    const std::size_t iy = grid.ny() - 1 - row;
    std::size_t on_line = 0;
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
      if (on_line == 16) {  // keep raster lines short
        os << '\n';
        on_line = 0;
      } else if (ix != 0) {
        os << ' ';
      }
      os << pgm_level(grid.cell(ix, iy).cls);
      ++on_line;
    }
    os << '\n';
  }
}

void write_bifurcation_csv(std::ostream& os, const BifurcationScan& scan) {
  os << "param,value\n";
  for (std::size_t i = 0; i < scan.param_values.size(); ++i) {
    const std::string p = format_double(scan.param_values[i]);
    for (const double v : scan.samples[i]) os << p << ',' << format_double(v) << '\n';
  }
}

void write_orbit_csv(std::ostream& os, const Orbit& orb, std::size_t first_step) {
  os << "t,q1,q2\n";
  for (std::size_t i = 0; i < orb.states.size(); ++i)
    os << first_step + i << ',' << format_double(orb.states[i].q1) << ','
       << format_double(orb.states[i].q2) << '\n';
}

namespace {

void write_point_fields(std::ostream& os, const ParamPoint& p) {
  os << format_double(p.c1) << ',' << format_double(p.c2) << ','
     << format_double(p.k) << ',' << format_double(p.k2) << ','
     << format_double(p.l);
}

}  // namespace

void write_agreement_csv(std::ostream& os, Model model, CostKind kind,
                         const AgreementCounts& counts, bool include_header) {
  if (include_header) os << "model,cost,result,c1,c2,k,k2,l\n";
  for (const ParamPoint& p : counts.near_points) {
    os << to_string(model) << ',' << to_string(kind) << ",near_boundary,";
    write_point_fields(os, p);
    os << '\n';
  }
  for (const ParamPoint& p : counts.disagreements) {
    os << to_string(model) << ',' << to_string(kind) << ",disagree,";
    write_point_fields(os, p);
    os << '\n';
  }
}

void write_containment_csv(std::ostream& os, const std::string& probe,
                           const ContainmentReport& report,
                           bool include_header) {
  if (include_header) os << "probe,role,c1,c2,k,k2,l\n";
  for (const ParamPoint& p : report.violations) {
    os << probe << ",violation,";
    write_point_fields(os, p);
    os << '\n';
  }
  if (report.witness) {
    os << probe << ",witness,";
    write_point_fields(os, *report.witness);
    os << '\n';
  }
}

}  // namespace cournot
