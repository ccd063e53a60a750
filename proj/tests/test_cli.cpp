// End-to-end checks of the command-line surface: exit codes, output formats
// and flag validation. Receives the binary path as argv[1].

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << '\n';
  }
}

std::string cli;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_path = "cli_test_stdout.tmp";
  const std::string cmd = cli + " " + args + " > " + out_path + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = raw < 0 ? raw : WEXITSTATUS(raw);
  std::ifstream is(out_path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-cournot-binary>\n";
    return 2;
  }
  cli = argv[1];

  // equilibrium: closed form, criterion value, both verdicts
  {
    const RunResult r = run(
        "equilibrium --model gr --cost quadratic --c1 1 --c2 4 --k 1");
    check(r.exit_code == 0, "equilibrium exit code");
    check(contains(r.out, "q1=0.33333333333333331"), "equilibrium q1");
    check(contains(r.out, "q2=0.16666666666666666"), "equilibrium q2");
    check(contains(r.out, "R_GR1="), "equilibrium criterion name");
    check(contains(r.out, "class="), "equilibrium numeric class");
    check(contains(r.out, "agreement=agree"), "equilibrium agreement");
  }
  {
    const RunResult r = run(
        "equilibrium --model ga --l 0.5 --k 1 --c1 1 --c2 1 --cost quadratic");
    check(r.exit_code == 0, "ga equilibrium exit code");
    check(contains(r.out, "R_GA1="), "ga equilibrium includes R_GA1");
  }
  {
    const RunResult r = run(
        "equilibrium --model gb --cost linear --c1 2 --c2 3 --k 0.5 --record");
    check(r.exit_code == 0, "record exit code");
    check(std::count(r.out.begin(), r.out.end(), '\n') == 1,
          "record is a single line");
    check(contains(r.out, " q1=") && contains(r.out, " class="),
          "record carries the key=value fields");
  }

  // invalid flags exit 2 with the constraint name
  {
    const RunResult r = run("equilibrium --model gr --cost quadratic --c1 0");
    check(r.exit_code == 2, "invalid c1 exits 2");
  }
  {
    const RunResult r = run("equilibrium --model xq --cost quadratic");
    check(r.exit_code == 2, "unknown model exits 2");
  }
  {
    const RunResult r = run("nosuchcommand");
    check(r.exit_code == 2, "unknown subcommand exits 2");
  }

  // simulate: header and convergence summary
  {
    const RunResult r = run(
        "simulate --model gr --cost quadratic --c1 1 --c2 1 --k 1.4 "
        "--q1 0.3 --q2 0.3 --steps 2000 -o cli_sim.csv");
    check(r.exit_code == 0, "simulate exit code");
    check(contains(r.out, "escaped=0"), "simulate no escape");
    const std::string csv = slurp("cli_sim.csv");
    check(csv.rfind("t,q1,q2\n", 0) == 0, "simulate csv header");
    check(contains(csv, "\n1,"), "simulate csv first row");
  }

  // sweep: CSV row count and PGM raster
  {
    const RunResult r = run(
        "sweep --model gr --cost quadratic --x c1:0.1:5:20 --y k:0.1:3:20 "
        "--c2 1 --mode both -o cli_sweep.csv --pgm cli_sweep.pgm");
    check(r.exit_code == 0, "sweep exit code");
    check(contains(r.out, "cells=400"), "sweep cell count");
    check(contains(r.out, "disagree=0"), "sweep no disagreements");
    const std::string csv = slurp("cli_sweep.csv");
    check(csv.rfind("x,y,class,", 0) == 0, "sweep csv header");
    int rows = 0;
    for (const char ch : csv)
      if (ch == '\n') ++rows;
    check(rows == 401, "sweep csv row count");
    const std::string pgm = slurp("cli_sweep.pgm");
    check(pgm.rfind("P2\n", 0) == 0, "pgm magic");
    check(contains(pgm, "\n20 20\n255\n"), "pgm dimensions");
  }

  // parallel sweeps assemble by cell index: byte-identical at any thread count
  {
    run("sweep --model gg --cost linear --x c:0.2:5:25 --y k12:0.1:3:25 "
        "--mode numeric --threads 1 -o cli_sw1.csv");
    run("sweep --model gg --cost linear --x c:0.2:5:25 --y k12:0.1:3:25 "
        "--mode numeric --threads 4 -o cli_sw2.csv");
    check(!slurp("cli_sw1.csv").empty() &&
              slurp("cli_sw1.csv") == slurp("cli_sw2.csv"),
          "sweep byte-identical across thread counts");
  }

  // bifurcation: two branches above the flip, one below
  {
    const RunResult r = run(
        "bifurcation --model gr --cost quadratic --c1 1 --c2 1 "
        "--param k:1.30:1.50:5 --transient 30000 --keep 40 -o cli_bif.csv");
    check(r.exit_code == 0, "bifurcation exit code");
    check(contains(r.out, "points=5"), "bifurcation points");
    std::ifstream is("cli_bif.csv");
    std::string line;
    std::getline(is, line);
    check(line == "param,value", "bifurcation header");
    double lo_below = 1e9, hi_below = -1e9, lo_above = 1e9, hi_above = -1e9;
    while (std::getline(is, line)) {
      const auto comma = line.find(',');
      const double param = std::stod(line.substr(0, comma));
      const double value = std::stod(line.substr(comma + 1));
      if (param < 1.41) {
        lo_below = std::min(lo_below, value);
        hi_below = std::max(hi_below, value);
      }
      if (param > 1.43) {
        lo_above = std::min(lo_above, value);
        hi_above = std::max(hi_above, value);
      }
    }
    check(hi_below - lo_below < 1e-6, "single branch below the flip");
    check(hi_above - lo_above > 1e-3, "two branches above the flip");
  }

  // lyapunov prints a single negative exponent for a stable spec
  {
    const RunResult r = run(
        "lyapunov --model gl --cost quadratic --c1 1 --c2 1 --k 0.5 --steps 4000");
    check(r.exit_code == 0, "lyapunov exit code");
    check(r.out.rfind("lambda=-", 0) == 0, "lyapunov negative at stable spec");
  }

  // verify: all samples agree (off boundary) and exit 0
  {
    const RunResult r =
        run("verify --model gb --samples 2000 --seed 7 -o cli_verify.csv");
    check(r.exit_code == 0, "verify exit code");
    check(contains(r.out, "disagree=0"), "verify no disagreements");
    check(contains(r.out, "agree="), "verify prints counts");
    // both cost-kind sections share one header
    const std::string csv = slurp("cli_verify.csv");
    std::size_t headers = 0, pos = 0;
    while ((pos = csv.find("model,cost,result,", pos)) != std::string::npos) {
      ++headers;
      ++pos;
    }
    check(headers == 1, "verify csv single header");
  }

  // containment: GR claim holds
  {
    const RunResult r = run(
        "containment --model gr --samples 20000 --seed 5 -o cli_contain.csv");
    check(r.exit_code == 0, "gr containment exit code");
    check(contains(r.out, "violations=0"), "gr containment no violations");
    check(contains(r.out, "claim=held"), "gr containment claim held");
    check(slurp("cli_contain.csv").rfind("probe,role,", 0) == 0,
          "containment csv header");
  }

  // GL witness search reports a confirmed witness
  {
    const RunResult r = run("containment --model gl --samples 20000 --seed 5");
    check(r.exit_code == 0, "gl containment exit code");
    check(contains(r.out, "witness_c1="), "gl witness found");
    check(contains(r.out, "orbit_confirmed=1"), "gl witness confirmed");
  }

  // GG runs the tied-speed claim (which has verified counterexamples at
  // small costs, hence exit 1) plus the free-speed witness search
  {
    const RunResult r = run(
        "containment --model gg --samples 20000 --seed 5 -o cli_gg.csv");
    check(r.exit_code == 1, "gg containment exit code");
    check(contains(r.out, "probe=gg_tied_speeds"), "gg tied probe line");
    check(contains(r.out, "claim=violated"), "gg tied claim violated");
    check(contains(r.out, "probe=gg_free_witness"), "gg free probe line");
    check(contains(r.out, "witness_c1="), "gg free witness found");
    // both probe sections share one file with a single header row
    const std::string csv = slurp("cli_gg.csv");
    std::size_t headers = 0, pos = 0;
    while ((pos = csv.find("probe,role,", pos)) != std::string::npos) {
      ++headers;
      ++pos;
    }
    check(headers == 1, "gg containment csv single header");
    check(contains(csv, "gg_tied_speeds,violation,"), "gg csv tied rows");
    check(contains(csv, "gg_free_witness,witness,"), "gg csv witness row");
  }

  // GA probe is informational only
  {
    const RunResult r = run("containment --model ga --samples 5000 --seed 5");
    check(r.exit_code == 0, "ga containment exit code");
    check(contains(r.out, "probe=ga_full_box"), "ga probe line");
  }

  for (const char* f : {"cli_test_stdout.tmp", "cli_sim.csv", "cli_sweep.csv",
                        "cli_sweep.pgm", "cli_bif.csv", "cli_contain.csv",
                        "cli_gg.csv", "cli_verify.csv", "cli_sw1.csv",
                        "cli_sw2.csv"})
    std::remove(f);

  if (failures == 0) {
    std::cout << "test_cli: all checks passed\n";
    return 0;
  }
  std::cerr << "test_cli: " << failures << " failures\n";
  return 1;
}
