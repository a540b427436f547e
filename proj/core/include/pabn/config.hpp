#pragma once

#include <string>
#include <vector>

#include "pabn/experiments.hpp"

namespace pabn {

enum class Command { None, Run, Sweep, Diagnose, Trial };

/// Fully validated run configuration assembled from an optional flat JSON
/// config file plus command-line flags (flags win). The PABN_THREADS
/// environment variable supplies the worker count when none is given.
struct RunConfig {
  Command command = Command::None;

  CellParams cell = make_params(1.0, 16);
  ElasticConstants constants;
  RelaxOptions relax;

  Topology topology = Topology::T;       // run / trial
  std::vector<double> heights = SweepSpec::default_heights();  // sweep
  std::vector<Topology> topologies{Topology::T, Topology::P1, Topology::P2, Topology::P3};

  double planar_threshold = 0.15;
  std::string out_dir = "out";
  std::string input_vtk;                 // diagnose
  int threads = 0;

  SweepSpec sweep_spec() const;
};

/// Parses argv (subcommand + flags, `--config file.json` merged first).
/// Throws ParseError naming the offending key on any invalid value.
RunConfig parse_config(const std::vector<std::string>& args);
RunConfig parse_config(int argc, const char* const* argv);

}  // namespace pabn
