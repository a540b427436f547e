#pragma once

#include <vector>

#include "pabn/director.hpp"
#include "pabn/energy.hpp"

namespace pabn {

struct RelaxOptions {
  int max_iters = 50000;
  double tol_energy = 1e-9;   ///< relative decrease over a 10-iteration window
  double tol_step = 1e-7;     ///< max nodal rotation per accepted step, radians
  double step0 = 0.0;         ///< initial step; <= 0 means 1e-2 * dx^2 / max K
  double backtrack = 0.5;
  double grow = 1.1;
  int progress_every = 0;     ///< stderr progress every M iterations; 0 = quiet
  int threads = 0;            ///< 0 = auto
};

enum class StopReason { EnergyFlat, StepSmall, MaxIters, Stalled };

const char* to_string(StopReason r);

struct RelaxReport {
  int iterations = 0;
  EnergyBreakdown final_energy;
  bool converged = false;
  StopReason reason = StopReason::MaxIters;
  bool energy_flat = false;       ///< which tolerance(s) fired
  bool step_small = false;
  bool line_search_stalled = false;
  std::vector<double> energy_trace;  ///< downsampled accepted energies, non-increasing
};

/// Minimizes the discrete energy by projected gradient descent: the raw
/// gradient is projected to the admissible directions, the field is stepped
/// and re-projected, and the step backtracks until the energy strictly
/// decreases (growing again on acceptance). The output satisfies every node
/// constraint and never exceeds the input energy. A stalled line search
/// (no decreasing step above 1e-16) is reported, not thrown.
std::pair<DirectorField, RelaxReport> relax(const DirectorField& field,
                                            const ElasticConstants& k,
                                            const RelaxOptions& opts = {});

}  // namespace pabn
