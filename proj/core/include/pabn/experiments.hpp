#pragma once

#include <optional>
#include <vector>

#include "pabn/director.hpp"
#include "pabn/energy.hpp"
#include "pabn/relax.hpp"
#include "pabn/topology.hpp"

namespace pabn {

struct SweepSpec {
  std::vector<double> heights;  ///< h / Lc, ascending
  std::vector<Topology> topologies{Topology::T, Topology::P1, Topology::P2, Topology::P3};
  ElasticConstants constants;
  int N = 16;
  double Lc = 1.0;
  RelaxOptions relax;
  double planar_threshold = 0.15;
  int threads = 0;  ///< runner pool; 0 = auto

  /// Default height grid: multiples of 1/8 from 0.25 to 1.5.
  static std::vector<double> default_heights();
};

struct RunDiagnostics {
  bool has_post = false;
  EdgeSignature signature;
  std::array<int, 4> lateral_kinks{};      ///< mid-height path on each lateral face
  std::array<bool, 4> planar{};            ///< planar band per lateral face
  std::array<double, 8> vertex_solid_angle{};  ///< corners 1..4 base, then 1..4 top
  bool topology_preserved = true;          ///< trial vs relaxed signature and kinks
};

struct RunResult {
  Topology topo = Topology::T;
  double h_over_Lc = 0;
  DirectorField field;
  EnergyBreakdown energy;
  RelaxReport report;
  RunDiagnostics diagnostics;
};

/// Builds the geometry and trial field, relaxes, and runs the full set of
/// topology diagnostics on the result. Deterministic for fixed inputs and
/// thread count.
RunResult run_single(Topology topo, double h_over_Lc, const ElasticConstants& k, int N,
                     const RelaxOptions& opts = {}, double Lc = 1.0,
                     double planar_threshold = 0.15);

struct SweepRow {
  Topology topo = Topology::T;
  double h_over_Lc = 0;
  EnergyBreakdown energy;
  int iterations = 0;
  bool converged = false;
  bool failed = false;  ///< run threw; energy fields are meaningless
  EdgeSignature signature;
  RunDiagnostics diagnostics;
};

struct EpsRow {
  double h_over_Lc = 0;
  std::optional<double> eps1;  ///< (E_P1 - E_T) / E_T
  std::optional<double> eps3;  ///< (E_P3 - E_T) / E_T
};

struct PlateauStats {
  std::optional<double> eps1_slope_low;   ///< least-squares slope over h in [0.5, 0.9]
  std::optional<double> eps1_slope_high;  ///< over [1.0, max]
  std::optional<double> eps3_slope_low;
  std::optional<double> eps3_slope_high;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  ///< sorted by (topology, height)
  std::vector<EpsRow> eps;
  PlateauStats plateau;
};

/// Runs the full heights x topologies product. Rows from unconverged or
/// failed runs are kept but excluded from the epsilon curves and plateau
/// fits. Throws EmptySpec if the product is empty.
SweepResult sweep_heights(const SweepSpec& spec);

/// Epsilon curves from finished rows (exposed for direct testing).
std::vector<EpsRow> compute_epsilons(const std::vector<SweepRow>& rows);

/// Least-squares slope of (x, y) pairs; empty if fewer than two points.
std::optional<double> least_squares_slope(const std::vector<std::pair<double, double>>& pts);

PlateauStats fit_plateau(const std::vector<EpsRow>& eps, double low_begin = 0.5,
                         double low_end = 0.9, double high_begin = 1.0);

}  // namespace pabn
