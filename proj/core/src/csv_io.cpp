#include "pabn/csv_io.hpp"

#include <fstream>

#include "format.hpp"
#include "pabn/errors.hpp"

namespace pabn {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

void write_csv(const SweepResult& result, const std::filesystem::path& dir) {
  using detail::fmt_number;

  {
    std::ofstream out = open_out(dir / "energies.csv");
    out << "topology,h_over_Lc,grid_N,K1,K2,K3,K24,E_total,E_splay,E_twist,E_bend,E_saddle,"
           "iterations,converged\n";
    const ElasticConstants& k = result.spec.constants;
    for (const SweepRow& r : result.rows) {
      out << to_string(r.topo) << "," << fmt_number(r.h_over_Lc) << "," << result.spec.N << ","
          << fmt_number(k.K1) << "," << fmt_number(k.K2) << "," << fmt_number(k.K3) << ","
          << fmt_number(k.K24) << "," << fmt_number(r.energy.total) << ","
          << fmt_number(r.energy.splay) << "," << fmt_number(r.energy.twist) << ","
          << fmt_number(r.energy.bend) << "," << fmt_number(r.energy.saddle) << ","
          << r.iterations << "," << (r.converged ? "true" : "false") << "\n";
    }
    if (!out.good()) throw IoError("write to energies.csv failed");
  }

  {
    std::ofstream out = open_out(dir / "epsilons.csv");
    out << "h_over_Lc,eps1,eps3\n";
    for (const EpsRow& r : result.eps) {
      out << fmt_number(r.h_over_Lc) << ",";
      if (r.eps1) out << fmt_number(*r.eps1);
      out << ",";
      if (r.eps3) out << fmt_number(*r.eps3);
      out << "\n";
    }
    if (!out.good()) throw IoError("write to epsilons.csv failed");
  }
}

void write_diagnostics_csv(const RunDiagnostics& diag, const std::filesystem::path& path) {
  using detail::fmt_number;
  std::ofstream out = open_out(path);
  out << "kind,id,quantity,value\n";
  if (diag.has_post) {
    for (int e = 0; e < 4; ++e)
      out << "edge,v" << e + 1 << ",vertical_sign," << diag.signature.vertical[e] << "\n";
    for (int e = 0; e < 4; ++e)
      out << "edge,t" << e + 1 << ",horizontal_sign," << diag.signature.horizontal_top[e] << "\n";
    for (int e = 0; e < 4; ++e)
      out << "edge,b" << e + 1 << ",horizontal_sign," << diag.signature.horizontal_base[e]
          << "\n";
    static const char* face_names[4] = {"y-", "x+", "y+", "x-"};
    for (int f = 0; f < 4; ++f)
      out << "face," << face_names[f] << ",kink," << diag.lateral_kinks[f] << "\n";
    for (int f = 0; f < 4; ++f)
      out << "face," << face_names[f] << ",planar_band," << (diag.planar[f] ? 1 : 0) << "\n";
    for (int c = 0; c < 4; ++c)
      out << "vertex,base" << c + 1 << ",solid_angle," << fmt_number(diag.vertex_solid_angle[c])
          << "\n";
    for (int c = 0; c < 4; ++c)
      out << "vertex,top" << c + 1 << ",solid_angle,"
          << fmt_number(diag.vertex_solid_angle[c + 4]) << "\n";
  }
  if (!out.good()) throw IoError("write to '" + path.string() + "' failed");
}

SweepResult single_run_result(const RunResult& run, const ElasticConstants& k, int N) {
  SweepResult out;
  out.spec.constants = k;
  out.spec.N = N;
  out.spec.heights = {run.h_over_Lc};
  out.spec.topologies = {run.topo};
  SweepRow row;
  row.topo = run.topo;
  row.h_over_Lc = run.h_over_Lc;
  row.energy = run.energy;
  row.iterations = run.report.iterations;
  row.converged = run.report.converged;
  row.signature = run.diagnostics.signature;
  row.diagnostics = run.diagnostics;
  out.rows.push_back(row);
  out.eps = compute_epsilons(out.rows);
  out.plateau = fit_plateau(out.eps);
  return out;
}

}  // namespace pabn
