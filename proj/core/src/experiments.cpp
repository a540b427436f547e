#include "pabn/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "pabn/errors.hpp"
#include "pabn/parallel.hpp"

namespace pabn {

std::vector<double> SweepSpec::default_heights() {
  std::vector<double> h;
  for (int n = 2; n <= 12; ++n) h.push_back(n / 8.0);
  return h;
}

namespace {

RunDiagnostics diagnose(const DirectorField& field, double planar_threshold) {
  RunDiagnostics d;
  const GridGeometry& g = field.geom();
  d.has_post = g.has_post();
  if (!d.has_post) return d;

  d.signature = edge_orientation_signature(field);
  const int mid = std::max(1, g.post_top() / 2);
  for (int f = 0; f < 4; ++f) {
    d.lateral_kinks[f] = face_path_rotation(field, static_cast<FaceId>(f), mid).kink;
    d.planar[f] = planar_band(field, static_cast<PostFace>(f), planar_threshold);
  }
  for (int c = 1; c <= 4; ++c) {
    d.vertex_solid_angle[c - 1] = vertex_degree(field, {c, false}).solid_angle;
    d.vertex_solid_angle[c + 3] = vertex_degree(field, {c, true}).solid_angle;
  }
  return d;
}

}  // namespace

RunResult run_single(Topology topo, double h_over_Lc, const ElasticConstants& k, int N,
                     const RelaxOptions& opts, double Lc, double planar_threshold) {
  CellParams params = make_params(h_over_Lc * Lc, N, Lc);
  GeometryPtr geom = build_geometry_shared(params);
  DirectorField trial = trial_field(geom, TopologyClass::of(topo));

  RunDiagnostics before;
  if (geom->has_post()) {
    before.signature = edge_orientation_signature(trial);
    const int mid = std::max(1, geom->post_top() / 2);
    for (int f = 0; f < 4; ++f)
      before.lateral_kinks[f] = face_path_rotation(trial, static_cast<FaceId>(f), mid).kink;
  }

  auto [relaxed, report] = relax(trial, k, opts);

  RunResult out;
  out.topo = topo;
  out.h_over_Lc = h_over_Lc;
  out.energy = report.final_energy;
  out.report = report;
  out.diagnostics = diagnose(relaxed, planar_threshold);
  if (geom->has_post()) {
    out.diagnostics.topology_preserved =
        before.signature == out.diagnostics.signature &&
        before.lateral_kinks == out.diagnostics.lateral_kinks;
  }
  out.field = std::move(relaxed);
  return out;
}

std::vector<EpsRow> compute_epsilons(const std::vector<SweepRow>& rows) {
  std::vector<double> heights;
  for (const SweepRow& r : rows)
    if (!std::count(heights.begin(), heights.end(), r.h_over_Lc)) heights.push_back(r.h_over_Lc);
  std::sort(heights.begin(), heights.end());

  auto energy_of = [&](Topology t, double h) -> std::optional<double> {
    for (const SweepRow& r : rows)
      if (r.topo == t && r.h_over_Lc == h && r.converged && !r.failed) return r.energy.total;
    return std::nullopt;
  };

  std::vector<EpsRow> eps;
  for (double h : heights) {
    auto et = energy_of(Topology::T, h);
    if (!et || *et == 0) continue;
    EpsRow row;
    row.h_over_Lc = h;
    if (auto e1 = energy_of(Topology::P1, h)) row.eps1 = (*e1 - *et) / *et;
    if (auto e3 = energy_of(Topology::P3, h)) row.eps3 = (*e3 - *et) / *et;
    if (row.eps1 || row.eps3) eps.push_back(row);
  }
  return eps;
}

std::optional<double> least_squares_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (auto [x, y] : pts) {
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

PlateauStats fit_plateau(const std::vector<EpsRow>& eps, double low_begin, double low_end,
                         double high_begin) {
  auto collect = [&](bool use_eps1, double lo, double hi) {
    std::vector<std::pair<double, double>> pts;
    for (const EpsRow& r : eps) {
      if (r.h_over_Lc < lo - 1e-12 || r.h_over_Lc > hi + 1e-12) continue;
      const auto& v = use_eps1 ? r.eps1 : r.eps3;
      if (v) pts.push_back({r.h_over_Lc, *v});
    }
    return pts;
  };
  const double hmax = eps.empty() ? high_begin : eps.back().h_over_Lc;
  PlateauStats p;
  p.eps1_slope_low = least_squares_slope(collect(true, low_begin, low_end));
  p.eps1_slope_high = least_squares_slope(collect(true, high_begin, hmax));
  p.eps3_slope_low = least_squares_slope(collect(false, low_begin, low_end));
  p.eps3_slope_high = least_squares_slope(collect(false, high_begin, hmax));
  return p;
}

SweepResult sweep_heights(const SweepSpec& spec) {
  if (spec.heights.empty() || spec.topologies.empty())
    throw EmptySpec("sweep needs at least one height and one topology");

  // Validate every grid up front so a sweep cannot die halfway through.
  for (double h : spec.heights) build_geometry(make_params(h * spec.Lc, spec.N, spec.Lc));

  struct Job {
    Topology topo;
    double h;
  };
  std::vector<Job> jobs;
  for (Topology t : spec.topologies)
    for (double h : spec.heights) jobs.push_back({t, h});

  const int pool = std::min<int>(resolve_thread_count(spec.threads), static_cast<int>(jobs.size()));
  RelaxOptions run_opts = spec.relax;
  if (pool > 1 && run_opts.threads == 0) run_opts.threads = 1;  // runs are the parallel unit

  std::vector<SweepRow> rows(jobs.size());
  parallel_chunks(jobs.size(), 1, pool, [&](std::size_t begin, std::size_t) {
    const Job& job = jobs[begin];
    SweepRow& row = rows[begin];
    row.topo = job.topo;
    row.h_over_Lc = job.h;
    try {
      RunResult r = run_single(job.topo, job.h, spec.constants, spec.N, run_opts, spec.Lc,
                               spec.planar_threshold);
      row.energy = r.energy;
      row.iterations = r.report.iterations;
      row.converged = r.report.converged;
      row.signature = r.diagnostics.signature;
      row.diagnostics = r.diagnostics;
    } catch (const Error&) {
      row.failed = true;
    }
  });

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.topo != b.topo) return static_cast<int>(a.topo) < static_cast<int>(b.topo);
    return a.h_over_Lc < b.h_over_Lc;
  });

  SweepResult out;
  out.spec = spec;
  out.rows = std::move(rows);
  out.eps = compute_epsilons(out.rows);
  out.plateau = fit_plateau(out.eps);
  return out;
}

}  // namespace pabn
