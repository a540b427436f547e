#include "pabn/relax.hpp"

#include <cmath>
#include <cstdio>
#include <deque>

#include "pabn/errors.hpp"

namespace pabn {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::EnergyFlat: return "energy_flat";
    case StopReason::StepSmall: return "step_small";
    case StopReason::MaxIters: return "max_iters";
    case StopReason::Stalled: return "stalled";
  }
  return "?";
}

namespace {

constexpr double kStepFloor = 1e-16;

// Bounded-size trace: halves its sampling rate whenever full, so the kept
// entries stay a subsequence of the accepted (non-increasing) energies.
class Trace {
 public:
  void push(double e) {
    if (count_ % stride_ == 0) {
      if (data_.size() == kCap) {
        for (std::size_t i = 0; 2 * i < kCap; ++i) data_[i] = data_[2 * i];
        data_.resize(kCap / 2);
        stride_ *= 2;
        if (count_ % stride_ == 0) data_.push_back(e);
      } else {
        data_.push_back(e);
      }
    }
    ++count_;
    last_ = e;
    has_last_ = true;
  }
  std::vector<double> finish() {
    if (has_last_ && (data_.empty() || data_.back() != last_)) data_.push_back(last_);
    return std::move(data_);
  }

 private:
  static constexpr std::size_t kCap = 1024;
  std::vector<double> data_;
  std::size_t stride_ = 1;
  std::size_t count_ = 0;
  double last_ = 0;
  bool has_last_ = false;
};

}  // namespace

std::pair<DirectorField, RelaxReport> relax(const DirectorField& field,
                                            const ElasticConstants& k,
                                            const RelaxOptions& opts) {
  const GridGeometry& g = field.geom();
  EnergyEvaluator ev(field.geom_ptr(), k, opts.threads);

  DirectorField current = project_field(field);
  double step = opts.step0 > 0
                    ? opts.step0
                    : 1e-2 * g.spacing() * g.spacing() / std::max(ev.constants().max_k(), 1e-30);

  std::vector<Vec3> grad;
  EnergyBreakdown energy = ev.energy_and_gradient(current, grad);

  RelaxReport report;
  Trace trace;
  trace.push(energy.total);

  std::deque<double> window;  // energies of the last 10 iterations
  window.push_back(energy.total);

  DirectorField candidate(field.geom_ptr());

  int it = 0;
  for (; it < opts.max_iters; ++it) {
    std::vector<Vec3> pg = project_gradient(grad, current);
    double gmax = 0;
    for (const Vec3& v : pg) gmax = std::max(gmax, norm2(v));
    if (gmax == 0.0) {
      // exact stationary point of the constrained problem
      report.converged = true;
      report.energy_flat = true;
      report.reason = StopReason::EnergyFlat;
      break;
    }

    // Backtracking line search for a strict decrease.
    double trial_step = step;
    bool accepted = false;
    EnergyBreakdown trial_energy;
    while (trial_step >= kStepFloor) {
      candidate = current;
      for (std::size_t node = 0; node < pg.size(); ++node)
        candidate[node] -= trial_step * pg[node];
      candidate = project_field(candidate);
      trial_energy = ev.energy(candidate);
      if (trial_energy.total < energy.total) {
        accepted = true;
        break;
      }
      trial_step *= opts.backtrack;
    }
    if (!accepted) {
      report.line_search_stalled = true;
      report.reason = StopReason::Stalled;
      break;
    }

    double max_rot = 0;
    for (std::size_t node = 0; node < current.size(); ++node) {
      if (g.node_class(node).tag == NodeTag::Excluded) continue;
      max_rot = std::max(max_rot, angle_between(current[node], candidate[node]));
    }

    current = candidate;
    energy = trial_energy;
    step = trial_step * opts.grow;
    trace.push(energy.total);

    window.push_back(energy.total);
    if (window.size() > 11) window.pop_front();

    if (opts.progress_every > 0 && (it + 1) % opts.progress_every == 0)
      std::fprintf(stderr, "relax iter %d energy %.12g step %.3g\n", it + 1, energy.total,
                   trial_step);

    const double scale = std::max(std::fabs(energy.total), 1e-300);
    report.energy_flat =
        window.size() == 11 && (window.front() - energy.total) / scale < opts.tol_energy;
    report.step_small = max_rot < opts.tol_step;
    if (report.energy_flat || report.step_small) {
      report.converged = true;
      report.reason = report.energy_flat ? StopReason::EnergyFlat : StopReason::StepSmall;
      ++it;
      break;
    }

    grad = std::vector<Vec3>();
    energy = ev.energy_and_gradient(current, grad);
  }

  if (!report.converged && !report.line_search_stalled) report.reason = StopReason::MaxIters;
  report.iterations = it;
  report.final_energy = energy;
  report.energy_trace = trace.finish();
  return {std::move(current), report};
}

}  // namespace pabn
