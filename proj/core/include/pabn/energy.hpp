#pragma once

#include <vector>

#include "pabn/director.hpp"
#include "pabn/geometry.hpp"
#include "pabn/vec3.hpp"

namespace pabn {

/// Frank elastic constants. K24 is the saddle-splay coefficient K2 + K4.
struct ElasticConstants {
  double K1 = 4.0;
  double K2 = 2.0;
  double K3 = 6.0;
  double K24 = 0.0;

  double max_k() const;
};

struct EnergyBreakdown {
  double splay = 0.0;
  double twist = 0.0;
  double bend = 0.0;
  double saddle = 0.0;
  double total = 0.0;
};

/// Discrete Frank energy: one quadrature point per LC cell (the center),
/// director and gradient from trilinear interpolation of the 8 corners with
/// the director renormalized at the quadrature point. Deterministic
/// compensated summation in fixed cell order; results are independent of
/// the worker count. Throws NotNormalized if any node is off unit norm by
/// more than 1e-9.
EnergyBreakdown energy_breakdown(const DirectorField& field, const ElasticConstants& k,
                                 int threads = 0);

/// Exact derivative of the discrete energy with respect to each nodal
/// value, via the chain rule through the interpolation and quadrature-point
/// normalization. Entries at TopFixed, EdgeFixed and Excluded nodes are
/// zero. Throws NotNormalized as above.
std::vector<Vec3> discrete_gradient(const DirectorField& field, const ElasticConstants& k,
                                    int threads = 0);

/// Energy density integrand of a single LC cell times the cell volume.
/// Inspection helper; energy_breakdown().total equals the sum over cells.
double cell_energy(const DirectorField& field, const ElasticConstants& k, std::size_t cell);

/// Projects a raw gradient onto the admissible directions: removes the
/// component along n everywhere, additionally removes the surface-normal
/// component at tangent-constrained nodes, and zeroes fixed nodes.
std::vector<Vec3> project_gradient(const std::vector<Vec3>& grad, const DirectorField& field);

/// Restores feasibility: re-pins fixed nodes, removes normal components at
/// tangent-constrained nodes, renormalizes everywhere. Throws ZeroVector if
/// a projection annihilates a value.
DirectorField project_field(const DirectorField& field);

/// Reusable evaluator bound to one geometry; buffers survive across calls.
/// energy() and energy_and_gradient() match the free functions exactly.
class EnergyEvaluator {
 public:
  EnergyEvaluator(GeometryPtr geom, ElasticConstants k, int threads = 0);
  ~EnergyEvaluator();
  EnergyEvaluator(const EnergyEvaluator&) = delete;
  EnergyEvaluator& operator=(const EnergyEvaluator&) = delete;

  EnergyBreakdown energy(const DirectorField& field);
  EnergyBreakdown energy_and_gradient(const DirectorField& field, std::vector<Vec3>& grad);

  const ElasticConstants& constants() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pabn
