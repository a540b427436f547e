#pragma once

#include <array>
#include <string>
#include <vector>

#include "pabn/geometry.hpp"
#include "pabn/vec3.hpp"

namespace pabn {

enum class Topology { T, P1, P2, P3 };

const char* to_string(Topology t);
Topology topology_from_string(const std::string& s);

/// One of the four admissible classes: the fixed horizontal edge pattern
/// (+x on x-parallel edges, +y on y-parallel edges, top and base alike)
/// plus a vertical edge-orientation signature. Vertical edges are numbered
/// 1..4 at (x,y) = (0,0), (Lp,0), (Lp,Lp), (0,Lp).
struct TopologyClass {
  Topology label = Topology::T;
  std::array<int, 4> vertical_signature{1, 1, 1, 1};

  static TopologyClass of(Topology t);
};

/// Discrete director field: one unit vector per non-excluded node.
/// Excluded nodes hold the zero sentinel.
class DirectorField {
 public:
  DirectorField() = default;
  explicit DirectorField(GeometryPtr geom)
      : geom_(std::move(geom)), values_(geom_->node_count()) {}

  const GridGeometry& geom() const { return *geom_; }
  const GeometryPtr& geom_ptr() const { return geom_; }

  Vec3& operator[](std::size_t node) { return values_[node]; }
  const Vec3& operator[](std::size_t node) const { return values_[node]; }
  std::size_t size() const { return values_.size(); }

  std::vector<Vec3>& values() { return values_; }
  const std::vector<Vec3>& values() const { return values_; }

 private:
  GeometryPtr geom_;
  std::vector<Vec3> values_;
};

/// Evaluates the closed-form trial prescription for `topo` at every
/// non-excluded node and normalizes. The prescription vanishes only at the
/// post vertices; those nodes get the normalized mean of their axis
/// neighbors (fallback +z), projected to the node's constraint. Throws
/// DegenerateInterior if it vanishes anywhere else, InvalidParams for a
/// P class on a geometry without vertical edges (h = 0).
DirectorField trial_field(GeometryPtr geom, const TopologyClass& topo);

/// Rescales every non-excluded value to unit norm. Throws ZeroVector if a
/// value has norm below 1e-12.
DirectorField normalize_field(const DirectorField& field);

/// Largest violation over all nodes of the unit-norm constraint and the
/// node-class constraints (tangency, pinned directions). Useful as a test
/// and solver invariant; pinned-edge signs are taken from the field itself.
double max_constraint_residual(const DirectorField& field);

}  // namespace pabn
