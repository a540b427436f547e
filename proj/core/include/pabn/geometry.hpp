#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "pabn/vec3.hpp"

namespace pabn {

/// Cell and post dimensions. Lengths are dimensionless; the lateral cell
/// size Lc sets the unit. Defaults follow the usual device proportions
/// Lc = 2 Lp, H = 3 Lc; both are overridable.
struct CellParams {
  double Lc = 1.0;       ///< cell cross-section (period in x and y)
  double Lp = 0.5;       ///< post cross-section
  double H = 3.0;        ///< cell height
  double h = 0.0;        ///< post height, 0 <= h < H (0 = no post)
  int N = 16;            ///< nodes per Lc along x and y; spacing = Lc/N

  /// Test-only variant: classify the bottom plate as fixed-normal instead
  /// of tangent. Requires h == 0.
  bool normal_bottom = false;

  double spacing() const { return Lc / N; }
};

/// Convenience factory for the standard proportions (Lp = Lc/2, H = 3 Lc).
CellParams make_params(double h, int N, double Lc = 1.0);

enum class NodeTag : std::uint8_t {
  Interior,          ///< bulk LC node, unit constraint only
  SubstrateTangent,  ///< tangent plane with normal z: bottom substrate and post top face
  PostFaceTangent,   ///< tangent plane on a lateral post face, normal +-x or +-y
  TopFixed,          ///< top plate, pinned to +z
  EdgeFixed,         ///< post edge, pinned to +-(edge axis); sign chosen by the director
  VertexFree,        ///< post vertex, unit constraint only (defect core)
  Excluded,          ///< inside the post, carries no field value
};

struct NodeClass {
  NodeTag tag = NodeTag::Interior;
  Vec3 normal;     ///< tangent tags: unit surface normal (post faces: outward from the post)
  Vec3 direction;  ///< EdgeFixed: unit edge axis (+x, +y or +z); sign of n assigned later
};

/// Structured rectilinear grid over the LC region of one periodic cell.
/// x and y are periodic with period Lc and window [-Lc/4, 3Lc/4); the post
/// occupies [0, Lp]^2 x [0, h]. Immutable after construction.
class GridGeometry {
 public:
  const CellParams& params() const { return params_; }
  double spacing() const { return dx_; }

  int nx() const { return params_.N; }                 ///< nodes along x (periodic)
  int ny() const { return params_.N; }                 ///< nodes along y (periodic)
  int nz_levels() const { return nz_levels_; }         ///< nodes along z: H/dx + 1
  std::size_t node_count() const { return classes_.size(); }

  /// Post extents in grid indices: faces at i = post_lo()/post_hi(), same in
  /// j; top face at k = post_top(). post_top() == 0 when there is no post.
  int post_lo() const { return post_lo_; }
  int post_hi() const { return post_hi_; }
  int post_top() const { return post_top_; }
  bool has_post() const { return post_top_ > 0; }

  int wrap_x(int i) const { int n = params_.N; return ((i % n) + n) % n; }
  int wrap_y(int j) const { return wrap_x(j); }

  std::size_t node_index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * params_.N + wrap_y(j)) * params_.N + wrap_x(i);
  }
  std::array<int, 3> node_ijk(std::size_t node) const;
  Vec3 coords(std::size_t node) const;
  Vec3 coords(int i, int j, int k) const;

  const NodeClass& node_class(std::size_t node) const;
  const std::vector<NodeClass>& classes() const { return classes_; }

  /// Cells fully inside the LC region (post cells are omitted).
  std::size_t cell_count() const { return cells_.size(); }
  std::array<int, 3> cell_ijk(std::size_t cell) const;
  /// Corner nodes of an LC cell in voxel order: bit 0 = +x, bit 1 = +y,
  /// bit 2 = +z, with periodic wrapping in x and y.
  std::array<std::size_t, 8> cell_nodes(std::size_t cell) const;
  /// Dense cell id lookup by cell origin (i, j, k); -1 for post cells.
  std::int64_t cell_id(int i, int j, int k) const;

 private:
  friend GridGeometry build_geometry(const CellParams&);

  CellParams params_;
  double dx_ = 0.0;
  int nz_levels_ = 0;
  int post_lo_ = 0, post_hi_ = 0, post_top_ = 0;
  std::vector<NodeClass> classes_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<std::int64_t> cell_ids_;  // (nx*ny*(nz_levels-1)) dense map
};

/// Builds and classifies the grid. Throws InvalidParams (h >= H, N < 8,
/// Lp out of range) or NonConformingGrid (Lp, h, H or Lc/4 not an integer
/// multiple of the spacing).
GridGeometry build_geometry(const CellParams& params);

/// Stored classification of one node; throws OutOfRange.
const NodeClass& classify_node(const GridGeometry& geom, std::size_t node);

using GeometryPtr = std::shared_ptr<const GridGeometry>;

GeometryPtr build_geometry_shared(const CellParams& params);

}  // namespace pabn
