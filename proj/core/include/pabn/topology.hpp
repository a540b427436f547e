#pragma once

#include <array>
#include <vector>

#include "pabn/director.hpp"

namespace pabn {

/// Lateral post faces, listed so face f sits between vertical edges f+1 and
/// f+2 (1-based, edges at (0,0), (Lp,0), (Lp,Lp), (0,Lp)).
enum class PostFace { YNeg = 0, XPos = 1, YPos = 2, XNeg = 3 };

/// Path carriers for face_path_rotation: a lateral face (path = horizontal
/// node row at a z level), the substrate (path = loop around a base vertex
/// between its two base edges), or the post top face (path = L around a top
/// vertex between its two top edges).
enum class FaceId { YNeg = 0, XPos = 1, YPos = 2, XNeg = 3, Substrate = 4, Top = 5 };

/// One of the 8 post vertices: corner 1..4 as in the edge numbering,
/// top = true for z = h, false for the base.
struct PostVertex {
  int corner = 1;
  bool top = true;
};

/// Signs of n along every post edge relative to the canonical directions
/// (+z on vertical edges, +x / +y on horizontal ones). Extracted from the
/// field, never assumed.
struct EdgeSignature {
  std::array<int, 4> vertical{};
  std::array<int, 4> horizontal_top{};   // edges at y=0, x=Lp, y=Lp, x=0
  std::array<int, 4> horizontal_base{};

  bool operator==(const EdgeSignature&) const = default;
};

struct FacePathRotation {
  FaceId face = FaceId::YNeg;
  int start_edge = 0;      ///< bounding edge ids (vertical 1..4, or the
  int end_edge = 0;        ///< horizontal edge ids 1..4 for corner loops)
  double net_rotation = 0; ///< unwrapped in-plane rotation, radians
  int kink = 0;            ///< extra full turns beyond the principal part
};

struct VertexDegree {
  PostVertex vertex;
  double solid_angle = 0;  ///< signed, outward-oriented enclosing surface
};

/// Reads the sign of n along each post edge from the edge's interior
/// nodes. Throws CorruptEdge if any node has |component| < 0.9 along its
/// edge or the signs disagree along one edge.
EdgeSignature edge_orientation_signature(const DirectorField& field);

/// In-plane rotation along a face path. For lateral faces `index` is the
/// z level (0 < k < h/dx); for Substrate/Top it is the vertex corner 1..4
/// and the path loops around that vertex at `radius` grid steps
/// (default N/8). Throws ProjectionDegenerate if the in-plane part drops
/// below 0.5 and PathTooCoarse if one step rotates by >= pi/2.
FacePathRotation face_path_rotation(const DirectorField& field, FaceId face, int index,
                                    int radius = 0);

/// Unwraps a sequence of in-plane 2-vectors. Exposed for direct testing;
/// face_path_rotation delegates here. Kink ties at |principal| = pi are
/// broken toward the sign of the net rotation, so a bare half-turn counts
/// as kink 0 regardless of rounding.
FacePathRotation rotation_of_inplane_path(const std::vector<std::array<double, 2>>& path);

/// Signed solid angle swept by n over the closed surface bounding the
/// cluster of LC cells incident to a post vertex. Throws SurfaceOpen on a
/// bookkeeping failure and DegenerateTriangle if adjacent values are
/// antipodal.
VertexDegree vertex_degree(const DirectorField& field, PostVertex vertex);

/// True iff every interior node row of the lateral face holds at least one
/// node with |n_z| <= threshold, i.e. a near-planar band crosses the face.
bool planar_band(const DirectorField& field, PostFace face, double threshold = 0.15);

}  // namespace pabn
