#include "pabn/topology.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "pabn/errors.hpp"

namespace pabn {

namespace {

constexpr double kEdgeComponentFloor = 0.9;
constexpr double kProjectionFloor = 0.5;
constexpr double kKinkTie = 1e-3;  // radians; snap |principal| ~ pi to the net's sign

struct Corner {
  int i, j;
};

// Footprint corner grid indices for corner ids 1..4.
Corner corner_ijk(const GridGeometry& g, int corner) {
  const int lo = g.post_lo(), hi = g.post_hi();
  switch (corner) {
    case 1: return {lo, lo};
    case 2: return {hi, lo};
    case 3: return {hi, hi};
    case 4: return {lo, hi};
  }
  throw OutOfRange("vertex corner must be 1..4");
}

int sign_of(double v) { return v >= 0 ? 1 : -1; }

int read_edge_sign(const DirectorField& field, const std::vector<std::size_t>& nodes,
                   const Vec3& axis, const std::string& what) {
  if (nodes.empty()) throw CorruptEdge(what + " has no interior nodes at this resolution");
  int sign = 0;
  for (std::size_t node : nodes) {
    const double c = dot(field[node], axis);
    if (std::fabs(c) < kEdgeComponentFloor)
      throw CorruptEdge(what + ": |edge component| below 0.9 at node " + std::to_string(node));
    if (sign == 0) sign = sign_of(c);
    else if (sign != sign_of(c))
      throw CorruptEdge(what + ": edge orientation changes sign along the edge");
  }
  return sign;
}

}  // namespace

EdgeSignature edge_orientation_signature(const DirectorField& field) {
  const GridGeometry& g = field.geom();
  if (!g.has_post()) throw InvalidParams("edge signature requires a post (h > 0)");
  const int kpost = g.post_top();

  EdgeSignature sig;
  for (int c = 1; c <= 4; ++c) {
    Corner cc = corner_ijk(g, c);
    std::vector<std::size_t> nodes;
    for (int k = 1; k < kpost; ++k) nodes.push_back(g.node_index(cc.i, cc.j, k));
    sig.vertical[c - 1] =
        read_edge_sign(field, nodes, {0, 0, 1}, "vertical edge " + std::to_string(c));
  }

  const int lo = g.post_lo(), hi = g.post_hi();
  // horizontal edges 1..4: y=0 (along x), x=Lp (along y), y=Lp (along x), x=0 (along y)
  auto horizontal = [&](int k, int e) {
    std::vector<std::size_t> nodes;
    Vec3 axis;
    switch (e) {
      case 1: axis = {1, 0, 0}; for (int i = lo + 1; i < hi; ++i) nodes.push_back(g.node_index(i, lo, k)); break;
      case 2: axis = {0, 1, 0}; for (int j = lo + 1; j < hi; ++j) nodes.push_back(g.node_index(hi, j, k)); break;
      case 3: axis = {1, 0, 0}; for (int i = lo + 1; i < hi; ++i) nodes.push_back(g.node_index(i, hi, k)); break;
      case 4: axis = {0, 1, 0}; for (int j = lo + 1; j < hi; ++j) nodes.push_back(g.node_index(lo, j, k)); break;
    }
    return read_edge_sign(field, nodes, axis,
                          (k == 0 ? "base edge " : "top edge ") + std::to_string(e));
  };
  for (int e = 1; e <= 4; ++e) {
    sig.horizontal_top[e - 1] = horizontal(kpost, e);
    sig.horizontal_base[e - 1] = horizontal(0, e);
  }
  return sig;
}

FacePathRotation rotation_of_inplane_path(const std::vector<std::array<double, 2>>& path) {
  if (path.size() < 2) throw PathTooCoarse("path needs at least two nodes");
  FacePathRotation out;
  double prev = 0, net = 0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    const double m = std::hypot(path[t][0], path[t][1]);
    if (m < kProjectionFloor)
      throw ProjectionDegenerate("in-plane projection below 0.5 at path node " +
                                 std::to_string(t));
    const double theta = std::atan2(path[t][1], path[t][0]);
    if (t > 0) {
      double step = std::remainder(theta - prev, 2 * M_PI);
      if (std::fabs(step) >= M_PI / 2)
        throw PathTooCoarse("a path step rotates by >= pi/2");
      net += step;
    }
    prev = theta;
  }
  out.net_rotation = net;
  double principal = std::remainder(net, 2 * M_PI);
  if (std::fabs(std::fabs(principal) - M_PI) < kKinkTie) principal = std::copysign(M_PI, net);
  out.kink = static_cast<int>(std::lround((net - principal) / (2 * M_PI)));
  return out;
}

FacePathRotation face_path_rotation(const DirectorField& field, FaceId face, int index,
                                    int radius) {
  const GridGeometry& g = field.geom();
  const int lo = g.post_lo(), hi = g.post_hi(), kpost = g.post_top();
  std::vector<std::array<int, 3>> nodes;  // (i, j, k) path
  int axis_u = 0;  // in-plane components: u then z for lateral faces, x then y otherwise
  int start_edge = 0, end_edge = 0;

  switch (face) {
    case FaceId::YNeg:
    case FaceId::XPos:
    case FaceId::YPos:
    case FaceId::XNeg: {
      if (!g.has_post()) throw InvalidParams("lateral face paths require a post");
      if (index <= 0 || index >= kpost)
        throw OutOfRange("z level must satisfy 0 < k < h/dx");
      switch (face) {
        case FaceId::YNeg:
          for (int i = lo; i <= hi; ++i) nodes.push_back({i, lo, index});
          axis_u = 0; start_edge = 1; end_edge = 2;
          break;
        case FaceId::XPos:
          for (int j = lo; j <= hi; ++j) nodes.push_back({hi, j, index});
          axis_u = 1; start_edge = 2; end_edge = 3;
          break;
        case FaceId::YPos:
          for (int i = hi; i >= lo; --i) nodes.push_back({i, hi, index});
          axis_u = 0; start_edge = 3; end_edge = 4;
          break;
        default:
          for (int j = hi; j >= lo; --j) nodes.push_back({lo, j, index});
          axis_u = 1; start_edge = 4; end_edge = 1;
          break;
      }
      std::vector<std::array<double, 2>> plane;
      plane.reserve(nodes.size());
      for (auto [i, j, k] : nodes) {
        const Vec3& n = field[g.node_index(i, j, k)];
        plane.push_back({axis_u == 0 ? n.x : n.y, n.z});
      }
      FacePathRotation out = rotation_of_inplane_path(plane);
      out.face = face;
      out.start_edge = start_edge;
      out.end_edge = end_edge;
      return out;
    }

    case FaceId::Substrate:
    case FaceId::Top: {
      if (!g.has_post()) throw InvalidParams("corner paths require a post");
      if (index < 1 || index > 4) throw OutOfRange("corner must be 1..4");
      if (radius <= 0) radius = std::max(1, g.nx() / 8);
      Corner cc = corner_ijk(g, index);
      // unit steps pointing into the post quadrant at this corner
      const int px = (index == 1 || index == 4) ? 1 : -1;
      const int py = (index == 1 || index == 2) ? 1 : -1;
      const int k = face == FaceId::Top ? kpost : 0;
      auto walk = [&](int i0, int j0, int i1, int j1) {
        int di = (i1 > i0) - (i1 < i0), dj = (j1 > j0) - (j1 < j0);
        int i = i0, j = j0;
        while (i != i1 || j != j1) {
          i += di;
          j += dj;
          nodes.push_back({i, j, k});
        }
      };
      if (face == FaceId::Substrate) {
        // three-quadrant loop outside the footprint, base edge to base edge
        nodes.push_back({cc.i + px * radius, cc.j, k});
        walk(cc.i + px * radius, cc.j, cc.i + px * radius, cc.j - py * radius);
        walk(cc.i + px * radius, cc.j - py * radius, cc.i - px * radius, cc.j - py * radius);
        walk(cc.i - px * radius, cc.j - py * radius, cc.i - px * radius, cc.j + py * radius);
        walk(cc.i - px * radius, cc.j + py * radius, cc.i, cc.j + py * radius);
      } else {
        // L inside the top face, top edge to top edge
        nodes.push_back({cc.i + px * radius, cc.j, k});
        walk(cc.i + px * radius, cc.j, cc.i + px * radius, cc.j + py * radius);
        walk(cc.i + px * radius, cc.j + py * radius, cc.i, cc.j + py * radius);
      }
      std::vector<std::array<double, 2>> plane;
      plane.reserve(nodes.size());
      for (auto [i, j, kk] : nodes) {
        const Vec3& n = field[g.node_index(i, j, kk)];
        plane.push_back({n.x, n.y});
      }
      FacePathRotation out = rotation_of_inplane_path(plane);
      out.face = face;
      // bounding horizontal edges: x-running edge first, then y-running
      out.start_edge = (index == 1 || index == 2) ? 1 : 3;
      out.end_edge = (index == 1 || index == 4) ? 4 : 2;
      return out;
    }
  }
  throw OutOfRange("unknown face id");
}

namespace {

// Outward-oriented corner offsets of the 6 cell faces (voxel corner bits).
struct QuadSpec {
  int di, dj, dk;                        // neighbor direction
  std::array<std::array<int, 3>, 4> c;   // corner offsets, outward CCW
};

constexpr std::array<QuadSpec, 6> kFaces{{
    {+1, 0, 0, {{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}}}},
    {-1, 0, 0, {{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}}}},
    {0, +1, 0, {{{0, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 1, 0}}}},
    {0, -1, 0, {{{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}}}},
    {0, 0, +1, {{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}}},
    {0, 0, -1, {{{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}}}},
}};

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double dab = dot(a, b), dbc = dot(b, c), dca = dot(c, a);
  if (dab < -1 + 1e-9 || dbc < -1 + 1e-9 || dca < -1 + 1e-9)
    throw DegenerateTriangle("adjacent director values are antipodal");
  return 2.0 * std::atan2(dot(a, cross(b, c)), 1.0 + dab + dbc + dca);
}

}  // namespace

VertexDegree vertex_degree(const DirectorField& field, PostVertex vertex) {
  const GridGeometry& g = field.geom();
  if (!g.has_post()) throw InvalidParams("vertex degree requires a post");
  Corner cc = corner_ijk(g, vertex.corner);
  const int vk = vertex.top ? g.post_top() : 0;

  // LC cells incident to the vertex.
  std::map<std::int64_t, std::array<int, 3>> cluster;
  for (int b = 0; b < 8; ++b) {
    const int oi = cc.i - (b & 1), oj = cc.j - ((b >> 1) & 1), ok = vk - ((b >> 2) & 1);
    const std::int64_t id = g.cell_id(oi, oj, ok);
    if (id >= 0) cluster[id] = {oi, oj, ok};
  }
  if (cluster.empty()) throw SurfaceOpen("no LC cells incident to the vertex");

  std::map<std::pair<std::size_t, std::size_t>, int> edge_use;
  auto add_edge = [&](std::size_t a, std::size_t b) {
    if (a < b) edge_use[{a, b}] += 1;
    else edge_use[{b, a}] -= 1;
  };

  Accumulator omega;
  for (const auto& [id, o] : cluster) {
    for (const QuadSpec& f : kFaces) {
      const std::int64_t nb = g.cell_id(o[0] + f.di, o[1] + f.dj, o[2] + f.dk);
      if (nb >= 0 && cluster.count(nb)) continue;  // interior face of the cluster
      std::array<std::size_t, 4> q;
      for (int t = 0; t < 4; ++t)
        q[t] = g.node_index(o[0] + f.c[t][0], o[1] + f.c[t][1], o[2] + f.c[t][2]);
      for (std::size_t qn : q)
        if (g.node_class(qn).tag == NodeTag::Excluded)
          throw SurfaceOpen("cluster surface touches an excluded node");
      add_edge(q[0], q[1]); add_edge(q[1], q[2]); add_edge(q[2], q[3]); add_edge(q[3], q[0]);
      omega.add(spherical_triangle_area(field[q[0]], field[q[1]], field[q[2]]));
      omega.add(spherical_triangle_area(field[q[0]], field[q[2]], field[q[3]]));
    }
  }
  for (const auto& [e, c] : edge_use)
    if (c != 0) throw SurfaceOpen("cluster surface is not closed");

  return {vertex, omega.value()};
}

bool planar_band(const DirectorField& field, PostFace face, double threshold) {
  const GridGeometry& g = field.geom();
  if (!g.has_post()) throw InvalidParams("planar band requires a post");
  const int lo = g.post_lo(), hi = g.post_hi(), kpost = g.post_top();
  for (int k = 1; k < kpost; ++k) {
    bool row_has_planar = false;
    for (int t = lo + 1; t < hi && !row_has_planar; ++t) {
      std::size_t node;
      switch (face) {
        case PostFace::YNeg: node = g.node_index(t, lo, k); break;
        case PostFace::XPos: node = g.node_index(hi, t, k); break;
        case PostFace::YPos: node = g.node_index(t, hi, k); break;
        default: node = g.node_index(lo, t, k); break;
      }
      row_has_planar = std::fabs(field[node].z) <= threshold;
    }
    if (!row_has_planar) return false;
  }
  return true;
}

}  // namespace pabn
