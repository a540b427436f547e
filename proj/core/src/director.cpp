#include "pabn/director.hpp"

#include <cmath>

#include "pabn/errors.hpp"

namespace pabn {

const char* to_string(Topology t) {
  switch (t) {
    case Topology::T: return "T";
    case Topology::P1: return "P1";
    case Topology::P2: return "P2";
    case Topology::P3: return "P3";
  }
  return "?";
}

Topology topology_from_string(const std::string& s) {
  if (s == "T") return Topology::T;
  if (s == "P1") return Topology::P1;
  if (s == "P2") return Topology::P2;
  if (s == "P3") return Topology::P3;
  throw ParseError("topology", "expected one of T, P1, P2, P3, got '" + s + "'");
}

TopologyClass TopologyClass::of(Topology t) {
  TopologyClass c;
  c.label = t;
  switch (t) {
    case Topology::T:  c.vertical_signature = {+1, +1, +1, +1}; break;
    case Topology::P1: c.vertical_signature = {+1, +1, -1, +1}; break;
    case Topology::P2: c.vertical_signature = {+1, -1, -1, +1}; break;
    case Topology::P3: c.vertical_signature = {+1, -1, +1, -1}; break;
  }
  return c;
}

namespace {

constexpr double kDegenerate = 1e-12;

// Unnormalized trial prescription. A single in-plane form for all classes;
// the vertical component encodes the edge-orientation signature below the
// post top and relaxes to +z above it.
Vec3 trial_unnormalized(const CellParams& p, Topology topo, const Vec3& r) {
  const double above = (p.H - r.z) / p.H;
  const double sx = std::sin(M_PI * r.x / p.Lp);
  const double sy = std::sin(M_PI * r.y / p.Lp);
  Vec3 n;
  n.x = sx * sx * above;
  n.y = sy * sy * above;
  if (p.h > 0 && r.z <= p.h) {
    const double profile = r.z * (p.h - r.z);
    double shape = 1.0;
    switch (topo) {
      case Topology::T: shape = 1.0; break;
      case Topology::P1:
        shape = 1.0 + std::cos(M_PI * r.x / p.Lp) + std::cos(M_PI * r.y / p.Lp);
        break;
      case Topology::P2: shape = std::cos(M_PI * r.x / p.Lp); break;
      case Topology::P3:
        shape = std::cos(M_PI * r.x / p.Lp) * std::cos(M_PI * r.y / p.Lp);
        break;
    }
    n.z = profile * shape;
  } else {
    n.z = (r.z - p.h) / (p.H - p.h);
  }
  return n;
}

// Constraint projection for a single node value (no renormalization of
// pinned classes needed: they are set exactly).
Vec3 project_to_class(const NodeClass& c, Vec3 v, std::size_t node) {
  switch (c.tag) {
    case NodeTag::TopFixed:
      return {0, 0, 1};
    case NodeTag::EdgeFixed: {
      double s = dot(v, c.direction);
      if (std::fabs(s) < kDegenerate)
        throw ZeroVector("edge node " + std::to_string(node) + " has no component along its edge");
      return s > 0 ? c.direction : -1.0 * c.direction;
    }
    case NodeTag::SubstrateTangent:
    case NodeTag::PostFaceTangent: {
      v -= dot(v, c.normal) * c.normal;
      double m = norm(v);
      if (m < kDegenerate)
        throw ZeroVector("tangent projection annihilated node " + std::to_string(node));
      return v * (1.0 / m);
    }
    case NodeTag::Interior:
    case NodeTag::VertexFree: {
      double m = norm(v);
      if (m < kDegenerate)
        throw ZeroVector("cannot normalize zero value at node " + std::to_string(node));
      return v * (1.0 / m);
    }
    case NodeTag::Excluded:
      return {0, 0, 0};
  }
  return v;
}

// The prescription vanishes exactly at the post vertices (and, for a flat
// cell, at the four footprint corners on the substrate).
bool expected_degenerate(const GridGeometry& g, int i, int j, int k) {
  const bool corner_xy = (i == g.post_lo() || i == g.post_hi()) &&
                         (j == g.post_lo() || j == g.post_hi());
  if (!corner_xy) return false;
  if (g.has_post()) return k == 0 || k == g.post_top();
  return k == 0;
}

}  // namespace

DirectorField trial_field(GeometryPtr geom, const TopologyClass& topo) {
  const GridGeometry& g = *geom;
  if (topo.label != Topology::T && !g.has_post())
    throw InvalidParams("P classes require vertical post edges (h > 0)");

  DirectorField field(geom);
  std::vector<std::size_t> deferred;

  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const NodeClass& c = g.node_class(node);
    if (c.tag == NodeTag::Excluded) continue;
    Vec3 n = trial_unnormalized(g.params(), topo.label, g.coords(node));
    const double m = norm(n);
    if (m < kDegenerate) {
      auto [i, j, k] = g.node_ijk(node);
      if (!expected_degenerate(g, i, j, k))
        throw DegenerateInterior("trial prescription vanishes off-vertex at node " +
                                 std::to_string(node));
      deferred.push_back(node);
      continue;
    }
    field[node] = project_to_class(c, n * (1.0 / m), node);
  }

  // Vertex values: normalized mean of the available axis neighbors,
  // computed after the regular pass; +z if the mean degenerates.
  for (std::size_t node : deferred) {
    auto [i, j, k] = g.node_ijk(node);
    Vec3 mean;
    auto take = [&](int ii, int jj, int kk) {
      if (kk < 0 || kk >= g.nz_levels()) return;
      std::size_t nb = g.node_index(ii, jj, kk);
      if (g.node_class(nb).tag == NodeTag::Excluded) return;
      mean += field[nb];
    };
    take(i - 1, j, k); take(i + 1, j, k);
    take(i, j - 1, k); take(i, j + 1, k);
    take(i, j, k - 1); take(i, j, k + 1);
    if (norm(mean) < kDegenerate) mean = {0, 0, 1};
    field[node] = project_to_class(g.node_class(node), mean, node);
  }

  return field;
}

DirectorField normalize_field(const DirectorField& field) {
  DirectorField out = field;
  const GridGeometry& g = field.geom();
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    if (g.node_class(node).tag == NodeTag::Excluded) continue;
    double m = norm(out[node]);
    if (m < kDegenerate)
      throw ZeroVector("cannot normalize zero value at node " + std::to_string(node));
    out[node] *= 1.0 / m;
  }
  return out;
}

double max_constraint_residual(const DirectorField& field) {
  const GridGeometry& g = field.geom();
  double worst = 0.0;
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const NodeClass& c = g.node_class(node);
    if (c.tag == NodeTag::Excluded) continue;
    const Vec3& n = field[node];
    worst = std::max(worst, std::fabs(norm(n) - 1.0));
    switch (c.tag) {
      case NodeTag::SubstrateTangent:
      case NodeTag::PostFaceTangent:
        worst = std::max(worst, std::fabs(dot(n, c.normal)));
        break;
      case NodeTag::TopFixed:
        worst = std::max(worst, norm(n - Vec3{0, 0, 1}));
        break;
      case NodeTag::EdgeFixed: {
        double s = dot(n, c.direction) >= 0 ? 1.0 : -1.0;
        worst = std::max(worst, norm(n - s * c.direction));
        break;
      }
      default:
        break;
    }
  }
  return worst;
}

}  // namespace pabn
