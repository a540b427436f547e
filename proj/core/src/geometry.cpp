#include "pabn/geometry.hpp"

#include <cmath>
#include <string>

#include "pabn/errors.hpp"

namespace pabn {

namespace {

// Nearest integer multiple check with a tight tolerance relative to dx.
bool conforms(double length, double dx, int& steps) {
  double q = length / dx;
  double r = std::round(q);
  steps = static_cast<int>(r);
  return std::fabs(q - r) <= 1e-9 * std::max(1.0, std::fabs(q));
}

}  // namespace

CellParams make_params(double h, int N, double Lc) {
  CellParams p;
  p.Lc = Lc;
  p.Lp = Lc / 2;
  p.H = 3 * Lc;
  p.h = h;
  p.N = N;
  return p;
}

GridGeometry build_geometry(const CellParams& params) {
  if (params.N < 8) throw InvalidParams("N must be at least 8");
  if (params.Lc <= 0 || params.Lp <= 0 || params.H <= 0)
    throw InvalidParams("Lc, Lp and H must be positive");
  if (params.h < 0 || params.h >= params.H) throw InvalidParams("post height must satisfy 0 <= h < H");
  if (params.normal_bottom && params.h != 0)
    throw InvalidParams("normal_bottom variant requires h = 0");

  const double dx = params.spacing();
  int quarter_steps = 0, lp_steps = 0, h_steps = 0, hcell_steps = 0;
  if (!conforms(params.Lc / 4, dx, quarter_steps))
    throw NonConformingGrid("N must be a multiple of 4 so the post face x=0 lies on the grid");
  if (!conforms(params.Lp, dx, lp_steps))
    throw NonConformingGrid("Lp is not an integer multiple of the grid spacing");
  if (!conforms(params.h, dx, h_steps))
    throw NonConformingGrid("h is not an integer multiple of the grid spacing");
  if (!conforms(params.H, dx, hcell_steps))
    throw NonConformingGrid("H is not an integer multiple of the grid spacing");

  const int post_lo = quarter_steps;            // grid index of x = 0
  const int post_hi = quarter_steps + lp_steps; // grid index of x = Lp
  if (post_hi >= params.N)
    throw InvalidParams("post must fit inside the periodic window (Lp < 3Lc/4)");

  GridGeometry g;
  g.params_ = params;
  g.dx_ = dx;
  g.nz_levels_ = hcell_steps + 1;
  g.post_lo_ = post_lo;
  g.post_hi_ = post_hi;
  g.post_top_ = h_steps;

  const int N = params.N;
  const int ktop = hcell_steps;      // z = H
  const int kpost = h_steps;         // z = h
  const bool post = kpost > 0;

  g.classes_.assign(static_cast<std::size_t>(N) * N * g.nz_levels_, NodeClass{});

  const Vec3 xhat{1, 0, 0}, yhat{0, 1, 0}, zhat{0, 0, 1};

  for (int k = 0; k < g.nz_levels_; ++k) {
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) {
        NodeClass& c = g.classes_[g.node_index(i, j, k)];

        if (k == ktop) {
          c = {NodeTag::TopFixed, zhat, {}};
          continue;
        }
        if (!post) {
          if (k == 0)
            c = params.normal_bottom ? NodeClass{NodeTag::TopFixed, zhat, {}}
                                     : NodeClass{NodeTag::SubstrateTangent, zhat, {}};
          else
            c = {NodeTag::Interior, {}, {}};
          continue;
        }

        const bool in_x = i >= post_lo && i <= post_hi;   // within footprint, faces included
        const bool in_y = j >= post_lo && j <= post_hi;
        const bool on_x = in_y && (i == post_lo || i == post_hi);
        const bool on_y = in_x && (j == post_lo || j == post_hi);
        const bool strict_inside = i > post_lo && i < post_hi && j > post_lo && j < post_hi;

        if (strict_inside && k < kpost) {
          c = {NodeTag::Excluded, {}, {}};
          continue;
        }

        if (k < kpost || k == kpost) {
          if (k <= kpost && on_x && on_y) {
            // vertical edge column (footprint corner)
            if (k == 0 || k == kpost)
              c = {NodeTag::VertexFree, {}, {}};
            else
              c = {NodeTag::EdgeFixed, {}, zhat};
            continue;
          }
          if ((on_x || on_y) && (k == 0 || k == kpost)) {
            // horizontal post edge (base or top); runs along the face it bounds
            c = {NodeTag::EdgeFixed, {}, on_y ? xhat : yhat};
            continue;
          }
          if (on_x && k <= kpost) {
            c = {NodeTag::PostFaceTangent, (i == post_lo) ? -1.0 * xhat : xhat, {}};
            continue;
          }
          if (on_y && k <= kpost) {
            c = {NodeTag::PostFaceTangent, (j == post_lo) ? -1.0 * yhat : yhat, {}};
            continue;
          }
          if (k == kpost && strict_inside) {
            // post top face interior: tangent plane with normal z
            c = {NodeTag::SubstrateTangent, zhat, {}};
            continue;
          }
        }

        if (k == 0) {
          c = {NodeTag::SubstrateTangent, zhat, {}};
          continue;
        }
        c = {NodeTag::Interior, {}, {}};
      }
    }
  }

  // LC cell list: every grid cell except those inside the post.
  const int nz_cells = g.nz_levels_ - 1;
  g.cell_ids_.assign(static_cast<std::size_t>(N) * N * nz_cells, -1);
  g.cells_.reserve(static_cast<std::size_t>(N) * N * nz_cells);
  for (int k = 0; k < nz_cells; ++k) {
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) {
        const bool post_cell = post && k < kpost && i >= post_lo && i < post_hi &&
                               j >= post_lo && j < post_hi;
        if (post_cell) continue;
        g.cell_ids_[(static_cast<std::size_t>(k) * N + j) * N + i] =
            static_cast<std::int64_t>(g.cells_.size());
        g.cells_.push_back({i, j, k});
      }
    }
  }

  return g;
}

GeometryPtr build_geometry_shared(const CellParams& params) {
  return std::make_shared<const GridGeometry>(build_geometry(params));
}

std::array<int, 3> GridGeometry::node_ijk(std::size_t node) const {
  const int N = params_.N;
  int i = static_cast<int>(node % N);
  int j = static_cast<int>((node / N) % N);
  int k = static_cast<int>(node / (static_cast<std::size_t>(N) * N));
  return {i, j, k};
}

Vec3 GridGeometry::coords(int i, int j, int k) const {
  return {-params_.Lc / 4 + wrap_x(i) * dx_, -params_.Lc / 4 + wrap_y(j) * dx_, k * dx_};
}

Vec3 GridGeometry::coords(std::size_t node) const {
  auto [i, j, k] = node_ijk(node);
  return coords(i, j, k);
}

const NodeClass& GridGeometry::node_class(std::size_t node) const {
  if (node >= classes_.size()) throw OutOfRange("node index out of range");
  return classes_[node];
}

std::array<int, 3> GridGeometry::cell_ijk(std::size_t cell) const {
  if (cell >= cells_.size()) throw OutOfRange("cell index out of range");
  return cells_[cell];
}

std::array<std::size_t, 8> GridGeometry::cell_nodes(std::size_t cell) const {
  auto [i, j, k] = cell_ijk(cell);
  std::array<std::size_t, 8> out;
  for (int c = 0; c < 8; ++c)
    out[c] = node_index(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
  return out;
}

std::int64_t GridGeometry::cell_id(int i, int j, int k) const {
  if (k < 0 || k >= nz_levels_ - 1) return -1;
  const int N = params_.N;
  return cell_ids_[(static_cast<std::size_t>(k) * N + wrap_y(j)) * N + wrap_x(i)];
}

const NodeClass& classify_node(const GridGeometry& geom, std::size_t node) {
  return geom.node_class(node);
}

}  // namespace pabn
