#include "pabn/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "pabn/errors.hpp"
#include "pabn/parallel.hpp"

namespace pabn {

namespace {

constexpr std::size_t kChunk = 2048;
constexpr double kNormTol = 1e-9;
constexpr double kQuadratureFloor = 1e-8;

using Mat3 = std::array<double, 9>;  // row-major, M[3*i+j] = dm_i/dx_j

inline Vec3 mat_vec(const Mat3& M, const Vec3& v) {
  return {M[0] * v.x + M[1] * v.y + M[2] * v.z,
          M[3] * v.x + M[4] * v.y + M[5] * v.z,
          M[6] * v.x + M[7] * v.y + M[8] * v.z};
}
inline Vec3 mat_t_vec(const Mat3& M, const Vec3& v) {
  return {M[0] * v.x + M[3] * v.y + M[6] * v.z,
          M[1] * v.x + M[4] * v.y + M[7] * v.z,
          M[2] * v.x + M[5] * v.y + M[8] * v.z};
}
inline double frob(const Mat3& A, const Mat3& B) {
  double s = 0;
  for (int i = 0; i < 9; ++i) s += A[i] * B[i];
  return s;
}
inline Mat3 cross_mat(const Vec3& u) {
  return {0, -u.z, u.y, u.z, 0, -u.x, -u.y, u.x, 0};
}

struct CellTerms {
  double splay, twist, bend, saddle;
};

// Energy density of one cell (times cell volume) at the center quadrature
// point; optionally also the derivative with respect to the 8 corner values.
template <bool WithGrad>
inline CellTerms cell_kernel(const std::array<Vec3, 8>& n, double dx, const ElasticConstants& k,
                             Vec3* corner_grad) {
  // Trilinear average and center gradient of the raw corner data.
  Vec3 a;
  Mat3 B{};
  const double gs = 1.0 / (4.0 * dx);
  for (int c = 0; c < 8; ++c) {
    const double sx = (c & 1) ? gs : -gs;
    const double sy = (c & 2) ? gs : -gs;
    const double sz = (c & 4) ? gs : -gs;
    a += n[c];
    B[0] += sx * n[c].x; B[1] += sy * n[c].x; B[2] += sz * n[c].x;
    B[3] += sx * n[c].y; B[4] += sy * n[c].y; B[5] += sz * n[c].y;
    B[6] += sx * n[c].z; B[7] += sy * n[c].z; B[8] += sz * n[c].z;
  }
  a *= 0.125;

  const double r2 = norm2(a);
  if (r2 < kQuadratureFloor * kQuadratureFloor)
    throw ZeroVector("degenerate director average at a quadrature point");
  const double r = std::sqrt(r2);
  const double inv_r = 1.0 / r;
  const Vec3 m = a * inv_r;

  // Renormalized quadrature-point gradient G = (B - m v^T)/r, v = B^T m.
  const Vec3 v = mat_t_vec(B, m);
  Mat3 G;
  G[0] = (B[0] - m.x * v.x) * inv_r; G[1] = (B[1] - m.x * v.y) * inv_r; G[2] = (B[2] - m.x * v.z) * inv_r;
  G[3] = (B[3] - m.y * v.x) * inv_r; G[4] = (B[4] - m.y * v.y) * inv_r; G[5] = (B[5] - m.y * v.z) * inv_r;
  G[6] = (B[6] - m.z * v.x) * inv_r; G[7] = (B[7] - m.z * v.y) * inv_r; G[8] = (B[8] - m.z * v.z) * inv_r;

  const double div = G[0] + G[4] + G[8];
  const Vec3 curl{G[7] - G[5], G[2] - G[6], G[3] - G[1]};
  const double tw = dot(m, curl);
  const Vec3 bend = cross(m, curl);
  double tr_g2 = 0;
  tr_g2 += G[0] * G[0] + G[4] * G[4] + G[8] * G[8];
  tr_g2 += 2 * (G[1] * G[3] + G[2] * G[6] + G[5] * G[7]);
  const double saddle_q = tr_g2 - div * div;

  const double vol = dx * dx * dx;
  CellTerms out{k.K1 * div * div * vol, k.K2 * tw * tw * vol, k.K3 * norm2(bend) * vol,
                k.K24 * saddle_q * vol};

  if constexpr (WithGrad) {
    // dw/dG and dw/dm of the density at the quadrature point.
    Mat3 Wg;
    const Vec3 bxm = cross(bend, m);
    const Mat3 mX = cross_mat(m);
    const Mat3 bX = cross_mat(bxm);
    const double c1 = 2 * k.K1 * div - 2 * k.K24 * div;
    for (int i = 0; i < 9; ++i) Wg[i] = 2 * k.K2 * tw * mX[i] + 2 * k.K3 * bX[i];
    Wg[0] += c1; Wg[4] += c1; Wg[8] += c1;
    Wg[0] += 2 * k.K24 * G[0]; Wg[1] += 2 * k.K24 * G[3]; Wg[2] += 2 * k.K24 * G[6];
    Wg[3] += 2 * k.K24 * G[1]; Wg[4] += 2 * k.K24 * G[4]; Wg[5] += 2 * k.K24 * G[7];
    Wg[6] += 2 * k.K24 * G[2]; Wg[7] += 2 * k.K24 * G[5]; Wg[8] += 2 * k.K24 * G[8];

    const Vec3 Wm = 2 * k.K2 * tw * curl + 2 * k.K3 * cross(curl, bend);

    // Chain through m = a/|a| and G = (B - m v^T)/r back to (a, B).
    const Vec3 wg_v = mat_vec(Wg, v);
    const Vec3 wgt_m = mat_t_vec(Wg, m);
    const Vec3 b_wgt_m = mat_vec(B, wgt_m);
    Vec3 total_m = Wm - inv_r * (wg_v + b_wgt_m);
    total_m -= dot(total_m, m) * m;  // apply P = I - m m^T
    const Vec3 w_a = inv_r * total_m - (frob(Wg, G) * inv_r) * m;

    // W_B = P Wg / r
    Mat3 Wb;
    const Vec3 mWg{m.x * Wg[0] + m.y * Wg[3] + m.z * Wg[6],
                   m.x * Wg[1] + m.y * Wg[4] + m.z * Wg[7],
                   m.x * Wg[2] + m.y * Wg[5] + m.z * Wg[8]};
    Wb[0] = (Wg[0] - m.x * mWg.x) * inv_r; Wb[1] = (Wg[1] - m.x * mWg.y) * inv_r; Wb[2] = (Wg[2] - m.x * mWg.z) * inv_r;
    Wb[3] = (Wg[3] - m.y * mWg.x) * inv_r; Wb[4] = (Wg[4] - m.y * mWg.y) * inv_r; Wb[5] = (Wg[5] - m.y * mWg.z) * inv_r;
    Wb[6] = (Wg[6] - m.z * mWg.x) * inv_r; Wb[7] = (Wg[7] - m.z * mWg.y) * inv_r; Wb[8] = (Wg[8] - m.z * mWg.z) * inv_r;

    for (int c = 0; c < 8; ++c) {
      const double sx = (c & 1) ? gs : -gs;
      const double sy = (c & 2) ? gs : -gs;
      const double sz = (c & 4) ? gs : -gs;
      corner_grad[c] = vol * (0.125 * w_a +
                              Vec3{Wb[0] * sx + Wb[1] * sy + Wb[2] * sz,
                                   Wb[3] * sx + Wb[4] * sy + Wb[5] * sz,
                                   Wb[6] * sx + Wb[7] * sy + Wb[8] * sz});
    }
  }

  return out;
}

void check_normalized(const DirectorField& field) {
  const GridGeometry& g = field.geom();
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    if (g.node_class(node).tag == NodeTag::Excluded) continue;
    if (std::fabs(norm(field[node]) - 1.0) > kNormTol)
      throw NotNormalized("node " + std::to_string(node) + " deviates from unit norm");
  }
}

struct ChunkSums {
  Accumulator splay, twist, bend, saddle;
};

}  // namespace

double ElasticConstants::max_k() const {
  return std::max({K1, K2, K3, std::fabs(K24)});
}

struct EnergyEvaluator::Impl {
  GeometryPtr geom;
  ElasticConstants k;
  int threads;
  std::vector<ChunkSums> partials;
  std::vector<Vec3> cell_grad;  // 8 corner derivatives per cell

  Impl(GeometryPtr g, ElasticConstants kk, int th)
      : geom(std::move(g)), k(kk), threads(resolve_thread_count(th)) {
    partials.resize((geom->cell_count() + kChunk - 1) / kChunk);
  }

  template <bool WithGrad>
  EnergyBreakdown run(const DirectorField& field) {
    check_normalized(field);
    const GridGeometry& g = *geom;
    const double dx = g.spacing();
    const std::size_t ncells = g.cell_count();
    if constexpr (WithGrad) cell_grad.resize(ncells * 8);

    parallel_chunks(ncells, kChunk, threads, [&](std::size_t begin, std::size_t end) {
      ChunkSums sums;
      std::array<Vec3, 8> corners;
      for (std::size_t cell = begin; cell < end; ++cell) {
        const auto nodes = g.cell_nodes(cell);
        for (int c = 0; c < 8; ++c) corners[c] = field[nodes[c]];
        CellTerms t = cell_kernel<WithGrad>(corners, dx, k,
                                            WithGrad ? &cell_grad[cell * 8] : nullptr);
        sums.splay.add(t.splay);
        sums.twist.add(t.twist);
        sums.bend.add(t.bend);
        sums.saddle.add(t.saddle);
      }
      partials[begin / kChunk] = sums;
    });

    ChunkSums total;
    for (const ChunkSums& s : partials) {
      total.splay.add(s.splay);
      total.twist.add(s.twist);
      total.bend.add(s.bend);
      total.saddle.add(s.saddle);
    }
    EnergyBreakdown out;
    out.splay = total.splay.value();
    out.twist = total.twist.value();
    out.bend = total.bend.value();
    out.saddle = total.saddle.value();
    out.total = out.splay + out.twist + out.bend + out.saddle;
    return out;
  }

  void gather(const DirectorField& field, std::vector<Vec3>& grad) {
    const GridGeometry& g = *geom;
    grad.assign(g.node_count(), Vec3{});
    parallel_chunks(g.node_count(), 4096, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t node = begin; node < end; ++node) {
        const NodeTag tag = g.node_class(node).tag;
        if (tag == NodeTag::Excluded || tag == NodeTag::TopFixed || tag == NodeTag::EdgeFixed)
          continue;
        auto [i, j, k3] = g.node_ijk(node);
        Vec3 sum;
        for (int b = 0; b < 8; ++b) {
          const std::int64_t cid =
              g.cell_id(i - (b & 1), j - ((b >> 1) & 1), k3 - ((b >> 2) & 1));
          if (cid >= 0) sum += cell_grad[static_cast<std::size_t>(cid) * 8 + b];
        }
        grad[node] = sum;
      }
    });
  }
};

EnergyEvaluator::EnergyEvaluator(GeometryPtr geom, ElasticConstants k, int threads)
    : impl_(std::make_unique<Impl>(std::move(geom), k, threads)) {}
EnergyEvaluator::~EnergyEvaluator() = default;

EnergyBreakdown EnergyEvaluator::energy(const DirectorField& field) {
  return impl_->run<false>(field);
}

EnergyBreakdown EnergyEvaluator::energy_and_gradient(const DirectorField& field,
                                                     std::vector<Vec3>& grad) {
  EnergyBreakdown e = impl_->run<true>(field);
  impl_->gather(field, grad);
  return e;
}

const ElasticConstants& EnergyEvaluator::constants() const { return impl_->k; }

EnergyBreakdown energy_breakdown(const DirectorField& field, const ElasticConstants& k,
                                 int threads) {
  EnergyEvaluator ev(field.geom_ptr(), k, threads);
  return ev.energy(field);
}

std::vector<Vec3> discrete_gradient(const DirectorField& field, const ElasticConstants& k,
                                    int threads) {
  EnergyEvaluator ev(field.geom_ptr(), k, threads);
  std::vector<Vec3> grad;
  ev.energy_and_gradient(field, grad);
  return grad;
}

double cell_energy(const DirectorField& field, const ElasticConstants& k, std::size_t cell) {
  const GridGeometry& g = field.geom();
  const auto nodes = g.cell_nodes(cell);
  std::array<Vec3, 8> corners;
  for (int c = 0; c < 8; ++c) corners[c] = field[nodes[c]];
  CellTerms t = cell_kernel<false>(corners, g.spacing(), k, nullptr);
  return t.splay + t.twist + t.bend + t.saddle;
}

std::vector<Vec3> project_gradient(const std::vector<Vec3>& grad, const DirectorField& field) {
  const GridGeometry& g = field.geom();
  std::vector<Vec3> out(grad.size());
  for (std::size_t node = 0; node < grad.size(); ++node) {
    const NodeClass& c = g.node_class(node);
    switch (c.tag) {
      case NodeTag::Excluded:
      case NodeTag::TopFixed:
      case NodeTag::EdgeFixed:
        out[node] = {};
        break;
      case NodeTag::SubstrateTangent:
      case NodeTag::PostFaceTangent: {
        Vec3 v = grad[node];
        v -= dot(v, c.normal) * c.normal;
        v -= dot(v, field[node]) * field[node];
        out[node] = v;
        break;
      }
      default: {
        Vec3 v = grad[node];
        v -= dot(v, field[node]) * field[node];
        out[node] = v;
        break;
      }
    }
  }
  return out;
}

DirectorField project_field(const DirectorField& field) {
  const GridGeometry& g = field.geom();
  DirectorField out = field;
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const NodeClass& c = g.node_class(node);
    switch (c.tag) {
      case NodeTag::Excluded:
        out[node] = {};
        break;
      case NodeTag::TopFixed:
        out[node] = {0, 0, 1};
        break;
      case NodeTag::EdgeFixed: {
        const double s = dot(out[node], c.direction);
        if (std::fabs(s) < 1e-12)
          throw ZeroVector("edge node " + std::to_string(node) +
                           " lost its component along the edge");
        out[node] = s > 0 ? c.direction : -1.0 * c.direction;
        break;
      }
      case NodeTag::SubstrateTangent:
      case NodeTag::PostFaceTangent: {
        Vec3 v = out[node];
        v -= dot(v, c.normal) * c.normal;
        const double m = norm(v);
        if (m < 1e-12)
          throw ZeroVector("tangent projection annihilated node " + std::to_string(node));
        out[node] = v * (1.0 / m);
        break;
      }
      default: {
        const double m = norm(out[node]);
        if (m < 1e-12)
          throw ZeroVector("cannot normalize zero value at node " + std::to_string(node));
        out[node] *= 1.0 / m;
        break;
      }
    }
  }
  return out;
}

}  // namespace pabn
