#include "pabn/vtk_io.hpp"

#include <fstream>
#include <sstream>

#include "format.hpp"
#include "pabn/errors.hpp"

namespace pabn {

namespace {

int mask_of(NodeTag tag) {
  switch (tag) {
    case NodeTag::Excluded: return 0;
    case NodeTag::TopFixed:
    case NodeTag::EdgeFixed: return 2;
    default: return 1;
  }
}

}  // namespace

void write_vtk(const DirectorField& field, const std::filesystem::path& path,
               const std::string& label) {
  const GridGeometry& g = field.geom();
  const CellParams& p = g.params();

  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");

  using detail::fmt_number;
  out << "# vtk DataFile Version 2.0\n";
  out << "pabn director field" << (label.empty() ? "" : " " + label) << " Lc="
      << fmt_number(p.Lc) << " Lp=" << fmt_number(p.Lp) << " H=" << fmt_number(p.H)
      << " h=" << fmt_number(p.h) << " N=" << p.N << "\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << g.nx() << " " << g.ny() << " " << g.nz_levels() << "\n";
  out << "SPACING " << fmt_number(g.spacing()) << " " << fmt_number(g.spacing()) << " "
      << fmt_number(g.spacing()) << "\n";
  out << "ORIGIN " << fmt_number(-p.Lc / 4) << " " << fmt_number(-p.Lc / 4) << " 0\n";
  out << "POINT_DATA " << g.node_count() << "\n";

  out << "VECTORS director float\n";
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const Vec3& n = field[node];
    out << fmt_number(static_cast<float>(n.x)) << " " << fmt_number(static_cast<float>(n.y))
        << " " << fmt_number(static_cast<float>(n.z)) << "\n";
  }

  out << "SCALARS mask int\n";
  out << "LOOKUP_TABLE default\n";
  for (std::size_t node = 0; node < g.node_count(); ++node)
    out << mask_of(g.node_class(node).tag) << "\n";

  if (!out.good()) throw IoError("write to '" + path.string() + "' failed");
}

DirectorField read_vtk(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

  std::string line;
  if (!std::getline(in, line) || line.rfind("# vtk DataFile", 0) != 0)
    throw IoError("'" + path.string() + "' is not a legacy VTK file");

  std::string title;
  if (!std::getline(in, title)) throw IoError("missing VTK title line");

  auto title_value = [&](const std::string& key) -> double {
    const std::string needle = " " + key + "=";
    auto pos = title.find(needle);
    if (pos == std::string::npos)
      throw IoError("VTK title does not carry the grid parameter '" + key + "'");
    return std::stod(title.substr(pos + needle.size()));
  };

  CellParams params;
  params.Lc = title_value("Lc");
  params.Lp = title_value("Lp");
  params.H = title_value("H");
  params.h = title_value("h");
  params.N = static_cast<int>(title_value("N"));

  if (!std::getline(in, line) || line != "ASCII") throw IoError("expected ASCII VTK data");
  if (!std::getline(in, line) || line != "DATASET STRUCTURED_POINTS")
    throw IoError("expected DATASET STRUCTURED_POINTS");

  GeometryPtr geom;
  try {
    geom = build_geometry_shared(params);
  } catch (const Error& e) {
    throw IoError("VTK grid parameters are invalid: " + std::string(e.what()));
  }

  std::size_t npoints = 0;
  int dims[3] = {0, 0, 0};
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "DIMENSIONS") {
      ls >> dims[0] >> dims[1] >> dims[2];
    } else if (key == "POINT_DATA") {
      ls >> npoints;
      break;
    }
  }
  if (dims[0] != geom->nx() || dims[1] != geom->ny() || dims[2] != geom->nz_levels())
    throw IoError("VTK dimensions do not match the title parameters");
  if (npoints != geom->node_count()) throw IoError("POINT_DATA count mismatch");

  DirectorField field(geom);
  bool have_vectors = false;
  while (in >> line) {
    if (line == "VECTORS") {
      std::string name, type;
      in >> name >> type;
      for (std::size_t node = 0; node < npoints; ++node) {
        double x, y, z;
        if (!(in >> x >> y >> z)) throw IoError("truncated director data");
        field[node] = {x, y, z};
      }
      have_vectors = true;
    } else if (line == "SCALARS") {
      std::string name, type;
      in >> name >> type;
      in >> line;  // LOOKUP_TABLE
      in >> line;  // default
      for (std::size_t node = 0; node < npoints; ++node) {
        int m;
        if (!(in >> m)) throw IoError("truncated mask data");
        if (m != mask_of(geom->node_class(node).tag))
          throw IoError("mask does not match the grid classification at node " +
                        std::to_string(node));
      }
    }
  }
  if (!have_vectors) throw IoError("no director array in '" + path.string() + "'");

  return normalize_field(field);
}

}  // namespace pabn
