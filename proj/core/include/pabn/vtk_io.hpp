#pragma once

#include <filesystem>
#include <string>

#include "pabn/director.hpp"

namespace pabn {

/// Writes the field as legacy ASCII VTK structured points: a `director`
/// float vector array (zeros at excluded nodes) plus an int `mask` array
/// (0 = excluded, 1 = active, 2 = fixed). The title line carries the grid
/// parameters so the file is self-describing. Throws IoError.
void write_vtk(const DirectorField& field, const std::filesystem::path& path,
               const std::string& label = "");

/// Reads a file written by write_vtk: rebuilds the geometry from the title
/// parameters, checks dimensions and mask against it, and returns the
/// stored field renormalized to unit vectors. Throws IoError.
DirectorField read_vtk(const std::filesystem::path& path);

}  // namespace pabn
