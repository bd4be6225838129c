#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "pcf/layout.hpp"
#include "pcf/mesh.hpp"

namespace pcf {

struct CutMesh;

/// Texture coordinates with their own face indexing (the `vt` side of an OBJ).
struct UvMesh {
  std::vector<Vec2> uv;
  std::vector<Face> faces;
};

/// Parses `v` and `f` records; polygons are fan-triangulated, everything else
/// is ignored. Indices may be 1-based or negative (relative).
SurfaceMesh load_obj(std::istream& in);
SurfaceMesh load_obj_string(const std::string& text);
SurfaceMesh load_obj_file(const std::filesystem::path& path);

/// Plain OBJ with 17 significant digits per coordinate.
std::string write_obj(const SurfaceMesh& mesh);

/// OBJ with `v`, `vt` and `f v/vt` records. uv.faces must parallel mesh.faces().
std::string write_obj_with_uv(const SurfaceMesh& mesh, const UvMesh& uv);

/// One `vt` per cut-mesh vertex; seam faces reference the duplicated copies.
std::string write_obj_with_uv(const SurfaceMesh& mesh, const FlatLayout& layout,
                              const CutMesh& cut);

}  // namespace pcf
