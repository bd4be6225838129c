#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pcf/mesh.hpp"

namespace pcf {

/// Per-corner absolute angle error in degrees, three entries per face.
/// Corners of degenerate image triangles are NaN and counted in `flagged`.
struct AngleErrors {
  std::vector<double> delta;
  int flagged = 0;
};

/// `source` supplies the reference angles under its active metric; face f of
/// the image is image_faces[f] over `coords`.
AngleErrors angle_error(const SurfaceMesh& source, std::span<const Vec2> coords,
                        const std::vector<Face>& image_faces);
AngleErrors angle_error(const SurfaceMesh& source, std::span<const Vec2> coords);

/// Per-face |mu| of the affine map from the source triangle to its image.
/// Faces with a vanishing conformal part get +infinity and are counted.
struct BeltramiValues {
  std::vector<double> mu;
  int flagged = 0;
};

BeltramiValues beltrami(const SurfaceMesh& source, std::span<const Vec2> coords,
                        const std::vector<Face>& image_faces);
BeltramiValues beltrami(const SurfaceMesh& source, std::span<const Vec2> coords);

/// |mu| of the affine map with Jacobian j.
double beltrami_modulus(const Eigen::Matrix2d& j);

/// Faces whose signed area does not share the sign of the total area;
/// zero-area faces count.
int fold_count(std::span<const Vec2> coords, const std::vector<Face>& faces);

struct DistortionReport {
  double delta_mean = 0.0;
  double delta_std = 0.0;
  double mu100_mean = 0.0;
  double mu100_std = 0.0;
  int fold_count = 0;
  double energy = 0.0;
  int n_faces = 0;
  int n_vertices = 0;
  int flagged_corners = 0;
  int flagged_faces = 0;
  std::map<std::string, double> timings;
};

/// Population statistics (divisor n) over the finite entries; NaN and +inf
/// entries are skipped. Throws InputError on empty input.
DistortionReport aggregate(std::span<const double> delta, std::span<const double> mu, int folds,
                           double energy, const std::map<std::string, double>& timings = {});

/// Convenience wrapper: angle error, Beltrami and folds of one layout.
DistortionReport measure(const SurfaceMesh& source, std::span<const Vec2> coords,
                         const std::vector<Face>& image_faces, double energy);

}  // namespace pcf
