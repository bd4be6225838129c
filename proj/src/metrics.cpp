#include "pcf/metrics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "pcf/error.hpp"

namespace pcf {

namespace {

constexpr double kDegrees = 180.0 / std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

void check_faces(const SurfaceMesh& source, std::span<const Vec2> coords,
                 const std::vector<Face>& image_faces) {
  if (static_cast<int>(image_faces.size()) != source.num_faces()) {
    throw InputError("layout face count does not match the source mesh");
  }
  for (const Face& f : image_faces) {
    for (int v : f) {
      if (v < 0 || v >= static_cast<int>(coords.size())) throw InputError("layout does not cover all corners");
    }
  }
}

// Source triangle laid out with edge (0,1) on the +x axis.
std::array<Vec2, 3> source_chart(const SurfaceMesh& mesh, int f) {
  const auto l = mesh.face_lengths(f);
  const double c = l[2], b = l[1], a = l[0];
  const double x = (b * b - a * a + c * c) / (2.0 * c);
  const double y = std::sqrt(std::max(0.0, b * b - x * x));
  return {Vec2(0.0, 0.0), Vec2(c, 0.0), Vec2(x, y)};
}

}  // namespace

AngleErrors angle_error(const SurfaceMesh& source, std::span<const Vec2> coords,
                        const std::vector<Face>& image_faces) {
  check_faces(source, coords, image_faces);
  const auto angles = corner_angles(source);
  AngleErrors out;
  out.delta.resize(3 * image_faces.size());
  for (std::size_t f = 0; f < image_faces.size(); ++f) {
    const Face& t = image_faces[f];
    const double a = (coords[t[1]] - coords[t[2]]).norm();
    const double b = (coords[t[2]] - coords[t[0]]).norm();
    const double c = (coords[t[0]] - coords[t[1]]).norm();
    const double longest = std::max({a, b, c});
    const double area = std::abs(cross(coords[t[1]] - coords[t[0]], coords[t[2]] - coords[t[0]])) / 2.0;
    if (!(longest > 0.0) || area <= 1e-14 * longest * longest) {
      for (int k = 0; k < 3; ++k) out.delta[3 * f + k] = std::numeric_limits<double>::quiet_NaN();
      out.flagged += 3;
      continue;
    }
    const auto image = triangle_angles(a, b, c);
    for (int k = 0; k < 3; ++k) out.delta[3 * f + k] = std::abs(angles[f][k] - image[k]) * kDegrees;
  }
  return out;
}

AngleErrors angle_error(const SurfaceMesh& source, std::span<const Vec2> coords) {
  return angle_error(source, coords, source.faces());
}

double beltrami_modulus(const Eigen::Matrix2d& j) {
  const std::complex<double> fz(0.5 * (j(0, 0) + j(1, 1)), 0.5 * (j(1, 0) - j(0, 1)));
  const std::complex<double> fzbar(0.5 * (j(0, 0) - j(1, 1)), 0.5 * (j(1, 0) + j(0, 1)));
  // Roundoff-level conformal part counts as zero.
  if (std::abs(fz) <= 1e-14 * std::abs(fzbar)) return std::numeric_limits<double>::infinity();
  return std::abs(fzbar) / std::abs(fz);
}

BeltramiValues beltrami(const SurfaceMesh& source, std::span<const Vec2> coords,
                        const std::vector<Face>& image_faces) {
  check_faces(source, coords, image_faces);
  BeltramiValues out;
  out.mu.resize(image_faces.size());
  for (std::size_t f = 0; f < image_faces.size(); ++f) {
    const auto p = source_chart(source, static_cast<int>(f));
    const Face& t = image_faces[f];
    Eigen::Matrix2d src, img;
    src << p[1] - p[0], p[2] - p[0];
    img << coords[t[1]] - coords[t[0]], coords[t[2]] - coords[t[0]];
    const double mu = beltrami_modulus(img * src.inverse());
    if (std::isinf(mu)) ++out.flagged;
    out.mu[f] = mu;
  }
  return out;
}

BeltramiValues beltrami(const SurfaceMesh& source, std::span<const Vec2> coords) {
  return beltrami(source, coords, source.faces());
}

int fold_count(std::span<const Vec2> coords, const std::vector<Face>& faces) {
  std::vector<double> signed_area(faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Face& t = faces[f];
    signed_area[f] = cross(coords[t[1]] - coords[t[0]], coords[t[2]] - coords[t[0]]) / 2.0;
    total += signed_area[f];
  }
  const double sign = total < 0.0 ? -1.0 : 1.0;
  int folds = 0;
  for (double a : signed_area) {
    if (!(sign * a > 0.0)) ++folds;
  }
  return folds;
}

DistortionReport aggregate(std::span<const double> delta, std::span<const double> mu, int folds,
                           double energy, const std::map<std::string, double>& timings) {
  if (delta.empty() || mu.empty()) throw InputError("no values to aggregate");
  auto stats = [](std::span<const double> values, double scale, double& mean, double& std_dev) {
    double sum = 0.0;
    int n = 0;
    for (double v : values) {
      if (!std::isfinite(v)) continue;
      sum += scale * v;
      ++n;
    }
    if (n == 0) throw InputError("no finite values to aggregate");
    mean = sum / n;
    double sq = 0.0;
    for (double v : values) {
      if (std::isfinite(v)) sq += (scale * v - mean) * (scale * v - mean);
    }
    std_dev = std::sqrt(sq / n);
  };
  DistortionReport r;
  stats(delta, 1.0, r.delta_mean, r.delta_std);
  stats(mu, 100.0, r.mu100_mean, r.mu100_std);
  for (double v : delta) r.flagged_corners += std::isnan(v) ? 1 : 0;
  for (double v : mu) r.flagged_faces += std::isinf(v) ? 1 : 0;
  r.fold_count = folds;
  r.energy = energy;
  r.n_faces = static_cast<int>(mu.size());
  r.timings = timings;
  return r;
}

DistortionReport measure(const SurfaceMesh& source, std::span<const Vec2> coords,
                         const std::vector<Face>& image_faces, double energy) {
  const AngleErrors delta = angle_error(source, coords, image_faces);
  const BeltramiValues mu = beltrami(source, coords, image_faces);
  DistortionReport r = aggregate(delta.delta, mu.mu, fold_count(coords, image_faces), energy);
  r.n_vertices = source.num_vertices();
  return r;
}

}  // namespace pcf
