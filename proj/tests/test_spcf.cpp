#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pcf/assembly.hpp"
#include "pcf/cut.hpp"
#include "pcf/error.hpp"
#include "pcf/idt.hpp"
#include "pcf/metrics.hpp"
#include "pcf/spcf.hpp"

using namespace pcf;

namespace {

constexpr double kPi = std::numbers::pi;

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

}  // namespace

TEST_CASE("unit cylinder strip") {
  const int n = 64;
  const SurfaceMesh m = fixtures::cylinder(fixtures::unit_perimeter_radius(n), 1.0, n, 32);
  const StripFlattening s = flatten_strip(m);
  CHECK(std::abs(s.layout.t.x() - 2 * kPi) <= 1e-6);
  CHECK(s.layout.t.y() == 0.0);
  CHECK(s.layout.coords[s.cut.corners[0]] == Vec2(0, 0));

  // Outer rows at y = 0 and inner rows at y = 1, copies shifted by t.
  const auto loops = boundary_loops(m);
  for (int c = 0; c < s.cut.mesh.num_vertices(); ++c) {
    const int v = s.cut.origin[c];
    if (contains(loops.back().vertices, v)) CHECK(s.layout.coords[c].y() == 0.0);
    if (contains(loops.front().vertices, v)) CHECK(s.layout.coords[c].y() == 1.0);
    const Vec2 expected = s.layout.coords[s.cut.representative[v]] + s.cut.shift[c][1] * s.layout.t;
    CHECK((s.layout.coords[c] - expected).norm() <= 1e-12);
  }
  CHECK(mean(beltrami(s.cut.mesh, s.layout.coords).mu) <= 1e-8);

  const AnnulusResult a = exp_to_annulus(s);
  CHECK(std::abs(a.inner_radius - std::exp(-1.0)) <= 1e-6);
}

TEST_CASE("radius-one cylinder matches its developed strip") {
  // Developable oracle: the strip width is the polygon perimeter.
  const int n = 48;
  const SurfaceMesh m = fixtures::cylinder(1.0, 1.0, n, 16);
  const StripFlattening s = flatten_strip(m);
  const double perimeter = 2 * n * std::sin(kPi / n);
  CHECK(s.layout.t.x() == doctest::Approx(perimeter).epsilon(1e-10));
}

TEST_CASE("cone frustum modulus") {
  // Unrolled frustum: an annular sector of angle 2 pi (r1 - r2) / s between
  // radii proportional to r1 and r2; the logarithm turns it into a strip.
  const double r1 = 1.0, r2 = 0.5, height = 0.8;
  const double slant = std::hypot(r1 - r2, height);
  const double exact = 2 * kPi * (r1 - r2) / (slant * std::log(r1 / r2));
  const StripFlattening s = flatten_strip(fixtures::frustum(r1, r2, height, 96, 48));
  CHECK(std::abs(s.layout.t.x() - exact) <= 0.01 * exact);
}

TEST_CASE("planar annulus modulus") {
  const double rho = 0.4;
  const StripFlattening s = flatten_strip(fixtures::planar_annulus(rho, 96, 24));
  const double exact = 2 * kPi / std::log(1 / rho);
  CHECK(std::abs(s.layout.t.x() - exact) <= 0.01 * exact);
}

TEST_CASE("strip balance at free vertices") {
  for (const SurfaceMesh& m : {fixtures::frustum(1, 0.5, 0.8, 40, 12), fixtures::planar_annulus(0.3, 40, 12)}) {
    const StripFlattening s = flatten_strip(m);
    const SparseSym lap = cut_laplacian(s.cut);
    const int nc = s.cut.mesh.num_vertices();
    Eigen::VectorXd x(nc), y(nc);
    for (int c = 0; c < nc; ++c) {
      x(c) = s.layout.coords[c].x();
      y(c) = s.layout.coords[c].y();
    }
    const Eigen::VectorXd lx = lap.multiply(x), ly = lap.multiply(y);
    Eigen::MatrixXd folded = Eigen::MatrixXd::Zero(s.cut.num_original_vertices(), 2);
    for (int c = 0; c < nc; ++c) {
      folded(s.cut.origin[c], 0) += lx(c);
      folded(s.cut.origin[c], 1) += ly(c);
    }
    double worst = 0.0;
    for (int v = 0; v < m.num_vertices(); ++v) {
      if (!m.is_boundary_vertex(v)) worst = std::max(worst, folded.row(v).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("two cross paths give the same strip") {
  for (const SurfaceMesh& m : {fixtures::frustum(1, 0.5, 0.8, 40, 12), fixtures::planar_annulus(0.3, 40, 12),
                               fixtures::cylinder(1, 1.5, 30, 10)}) {
    const auto loops = boundary_loops(m);
    const CutPath first = find_cross_path(m);
    const int source = loops.back().vertices[loops.back().vertices.size() / 2];
    const CutPath second = find_cross_path(m, loops.back(), loops.front(), source);
    REQUIRE(first.vertices != second.vertices);
    const StripFlattening a = flatten_strip(m, first);
    const StripFlattening b = flatten_strip(m, second);
    const double gap = oracles::angle_multiset_gap(oracles::face_angles(a.layout.coords, a.cut.mesh.faces()),
                                                   oracles::face_angles(b.layout.coords, b.cut.mesh.faces()));
    CHECK(gap <= 1e-8);
    CHECK(std::abs(a.layout.t.x() - b.layout.t.x()) <= 1e-9 * a.layout.t.x());
  }
}

TEST_CASE("strip to annulus") {
  const double l = 5.0;
  CHECK((strip_to_annulus({0, 0}, l) - Vec2(1, 0)).norm() <= 1e-15);
  CHECK((strip_to_annulus({l / 2, 0}, l) - Vec2(-1, 0)).norm() <= 1e-15);
  CHECK(strip_to_annulus({1.3, 1}, l).norm() == doctest::Approx(std::exp(-2 * kPi / l)).epsilon(1e-15));
  CHECK((strip_to_annulus({0.7 + l, 0.4}, l) - strip_to_annulus({0.7, 0.4}, l)).norm() <= 1e-14);
}

TEST_CASE("annulus boundaries are concentric circles") {
  const SurfaceMesh m = fixtures::frustum(1, 0.5, 0.8, 48, 16);
  const StripFlattening s = flatten_strip(m);
  const AnnulusResult a = exp_to_annulus(s);
  REQUIRE(static_cast<int>(a.coords.size()) == m.num_vertices());
  CHECK(a.modulus == s.layout.t.x());
  CHECK(a.inner_radius == doctest::Approx(std::exp(-2 * kPi / a.modulus)).epsilon(1e-15));
  const auto loops = boundary_loops(m);
  for (int v : loops.back().vertices) CHECK(std::abs(a.coords[v].norm() - 1.0) <= 1e-12);
  for (int v : loops.front().vertices) CHECK(std::abs(a.coords[v].norm() - a.inner_radius) <= 1e-12);
  // Seam copies land on the same point.
  for (int c = 0; c < s.cut.mesh.num_vertices(); ++c) {
    const Vec2 p = strip_to_annulus(s.layout.coords[c], a.modulus);
    CHECK((p - a.coords[s.cut.origin[c]]).norm() <= 1e-12);
  }
  CHECK(fold_count(a.coords, m.faces()) == 0);
}

TEST_CASE("strip errors") {
  CHECK_THROWS_AS(flatten_strip(fixtures::torus_of_revolution(2, 1, 8, 8)), TopologyError);
  CHECK_THROWS_AS(flatten_strip(fixtures::single_triangle()), TopologyError);
}

TEST_CASE("circle fit") {
  std::vector<Vec2> points;
  for (int k = 0; k < 7; ++k) points.push_back(Vec2(0.3, -0.2) + 0.45 * Vec2(std::cos(0.4 * k), std::sin(0.4 * k)));
  Circle c = fit_circle(points);
  CHECK((c.center - Vec2(0.3, -0.2)).norm() <= 1e-12);
  CHECK(std::abs(c.radius - 0.45) <= 1e-12);

  // With noise the fit minimizes radial residuals: moving it makes things worse.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  for (Vec2& p : points) p += Vec2(noise(rng), noise(rng));
  c = fit_circle(points);
  auto cost = [&](const Vec2& center, double r) {
    double s = 0.0;
    for (const Vec2& p : points) s += std::pow((p - center).norm() - r, 2);
    return s;
  };
  const double best = cost(c.center, c.radius);
  for (const Vec2& d : {Vec2(1e-4, 0), Vec2(0, 1e-4), Vec2(-1e-4, 0), Vec2(0, -1e-4)}) {
    CHECK(cost(c.center + d, c.radius) >= best);
  }
  CHECK(cost(c.center, c.radius + 1e-4) >= best);
  CHECK(cost(c.center, c.radius - 1e-4) >= best);

  CHECK_THROWS_AS(fit_circle(std::vector<Vec2>{{0, 0}, {1, 0}}), GeometryError);
}

TEST_CASE("poly-annulus on a disk with two holes") {
  const SurfaceMesh m = fixtures::disk_with_two_holes(96, 32);
  const PolyAnnulusResult r = flatten_polyannulus(m);
  REQUIRE(r.circles.size() == 3);
  REQUIRE(r.loops.size() == 3);
  CHECK(r.circles.back().center == Vec2(0, 0));
  CHECK(r.circles.back().radius == 1.0);
  for (std::size_t i = 0; i < r.loops.size(); ++i) {
    double worst = 0.0;
    for (int v : r.loops[i].vertices) {
      worst = std::max(worst, std::abs((r.coords[v] - r.circles[i].center).norm() - r.circles[i].radius));
    }
    CHECK(worst / r.circles[i].radius <= 1e-9);
  }
  // Holes sit inside the unit disk and do not overlap.
  const Circle& c0 = r.circles[0];
  const Circle& c1 = r.circles[1];
  CHECK(c0.center.norm() + c0.radius < 1.0);
  CHECK(c1.center.norm() + c1.radius < 1.0);
  CHECK((c0.center - c1.center).norm() > c0.radius + c1.radius);
  CHECK(fold_count(r.coords, m.faces()) == 0);

  // Interior vertices satisfy the fixed-boundary harmonic equations.
  const SparseSym lap = cotan_laplacian(m);
  Eigen::VectorXd x(m.num_vertices()), y(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    x(v) = r.coords[v].x();
    y(v) = r.coords[v].y();
  }
  const Eigen::VectorXd lx = lap.multiply(x), ly = lap.multiply(y);
  double worst = 0.0;
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (!m.is_boundary_vertex(v)) worst = std::max({worst, std::abs(lx(v)), std::abs(ly(v))});
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("poly-annulus with one hole matches the annulus map") {
  const SurfaceMesh m = fixtures::frustum(1, 0.5, 0.8, 64, 20);
  const PolyAnnulusResult r = flatten_polyannulus(m);
  const AnnulusResult a = exp_to_annulus(flatten_strip(m));
  REQUIRE(r.circles.size() == 2);
  CHECK(std::abs(r.circles[0].radius - a.inner_radius) <= 1e-9);
  CHECK(r.circles[0].center.norm() <= 1e-9);
}

TEST_CASE("poly-annulus errors") {
  CHECK_THROWS_AS(flatten_polyannulus(fixtures::torus_of_revolution(2, 1, 8, 8)), TopologyError);
  CHECK_THROWS_AS(flatten_polyannulus(fixtures::single_triangle()), TopologyError);
}

TEST_CASE("strip after intrinsic flips has no folds") {
  const SurfaceMesh idt = make_intrinsic_delaunay(fixtures::planar_annulus(0.3, 40, 12)).surface();
  const StripFlattening s = flatten_strip(idt);
  CHECK(fold_count(s.layout.coords, s.cut.mesh.faces()) == 0);
}
