#include "pcf/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "pcf/assembly.hpp"
#include "pcf/dpcf.hpp"
#include "pcf/error.hpp"
#include "pcf/idt.hpp"
#include "pcf/metrics.hpp"
#include "pcf/obj_io.hpp"
#include "pcf/spcf.hpp"

namespace pcf {

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

json vec_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

std::vector<double> image_angles(std::span<const Vec2> coords, const std::vector<Face>& faces) {
  std::vector<double> out;
  out.reserve(3 * faces.size());
  for (const Face& t : faces) {
    for (int k = 0; k < 3; ++k) {
      const Vec2 u = coords[t[(k + 1) % 3]] - coords[t[k]];
      const Vec2 v = coords[t[(k + 2) % 3]] - coords[t[k]];
      out.push_back(std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v)));
    }
  }
  return out;
}

double max_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Mean angle error over faces touching a seam versus over all faces.
json seam_distortion(const CutMesh& cut, const AngleErrors& delta) {
  double seam_sum = 0.0, all_sum = 0.0;
  int seam_n = 0, all_n = 0;
  for (int f = 0; f < cut.mesh.num_faces(); ++f) {
    bool seam = false;
    for (int c : cut.mesh.face(f)) seam = seam || cut.on_seam(c);
    for (int k = 0; k < 3; ++k) {
      const double d = delta.delta[3 * f + k];
      if (std::isnan(d)) continue;
      all_sum += d;
      ++all_n;
      if (seam) {
        seam_sum += d;
        ++seam_n;
      }
    }
  }
  return {{"delta_mean_seam", seam_n ? seam_sum / seam_n : 0.0},
          {"delta_mean_all", all_n ? all_sum / all_n : 0.0}};
}

double planar_conformal_energy(const SurfaceMesh& mesh, std::span<const Vec2> coords) {
  const SparseSym lap = cotan_laplacian(mesh);
  Eigen::VectorXd x(mesh.num_vertices()), y(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    x(v) = coords[v].x();
    y(v) = coords[v].y();
  }
  double area = 0.0;
  for (const Face& t : mesh.faces()) {
    const Vec2 u = coords[t[1]] - coords[t[0]];
    const Vec2 v = coords[t[2]] - coords[t[0]];
    area += 0.5 * (u.x() * v.y() - u.y() * v.x());
  }
  return 0.5 * (x.dot(lap.multiply(x)) + y.dot(lap.multiply(y))) - area;
}

struct Stage {
  Stopwatch clock;
  std::map<std::string, double> timings;
  void mark(const std::string& name) { timings[name] += clock.lap(); }
};

void run_torus(const SurfaceMesh& input, const SurfaceMesh& active, const RunOptions& opt,
               Stage& stage, RunResult& out, DistortionReport& dist) {
  if (opt.loops && !opt.loops->genus_one) throw InputError("torus mode needs alpha and beta loops");
  const Topology topo = topology(active);
  if (topo.boundary_count != 0 || topo.genus != 1) {
    throw TopologyError("torus mode needs a closed genus-one mesh (genus " + std::to_string(topo.genus) +
                        ", " + std::to_string(topo.boundary_count) + " boundaries)");
  }
  const auto paths = opt.loops ? *opt.loops->genus_one : find_cut_system_genus1(active, 0);
  const std::array<CutPath, 2> system{paths.first, paths.second};
  const CutMesh cut = cut_along(active, system);
  stage.mark("cut");
  const SparseSym cut_lap = cut_laplacian(cut);
  const FlatLayout layout = solve_doubly_periodic(cut, cut_lap, opt.tol);
  stage.mark("solve");
  if (!(layout.h.y() > 0.0)) throw NumericalError("lattice vector h has non-positive height");

  const double energy = conformal_energy(layout, cut_lap, cut).conformal;
  const AngleErrors delta = angle_error(cut.mesh, layout.coords, cut.mesh.faces());
  const BeltramiValues mu = beltrami(cut.mesh, layout.coords, cut.mesh.faces());
  dist = aggregate(delta.delta, mu.mu, fold_count(layout.coords, cut.mesh.faces()), energy);
  dist.n_vertices = active.num_vertices();
  out.report["lattice"] = {{"h", vec_json(layout.h)}, {"t", vec_json(layout.t)}};
  out.report["seam"] = seam_distortion(cut, delta);
  out.report["cut"] = loops_json({paths.first, paths.second});

  if (opt.idt || opt.original_faces) {
    const UvMesh uv = unwrap_faces(layout, cut, input.faces());
    DistortionReport orig = measure(input, uv.uv, uv.faces, energy);
    orig.n_vertices = input.num_vertices();
    out.report["original_connectivity"] = report_json(orig, false);
    out.uv_obj = opt.original_faces ? write_obj_with_uv(input, uv) : write_obj_with_uv(active, layout, cut);
  } else {
    out.uv_obj = write_obj_with_uv(active, layout, cut);
  }
  stage.mark("metrics");

  if (opt.compare) {
    const auto other = find_homologous_cut_system(active, cut);
    json cmp = {{"distinct_cuts", other.has_value()}};
    if (other) {
      const std::array<CutPath, 2> second{other->first, other->second};
      const CutMesh cut2 = cut_along(active, second);
      const FlatLayout layout2 = solve_doubly_periodic(cut2, cut_laplacian(cut2), opt.tol);
      const double diff = max_difference(image_angles(layout.coords, cut.mesh.faces()),
                                         image_angles(layout2.coords, cut2.mesh.faces()));
      const LatticeRelation rel = relate_lattices(layout.h, layout.t, layout2.h, layout2.t);
      cmp["cut"] = loops_json({other->first, other->second});
      cmp["homology"] = {{"alpha", homology_class(active, cut, other->first)},
                         {"beta", homology_class(active, cut, other->second)}};
      cmp["max_angle_difference"] = diff;
      cmp["lattice_residual"] = rel.residual;
      cmp["unimodular"] = rel.unimodular;
      cmp["similarity"] = vec_json(rel.similarity);
      cmp["passed"] = diff <= 1e-8 && rel.residual <= 1e-6;
    }
    out.report["compare"] = cmp;
    stage.mark("compare");
  }
}

void run_annulus(const SurfaceMesh& input, const SurfaceMesh& active, const RunOptions& opt,
                 Stage& stage, RunResult& out, DistortionReport& dist) {
  if (opt.loops && !opt.loops->cross) throw InputError("annulus mode needs a cross path");
  const Topology topo = topology(active);
  if (topo.genus != 0 || topo.boundary_count != 2) {
    throw TopologyError("annulus mode needs a genus-zero mesh with 2 boundaries (genus " +
                        std::to_string(topo.genus) + ", " + std::to_string(topo.boundary_count) +
                        " boundaries)");
  }
  const CutPath cross = opt.loops ? *opt.loops->cross : find_cross_path(active);
  stage.mark("cut");
  const StripFlattening strip = flatten_strip(active, cross, opt.tol);
  const AnnulusResult annulus = exp_to_annulus(strip);
  stage.mark("solve");

  const CutMesh& cut = strip.cut;
  const double energy = conformal_energy(strip.layout, cut_laplacian(cut), cut).conformal;
  const AngleErrors strip_delta = angle_error(cut.mesh, strip.layout.coords, cut.mesh.faces());
  DistortionReport strip_report =
      aggregate(strip_delta.delta, beltrami(cut.mesh, strip.layout.coords, cut.mesh.faces()).mu,
                fold_count(strip.layout.coords, cut.mesh.faces()), energy);
  strip_report.n_vertices = cut.mesh.num_vertices();
  dist = measure(active, annulus.coords, active.faces(), planar_conformal_energy(active, annulus.coords));
  out.report["strip"] = {{"t", vec_json(strip.layout.t)}, {"distortion", report_json(strip_report, false)}};
  out.report["annulus"] = {{"modulus", annulus.modulus}, {"inner_radius", annulus.inner_radius}};
  out.report["seam"] = seam_distortion(cut, strip_delta);
  out.report["cut"] = loops_json({cross});
  if (opt.idt || opt.original_faces) {
    DistortionReport orig = measure(input, annulus.coords, input.faces(), dist.energy);
    out.report["original_connectivity"] = report_json(orig, false);
  }
  const SurfaceMesh& uv_mesh = opt.original_faces ? input : active;
  out.uv_obj = write_obj_with_uv(uv_mesh, UvMesh{annulus.coords, uv_mesh.faces()});
  stage.mark("metrics");

  if (opt.compare) {
    auto loops = boundary_loops(active);
    const auto& outer = loops.back().vertices;
    const auto pos = std::find(outer.begin(), outer.end(), cross.vertices.front());
    const std::size_t start = pos == outer.end() ? 0 : static_cast<std::size_t>(pos - outer.begin());
    const int source = outer[(start + outer.size() / 2) % outer.size()];
    const CutPath cross2 = find_cross_path(active, loops.back(), loops.front(), source);
    const StripFlattening strip2 = flatten_strip(active, cross2, opt.tol);
    const double diff = max_difference(image_angles(strip.layout.coords, cut.mesh.faces()),
                                       image_angles(strip2.layout.coords, strip2.cut.mesh.faces()));
    const double dt = std::abs(strip2.layout.t.x() - strip.layout.t.x()) / strip.layout.t.x();
    out.report["compare"] = {{"distinct_cuts", cross2.vertices != cross.vertices},
                             {"cut", loops_json({cross2})},
                             {"max_angle_difference", diff},
                             {"modulus_relative_difference", dt},
                             {"passed", diff <= 1e-8 && dt <= 1e-8}};
    stage.mark("compare");
  }
}

void run_polyannulus(const SurfaceMesh& input, const SurfaceMesh& active, const RunOptions& opt,
                     Stage& stage, RunResult& out, DistortionReport& dist) {
  if (opt.loops) throw InputError("poly-annulus mode takes no loops override");
  const PolyAnnulusResult poly = flatten_polyannulus(active, opt.tol);
  stage.mark("solve");
  dist = measure(active, poly.coords, active.faces(), planar_conformal_energy(active, poly.coords));
  json circles = json::array();
  for (const auto& c : poly.circles) circles.push_back({{"center", vec_json(c.center)}, {"radius", c.radius}});
  out.report["circles"] = circles;
  if (opt.idt || opt.original_faces) {
    DistortionReport orig = measure(input, poly.coords, input.faces(), dist.energy);
    out.report["original_connectivity"] = report_json(orig, false);
  }
  const SurfaceMesh& uv_mesh = opt.original_faces ? input : active;
  out.uv_obj = write_obj_with_uv(uv_mesh, UvMesh{poly.coords, uv_mesh.faces()});
  stage.mark("metrics");
  if (opt.compare) out.report["compare"] = {{"distinct_cuts", false}, {"passed", nullptr}};
}

int thread_cap() {
  const char* env = std::getenv("FLATTEN_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw InputError("FLATTEN_THREADS must be a positive integer");
  return static_cast<int>(n);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "torus") return Mode::torus;
  if (name == "annulus") return Mode::annulus;
  if (name == "polyannulus") return Mode::polyannulus;
  throw InputError("unknown mode " + name);
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::torus: return "torus";
    case Mode::annulus: return "annulus";
    case Mode::polyannulus: return "polyannulus";
  }
  return "";
}

RunResult flatten_mesh(const SurfaceMesh& mesh, const RunOptions& opt) {
  if (!(opt.tol > 0.0)) throw InputError("tolerance must be positive");
  Stage stage;
  RunResult out;
  out.report = {{"schema", 1}, {"mode", mode_name(opt.mode)}};
  const Topology topo = topology(mesh);
  out.report["input"] = {{"n_vertices", mesh.num_vertices()}, {"n_faces", mesh.num_faces()},
                         {"genus", topo.genus}, {"boundary_count", topo.boundary_count},
                         {"intrinsic", mesh.intrinsic()}};

  SurfaceMesh active = mesh;
  out.flip_log = json::array();
  if (opt.idt) {
    const IntrinsicMesh idt = make_intrinsic_delaunay(mesh);
    active = idt.surface();
    out.flip_log = flip_log_json(idt.flips);
    stage.mark("idt");
  }
  out.report["idt"] = {{"enabled", opt.idt}, {"flips", out.flip_log.size()}};

  DistortionReport dist;
  switch (opt.mode) {
    case Mode::torus: run_torus(mesh, active, opt, stage, out, dist); break;
    case Mode::annulus: run_annulus(mesh, active, opt, stage, out, dist); break;
    case Mode::polyannulus: run_polyannulus(mesh, active, opt, stage, out, dist); break;
  }
  dist.timings = stage.timings;
  out.report["distortion"] = report_json(dist);
  return out;
}

json strip_timings(json report) {
  if (report.is_object()) {
    report.erase("timings");
    for (auto& [key, value] : report.items()) value = strip_timings(value);
  }
  return report;
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    Stopwatch load_clock;
    const int threads = thread_cap();
    if (threads > 0) Eigen::setNbThreads(threads);
    RunOptions opt = config.options;
    if (config.loops) opt.loops = parse_loops(read_json_file(*config.loops));
    SurfaceMesh mesh = load_obj_file(config.input);
    if (config.metric) {
      mesh = SurfaceMesh(mesh.positions(), mesh.faces(), parse_length_table(read_json_file(*config.metric)));
    }
    const double load_time = load_clock.lap();
    RunResult result = flatten_mesh(mesh, opt);
    result.report["distortion"]["timings"]["load"] = load_time;
    result.report["input"]["path"] = config.input.filename().string();
    if (config.out) write_text(*config.out, result.uv_obj);
    if (config.report) write_text(*config.report, result.report.dump(2) + "\n");
    if (config.flip_log) write_text(*config.flip_log, result.flip_log.dump(2) + "\n");
    return 0;
  } catch (const TopologyError& e) {
    err << "topology error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pcf
