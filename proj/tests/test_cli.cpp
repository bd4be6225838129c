#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fixtures.hpp"
#include "pcf/json_io.hpp"
#include "pcf/obj_io.hpp"
#include "pcf/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pcf;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("flatten_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code(int status) {
#ifdef _WIN32
  return status;
#else
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
}

int flatten(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" FLATTEN_EXE "\" " + args + " 2>/dev/null";
  return exit_code(std::system(cmd.c_str()));
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("torus run writes a report and UVs") {
  TempDir dir;
  write_file(dir / "t.obj", write_obj(fixtures::bumpy_torus(24, 16)));
  REQUIRE(flatten("torus " + q(dir / "t.obj") + " --out " + q(dir / "uv.obj") + " --report " +
                  q(dir / "r.json")) == 0);
  const json r = json::parse(read_file(dir / "r.json"));
  CHECK(r["schema"] == 1);
  CHECK(r["mode"] == "torus");
  CHECK(r["lattice"]["h"].size() == 2);
  CHECK(r["lattice"]["t"] == json::array({1.0, 0.0}));
  CHECK(r["lattice"]["h"][1].get<double>() > 0.0);
  const json& d = r["distortion"];
  for (const char* key : {"delta_mean", "delta_std", "mu100_mean", "mu100_std", "fold_count", "energy",
                          "n_faces", "n_vertices", "timings"}) {
    CHECK_MESSAGE(d.contains(key), key);
  }
  CHECK(d["std_convention"] == "population");
  CHECK(d["fold_count"] == 0);
  CHECK(d["timings"].contains("load"));

  const SurfaceMesh uv = load_obj_file(dir / "uv.obj");
  CHECK(uv.num_faces() == 24 * 16 * 2);
  CHECK(read_file(dir / "uv.obj").find("vt ") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir dir;
  write_file(dir / "tet.obj", write_obj(fixtures::tetrahedron()));
  write_file(dir / "t.obj", write_obj(fixtures::torus_of_revolution(2, 1, 16, 8)));
  CHECK(flatten("annulus " + q(dir / "tet.obj")) == 2);
  CHECK(flatten("torus " + q(dir / "tet.obj")) == 2);
  CHECK(flatten("torus " + q(dir / "t.obj") + " --tol 1e-300") == 3);
  CHECK(flatten("torus " + q(dir / "missing.obj")) == 1);
  CHECK(flatten("sphere " + q(dir / "t.obj")) == 1);
  CHECK(flatten("torus " + q(dir / "t.obj"), "FLATTEN_THREADS=0") == 1);
  CHECK(flatten("torus " + q(dir / "t.obj"), "FLATTEN_THREADS=2") == 0);
  write_file(dir / "bad.obj", "v 0 0 0\nf 1 2 3\n");
  CHECK(flatten("torus " + q(dir / "bad.obj")) == 1);
}

TEST_CASE("missing input through the library entry point") {
  RunConfig config;
  config.input = "/nonexistent/mesh.obj";
  std::ostringstream err;
  CHECK(run(config, err) == 1);
  CHECK_FALSE(err.str().empty());
}

TEST_CASE("intrinsic metric input") {
  TempDir dir;
  const SurfaceMesh flat = fixtures::flat_torus(16, 16, {1, 0}, {0, 1});
  write_file(dir / "t.obj", write_obj(fixtures::torus_of_revolution(2, 1, 16, 16)));
  write_file(dir / "m.json", length_table_json(flat).dump());
  REQUIRE(flat.faces() == fixtures::torus_of_revolution(2, 1, 16, 16).faces());
  REQUIRE(flatten("torus " + q(dir / "t.obj") + " --metric " + q(dir / "m.json") + " --report " +
                  q(dir / "r.json")) == 0);
  const json r = json::parse(read_file(dir / "r.json"));
  const double hx = r["lattice"]["h"][0], hy = r["lattice"]["h"][1];
  // Any basis of the square lattice is (0, 1) up to an integer shear.
  CHECK(std::abs(hx - std::round(hx)) <= 1e-6);
  CHECK(std::abs(hy - 1.0) <= 1e-6);
  CHECK(r["input"]["intrinsic"] == true);
}

TEST_CASE("runs are reproducible") {
  TempDir dir;
  write_file(dir / "t.obj", write_obj(fixtures::perturbed_torus(2, 1, 24, 16, 0.1, 3)));
  for (const char* mode : {"", " --idt"}) {
    REQUIRE(flatten("torus " + q(dir / "t.obj") + mode + " --out " + q(dir / "a.obj") + " --report " +
                    q(dir / "a.json")) == 0);
    REQUIRE(flatten("torus " + q(dir / "t.obj") + mode + " --out " + q(dir / "b.obj") + " --report " +
                    q(dir / "b.json")) == 0);
    CHECK(read_file(dir / "a.obj") == read_file(dir / "b.obj"));
    CHECK(strip_timings(json::parse(read_file(dir / "a.json"))) ==
          strip_timings(json::parse(read_file(dir / "b.json"))));
  }
}

TEST_CASE("IDT flip log and comparison") {
  TempDir dir;
  write_file(dir / "t.obj", write_obj(fixtures::perturbed_torus(2, 1, 32, 16, 0.1, 1)));
  REQUIRE(flatten("torus " + q(dir / "t.obj") + " --idt --compare --original-faces --flip-log " +
                  q(dir / "flips.json") + " --report " + q(dir / "r.json") + " --out " + q(dir / "uv.obj")) == 0);
  const json flips = json::parse(read_file(dir / "flips.json"));
  const json r = json::parse(read_file(dir / "r.json"));
  REQUIRE(flips.is_array());
  CHECK(flips.size() == r["idt"]["flips"].get<std::size_t>());
  CHECK_FALSE(flips.empty());
  for (const json& f : flips) {
    CHECK(f["removed"].size() == 2);
    CHECK(f["added"].size() == 2);
    CHECK(f["length"].get<double>() > 0.0);
  }
  CHECK(r["compare"]["distinct_cuts"] == true);
  CHECK(r["compare"]["passed"] == true);
  CHECK(r["compare"]["max_angle_difference"].get<double>() <= 1e-8);
  CHECK(r.contains("original_connectivity"));
  CHECK(load_obj_file(dir / "uv.obj").faces() == fixtures::perturbed_torus(2, 1, 32, 16, 0.1, 1).faces());
}

TEST_CASE("annulus and poly-annulus runs") {
  TempDir dir;
  write_file(dir / "c.obj", write_obj(fixtures::cylinder(1, 1, 32, 8)));
  REQUIRE(flatten("annulus " + q(dir / "c.obj") + " --compare --report " + q(dir / "r.json")) == 0);
  const json r = json::parse(read_file(dir / "r.json"));
  CHECK(r["annulus"]["inner_radius"].get<double>() > 0.0);
  CHECK(r["annulus"]["inner_radius"].get<double>() < 1.0);
  CHECK(r["compare"]["passed"] == true);

  write_file(dir / "p.obj", write_obj(fixtures::disk_with_two_holes(64, 16)));
  REQUIRE(flatten("polyannulus " + q(dir / "p.obj") + " --report " + q(dir / "p.json") + " --out " +
                  q(dir / "uv.obj")) == 0);
  const json p = json::parse(read_file(dir / "p.json"));
  CHECK(p["circles"].size() == 3);
  CHECK(p["distortion"]["fold_count"] == 0);

  CHECK(flatten("polyannulus " + q(dir / "c.obj")) == 0);
  CHECK(flatten("annulus " + q(dir / "p.obj")) == 2);
}

TEST_CASE("loops override") {
  TempDir dir;
  const int ni = 16, nj = 12;
  write_file(dir / "t.obj", write_obj(fixtures::flat_torus(ni, nj, {1, 0}, {0.3, 0.8})));
  write_file(dir / "m.json", length_table_json(fixtures::flat_torus(ni, nj, {1, 0}, {0.3, 0.8})).dump());
  write_file(dir / "l.json",
             loops_json({fixtures::grid_loop_j(ni, nj, PathKind::handle), fixtures::grid_loop_i(ni, nj, PathKind::tunnel)})
                 .dump());
  REQUIRE(flatten("torus " + q(dir / "t.obj") + " --metric " + q(dir / "m.json") + " --loops " + q(dir / "l.json") +
                  " --report " + q(dir / "r.json")) == 0);
  const json r = json::parse(read_file(dir / "r.json"));
  CHECK(r["lattice"]["h"][0].get<double>() == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(r["lattice"]["h"][1].get<double>() == doctest::Approx(0.8).epsilon(1e-6));

  write_file(dir / "bad.json", R"({"alpha": [0, 1, 2]})");
  CHECK(flatten("torus " + q(dir / "t.obj") + " --loops " + q(dir / "bad.json")) == 1);
}
