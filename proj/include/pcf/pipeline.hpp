#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "pcf/json_io.hpp"
#include "pcf/mesh.hpp"

namespace pcf {

enum class Mode { torus, annulus, polyannulus };

Mode parse_mode(const std::string& name);
const char* mode_name(Mode mode);

struct RunOptions {
  Mode mode = Mode::torus;
  bool idt = false;
  double tol = 1e-10;
  std::optional<LoopOverride> loops;
  bool compare = false;
  /// UV export over the input faces instead of the flattened connectivity.
  bool original_faces = false;
};

struct RunResult {
  nlohmann::json report;
  std::string uv_obj;
  nlohmann::json flip_log;
};

/// Runs one flattening on an in-memory mesh and builds the report.
RunResult flatten_mesh(const SurfaceMesh& mesh, const RunOptions& options);

/// Report without any wall-time entries, for reproducibility checks.
nlohmann::json strip_timings(nlohmann::json report);

struct RunConfig {
  std::filesystem::path input;
  RunOptions options;
  std::optional<std::filesystem::path> loops;
  std::optional<std::filesystem::path> metric;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> flip_log;
};

/// Loads, flattens and writes artifacts. Returns 0 on success, 2 on a
/// topology mismatch, 3 on numerical failure and 1 for any other error;
/// diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& err);

}  // namespace pcf
