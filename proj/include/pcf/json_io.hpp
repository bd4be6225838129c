#pragma once

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pcf/cut.hpp"
#include "pcf/idt.hpp"
#include "pcf/mesh.hpp"
#include "pcf/metrics.hpp"

namespace pcf {

nlohmann::json read_json_file(const std::filesystem::path& path);

/// {"i,j": length, ...} with 0-based vertex ids.
EdgeLengthMap parse_length_table(const nlohmann::json& j);
nlohmann::json length_table_json(const SurfaceMesh& mesh);

/// {"alpha": [...], "beta": [...]} for a torus or {"cross": [...]} for an
/// annulus. A closed loop may repeat its first vertex at the end.
struct LoopOverride {
  std::optional<std::pair<CutPath, CutPath>> genus_one;
  std::optional<CutPath> cross;
};

LoopOverride parse_loops(const nlohmann::json& j);
nlohmann::json loops_json(const std::vector<CutPath>& paths);

nlohmann::json flip_log_json(const std::vector<FlipRecord>& flips);

nlohmann::json report_json(const DistortionReport& report, bool with_timings = true);

}  // namespace pcf
