// Periodic conformal flattening from the command line.
//
//   flatten torus mesh.obj --out uv.obj --report report.json
//   flatten annulus tube.obj --idt
//   flatten polyannulus holes.obj --out uv.obj

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcf/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Periodic conformal flattening of tori, annuli and poly-annuli"};
  app.require_subcommand(1);

  pcf::RunConfig config;
  std::string loops, metric, out, report, flip_log;
  for (const char* mode : {"torus", "annulus", "polyannulus"}) {
    CLI::App* sub = app.add_subcommand(mode, std::string("flatten a ") + mode + " mesh");
    sub->add_option("input", config.input, "input OBJ mesh")->required();
    sub->add_option("--out", out, "UV-OBJ output path");
    sub->add_option("--report", report, "JSON report path");
    sub->add_flag("--idt", config.options.idt, "intrinsic Delaunay preprocess");
    sub->add_option("--tol", config.options.tol, "solver tolerance")->default_val(1e-10);
    sub->add_option("--loops", loops, "cut paths override (JSON)");
    sub->add_option("--metric", metric, "intrinsic edge lengths (JSON)");
    sub->add_option("--flip-log", flip_log, "IDT flip log output path");
    sub->add_flag("--compare", config.options.compare, "rerun with a second cut system and compare");
    sub->add_flag("--original-faces", config.options.original_faces,
                  "export UVs over the input faces");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the generic failure status.
    return app.exit(e) == 0 ? 0 : 1;
  }

  config.options.mode = pcf::parse_mode(app.get_subcommands().front()->get_name());
  if (!loops.empty()) config.loops = loops;
  if (!metric.empty()) config.metric = metric;
  if (!out.empty()) config.out = out;
  if (!report.empty()) config.report = report;
  if (!flip_log.empty()) config.flip_log = flip_log;
  return pcf::run(config, std::cerr);
}
