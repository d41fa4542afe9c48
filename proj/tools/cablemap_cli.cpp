#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cablemap/config.hpp"
#include "cablemap/errors.hpp"
#include "cablemap/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitConfigError = 2;

void print_run(const cablemap::StageRun& run) {
  std::cerr << "[" << cablemap::to_string(run.stage) << "] ";
  if (run.skipped) {
    std::cerr << "up-to-date\n";
    return;
  }
  bool first = true;
  for (const auto& [name, value] : run.counters) {
    std::cerr << (first ? "" : ", ") << name << "=" << value;
    first = false;
  }
  std::cerr << "\n";
  for (const std::string& warning : run.warnings) {
    std::cerr << "[" << cablemap::to_string(run.stage) << "] warning: "
              << warning << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Maps IP links extracted from traceroutes to the submarine cables "
      "they likely traverse."};
  app.require_subcommand(0, 1);
  app.fallthrough();  // global options may follow the subcommand

  std::string config_path;
  std::string out_dir = "out";
  std::string stage_name;
  std::string pact_mode;
  std::vector<std::string> inputs;
  int jobs = 0;
  bool validate_schemas = false;

  app.add_option("--config", config_path,
                 "Pipeline config file (JSON); defaults are used when absent");
  app.add_option("--input", inputs,
                 "Input files; roles are recognized from content");
  app.add_option("--out", out_dir, "Output directory for stage artifacts");
  app.add_option("--stage", stage_name,
                 "Stage to run when no subcommand is given");
  app.add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");
  app.add_option("--pact-mode", pact_mode,
                 "Override pruning mode: relative|absolute");
  app.add_flag("--validate-schemas", validate_schemas,
               "Validate all artifacts in --out and exit");

  std::vector<std::pair<std::string, CLI::App*>> stage_commands;
  for (cablemap::Stage stage : cablemap::all_stages()) {
    const std::string name = cablemap::to_string(stage);
    stage_commands.emplace_back(
        name, app.add_subcommand(name, "Run the " + name + " stage"));
  }
  CLI::App* all_cmd = app.add_subcommand("all", "Run every stage in order");

  CLI11_PARSE(app, argc, argv);

  try {
    // The environment may point at a different config file, never at
    // different values.
    if (config_path.empty()) {
      if (const char* env = std::getenv("CABLEMAP_CONFIG")) {
        config_path = env;
      }
    }
    cablemap::PipelineConfig cfg;
    if (!config_path.empty()) {
      cfg = cablemap::PipelineConfig::load(config_path);
    }
    if (!pact_mode.empty()) {
      cfg.pact_mode = cablemap::pact_mode_from_string(pact_mode);
    }
    cfg.validate();

    cablemap::Pipeline pipeline(cfg, inputs, out_dir, jobs);

    if (validate_schemas) {
      const auto checked = pipeline.validate_artifacts();
      for (const std::string& name : checked) {
        std::cerr << "[validate] " << name << " ok\n";
      }
      return kExitOk;
    }

    if (all_cmd->parsed()) {
      for (const cablemap::StageRun& run : pipeline.run_all()) {
        print_run(run);
      }
      return kExitOk;
    }
    for (const auto& [name, cmd] : stage_commands) {
      if (cmd->parsed()) {
        print_run(pipeline.run(*cablemap::stage_from_string(name)));
        return kExitOk;
      }
    }
    if (!stage_name.empty()) {
      if (stage_name == "all") {
        for (const cablemap::StageRun& run : pipeline.run_all()) {
          print_run(run);
        }
        return kExitOk;
      }
      const auto stage = cablemap::stage_from_string(stage_name);
      if (!stage) {
        std::cerr << "error: unknown stage '" << stage_name << "'\n";
        return kExitInputError;
      }
      print_run(pipeline.run(*stage));
      return kExitOk;
    }
    std::cerr << "error: no stage requested (use a subcommand or --stage)\n";
    return kExitInputError;
  } catch (const cablemap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const cablemap::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
