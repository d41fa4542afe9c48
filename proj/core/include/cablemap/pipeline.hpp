#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cablemap/config.hpp"
#include "cablemap/ingest.hpp"

namespace cablemap {

enum class Stage {
  kIngest,
  kGeolocate,
  kClassify,
  kMapGeo,
  kMapOwner,
  kAggregate,
  kAnalyze,
};

std::string to_string(Stage stage);
std::optional<Stage> stage_from_string(const std::string& name);
const std::vector<Stage>& all_stages();

// Role of one input file, recognized by shape rather than by name so the
// CLI can take a flat --input list.
enum class InputKind {
  kTracesCanonical,
  kTracesAtlas,
  kProbes,
  kGeoObservations,
  kAsnRecords,
  kAsInfo,
  kCables,
  kCountryGeo,
  kFailureScenario,
  kOperatorTruth,
  kUnknown,
};

InputKind classify_input_file(const std::string& path);
std::string to_string(InputKind kind);

struct StageRun {
  Stage stage = Stage::kIngest;
  bool skipped = false;  // inputs and config unchanged, artifacts intact
  std::map<std::string, std::uint64_t> counters;
  std::vector<std::string> warnings;
  std::vector<std::string> artifacts;  // file names written (or verified)
};

// Orchestrates the seven stages over one output directory. Artifacts are
// written atomically; a manifest records input and config digests so an
// unchanged stage is not re-run. All work is deterministic for a given
// config and input set, whatever the job count.
class Pipeline {
 public:
  Pipeline(PipelineConfig cfg, std::vector<std::string> inputs,
           std::string out_dir, int jobs = 0);

  StageRun run(Stage stage);
  std::vector<StageRun> run_all();

  // Re-parses every artifact present in the output directory against its
  // schema. Throws InputError on any violation.
  std::vector<std::string> validate_artifacts() const;

  const PipelineConfig& config() const { return cfg_; }
  std::string artifact_path(const std::string& name) const;

 private:
  struct InputFile {
    InputKind kind = InputKind::kUnknown;
    std::string path;
  };

  StageRun run_ingest();
  StageRun run_geolocate();
  StageRun run_classify();
  StageRun run_map_geo();
  StageRun run_map_owner();
  StageRun run_aggregate();
  StageRun run_analyze();

  std::vector<std::string> input_paths(InputKind kind) const;
  // Exactly one input of this kind; throws InputError otherwise.
  std::string required_input(InputKind kind, const char* what) const;
  // Upstream artifact that must exist; names the producing stage on failure.
  std::string required_artifact(const std::string& name,
                                const char* producer) const;

  std::string inputs_digest(const std::vector<std::string>& paths) const;
  bool stage_up_to_date(const std::string& stage_name,
                        const std::string& inputs_digest,
                        const std::vector<std::string>& artifact_names) const;
  void record_stage(const std::string& stage_name,
                    const std::string& inputs_digest,
                    const std::vector<std::string>& artifact_names);

  PipelineConfig cfg_;
  std::vector<InputFile> inputs_;
  std::string out_dir_;
  int jobs_ = 0;
};

}  // namespace cablemap
