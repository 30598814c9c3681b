#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stylecast/analysis.hpp"
#include "stylecast/coherent.hpp"
#include "stylecast/forecast.hpp"
#include "stylecast/influence.hpp"
#include "stylecast/styles.hpp"
#include "stylecast/synth.hpp"
#include "stylecast/types.hpp"

namespace stylecast::io {

/// All loaders raise DataError naming the offending path (and line where it
/// applies). All writers produce byte-identical output for identical inputs.

// Raw events. JSONL: one {"unit", "t", "attrs"} object per line. CSV:
// header `unit,t,attr_00,...` with one column per attribute. load_events
// dispatches on the file extension.
std::vector<EventRecord> load_events(const std::string& path);
std::vector<EventRecord> load_events_jsonl(const std::string& path);
std::vector<EventRecord> load_events_csv(const std::string& path);
void save_events_jsonl(const std::string& path,
                       const std::vector<EventRecord>& events);

// Trajectory sets. Long CSV `style,unit,t,value`, one row per observation,
// flat trajectory order; a leading `# split,train_end,val_end,total`
// comment preserves stamped boundaries.
void save_trajectories_csv(const std::string& path, const TrajectorySet& ts);
TrajectorySet load_trajectories_csv(const std::string& path);

// Influence tensors (JSON, format tag stylecast/influence-tensor@1).
void save_tensor_json(const std::string& path, const InfluenceTensor& tensor);
InfluenceTensor load_tensor_json(const std::string& path);

// Style vocabularies (JSON, format tag stylecast/style-model@1).
void save_style_model_json(const std::string& path, const StyleModel& model);
StyleModel load_style_model_json(const std::string& path);

// Forecast evaluation reports: JSON keyed by model name, and a CSV table
// `model,mae,mape` ordered by MAE.
void save_report_json(const std::string& path, const ForecastReport& report);
void save_report_csv(const std::string& path, const ForecastReport& report);

// Analysis outputs.
void save_ranking_csv(const std::string& path, const InfluenceRanking& ranking);
void save_dynamics_csv(const std::string& path, const DynamicsResult& dynamics);
std::map<std::string, double> load_metadata_csv(const std::string& path);

// Plain text (DOT graphs and similar).
void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

// Generator and trainer configs (JSON). Loaders start from the defaults and
// overwrite the keys present, so partial config files are valid.
SynthConfig load_synth_config_json(const std::string& path);
void save_synth_config_json(const std::string& path, const SynthConfig& config);
TrainConfig load_train_config_json(const std::string& path);
void save_train_config_json(const std::string& path, const TrainConfig& config);

// Trained forecasters (JSON). Networks are keyed by style/unit names, so a
// loaded bank binds to the trajectory set it was trained on.
void save_coherent_bank_json(const std::string& path, const CoherentBank& bank,
                             const TrajectorySet& ts);
CoherentBank load_coherent_bank_json(const std::string& path,
                                     const TrajectorySet& ts);
void save_combined_json(const std::string& path,
                        const CombinedForecaster& model,
                        const TrajectorySet& ts);
CombinedForecaster load_combined_json(const std::string& path,
                                      const TrajectorySet& ts);

/// Provenance record written beside every command-line run's primary output
/// as `<output>.manifest.json`.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string started;   // ISO 8601 UTC
  std::string finished;  // ISO 8601 UTC
  std::string version;
};

std::string manifest_path_for(const std::string& primary_output);
void save_manifest(const std::string& primary_output, const RunManifest& m);

/// Current wall-clock time as an ISO 8601 UTC string.
std::string now_utc();

}  // namespace stylecast::io
