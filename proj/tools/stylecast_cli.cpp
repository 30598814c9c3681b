// Command-line front end: every pipeline stage as a subcommand, composing
// through the documented file formats only. Exit codes: 0 ok, 2 usage,
// 3 data error, 4 numerical failure.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stylecast/analysis.hpp"
#include "stylecast/coherent.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/forecast.hpp"
#include "stylecast/influence.hpp"
#include "stylecast/ingest.hpp"
#include "stylecast/io.hpp"
#include "stylecast/styles.hpp"
#include "stylecast/synth.hpp"
#include "stylecast/types.hpp"
#include "stylecast/version.hpp"

namespace {

using namespace stylecast;

/// Relative paths resolve against $STYLECAST_DATA_DIR when it is set.
std::string resolve(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* base = std::getenv("STYLECAST_DATA_DIR");
  if (base == nullptr || *base == '\0') return path;
  return std::string(base) + "/" + path;
}

/// Collects what a subcommand touched and writes the provenance record
/// beside the primary output.
struct ManifestScope {
  io::RunManifest m;
  std::string primary;

  ManifestScope(std::string command, std::uint64_t seed) {
    m.command = std::move(command);
    m.seed = seed;
    m.started = io::now_utc();
    m.version = kVersion;
  }
  std::string in(const std::string& path) {
    const std::string r = resolve(path);
    m.inputs.push_back(r);
    return r;
  }
  std::string out(const std::string& path) {
    const std::string r = resolve(path);
    if (primary.empty()) primary = r;
    m.outputs.push_back(r);
    return r;
  }
  void finish() {
    if (primary.empty()) return;
    m.finished = io::now_utc();
    io::save_manifest(primary, m);
  }
};

GrangerOptions granger_options(int order, int max_lag, double alpha) {
  GrangerOptions opt;
  opt.order = order;
  opt.max_lag = max_lag;
  opt.alpha = alpha;
  return opt;
}

InfluenceAxis parse_axis(const std::string& s) {
  if (s == "unit") return InfluenceAxis::kUnit;
  if (s == "style") return InfluenceAxis::kStyle;
  throw std::invalid_argument("axis must be unit or style");
}

void cmd_ingest(const std::string& events_path, const std::string& out_path,
                std::uint64_t seed) {
  ManifestScope scope("ingest", seed);
  const auto events = io::load_events(scope.in(events_path));
  if (events.empty()) throw DataError(events_path + ": no events");
  const std::size_t m = events.front().attrs.size();
  for (const EventRecord& e : events)
    if (e.attrs.size() != m)
      throw DataError(events_path + ": attribute width varies between events");
  io::save_events_jsonl(scope.out(out_path), events);
  scope.finish();
  std::cout << events.size() << " events, " << m << " attributes\n";
}

void cmd_styles(const std::string& events_path, const std::string& out_path,
                std::size_t k, const std::string& kind, std::uint64_t seed) {
  ManifestScope scope("styles", seed);
  const auto events = io::load_events(scope.in(events_path));
  std::vector<AttributeVector> data;
  data.reserve(events.size());
  for (const EventRecord& e : events) data.push_back(e.attrs);
  StyleModel model;
  if (kind == "gmm") {
    model = fit_gmm(data, k, seed);
  } else if (kind == "nmf") {
    model = fit_nmf(data, k, seed);
  } else {
    throw std::invalid_argument("kind must be gmm or nmf");
  }
  io::save_style_model_json(scope.out(out_path), model);
  scope.finish();
  for (const std::string& w : model.warnings)
    std::cerr << "warning: " << w << "\n";
  std::cout << "fitted " << kind << " with k=" << k << " on " << data.size()
            << " events\n";
}

void cmd_trajectories(const std::string& events_path,
                      const std::string& model_path,
                      const std::string& out_path, std::size_t val,
                      std::size_t test, bool no_split, std::uint64_t seed) {
  ManifestScope scope("trajectories", seed);
  const auto events = io::load_events(scope.in(events_path));
  const StyleModel model = io::load_style_model_json(scope.in(model_path));
  TrajectorySet ts = build_trajectories(events, model);
  if (!no_split) ts.apply_split(val, test);
  io::save_trajectories_csv(scope.out(out_path), ts);
  scope.finish();
  std::cout << ts.style_count() << " styles x " << ts.unit_count()
            << " units over " << ts.length() << " steps\n";
}

void cmd_deseasonalize(const std::string& in_path, const std::string& out_path,
                       std::size_t period, std::uint64_t seed) {
  ManifestScope scope("deseasonalize", seed);
  const TrajectorySet ts = io::load_trajectories_csv(scope.in(in_path));
  const TrajectorySet out = deseasonalize(ts, period);
  io::save_trajectories_csv(scope.out(out_path), out);
  scope.finish();
  std::cout << "differenced at period " << period << ", " << out.length()
            << " steps remain\n";
}

void cmd_granger(const std::string& in_path, const std::string& out_path,
                 const std::string& axis, int order, int max_lag, double alpha,
                 int jobs, std::uint64_t seed) {
  const InfluenceAxis ax = parse_axis(axis);
  ManifestScope scope("granger", seed);
  const TrajectorySet ts = io::load_trajectories_csv(scope.in(in_path));
  const InfluenceTensor tensor = build_influence_tensor(
      ts, ax, granger_options(order, max_lag, alpha), jobs);
  io::save_tensor_json(scope.out(out_path), tensor);
  scope.finish();
  std::cout << tensor.edges().size() << " relations discovered";
  if (tensor.skipped_pairs() > 0)
    std::cout << " (" << tensor.skipped_pairs() << " pairs skipped)";
  std::cout << "\n";
}

TrainConfig make_train_config(const std::string& config_path,
                              std::uint64_t seed, int jobs,
                              const std::optional<double>& lambda,
                              const std::optional<int>& max_epochs,
                              ManifestScope* scope) {
  TrainConfig cfg;
  if (!config_path.empty()) {
    cfg = io::load_train_config_json(scope->in(config_path));
    scope->m.config_path = resolve(config_path);
  }
  cfg.seed = seed;
  cfg.jobs = jobs;
  if (lambda.has_value()) cfg.lambda = *lambda;
  if (max_epochs.has_value()) cfg.max_epochs = *max_epochs;
  return cfg;
}

/// Loads the optional tensors and trains whatever the inputs allow: both
/// tensors -> combined model, one -> single bank, none -> autoregressive
/// bank without influence inputs.
struct TrainedModels {
  std::optional<CoherentBank> unit_bank;
  std::optional<CoherentBank> style_bank;
  std::optional<CombinedForecaster> combined;
};

TrainedModels train_models(const TrajectorySet& ts,
                           const std::string& unit_tensor_path,
                           const std::string& style_tensor_path,
                           const TrainConfig& cfg, ManifestScope* scope) {
  TrainedModels out;
  std::optional<InfluenceTensor> tu, tstyle;
  if (!unit_tensor_path.empty())
    tu = io::load_tensor_json(scope->in(unit_tensor_path));
  if (!style_tensor_path.empty())
    tstyle = io::load_tensor_json(scope->in(style_tensor_path));

  if (tu.has_value())
    out.unit_bank = train_coherent(ts, &*tu, cfg);
  if (tstyle.has_value())
    out.style_bank = train_coherent(ts, &*tstyle, cfg);
  if (out.unit_bank.has_value() && out.style_bank.has_value())
    out.combined = select_alpha(*out.style_bank, *out.unit_bank, ts);
  if (!out.unit_bank.has_value() && !out.style_bank.has_value())
    out.unit_bank = train_coherent(ts, nullptr, cfg);
  return out;
}

void cmd_forecast(const std::string& in_path,
                  const std::string& unit_tensor_path,
                  const std::string& style_tensor_path,
                  const std::string& config_path, const std::string& out_path,
                  const std::string& model_out, std::size_t horizon,
                  std::uint64_t seed, int jobs,
                  const std::optional<double>& lambda,
                  const std::optional<int>& max_epochs) {
  ManifestScope scope("forecast", seed);
  const TrajectorySet ts = io::load_trajectories_csv(scope.in(in_path));
  const TrainConfig cfg =
      make_train_config(config_path, seed, jobs, lambda, max_epochs, &scope);
  const TrainedModels models =
      train_models(ts, unit_tensor_path, style_tensor_path, cfg, &scope);

  std::vector<std::vector<double>> fc;
  if (models.combined.has_value()) {
    fc = forecast_combined(*models.combined, ts, horizon);
  } else if (models.unit_bank.has_value()) {
    fc = forecast_coherent(*models.unit_bank, ts, horizon);
  } else {
    fc = forecast_coherent(*models.style_bank, ts, horizon);
  }

  const std::size_t origin =
      ts.split().has_value() ? ts.split()->val_end : ts.length();
  std::string csv = "style,unit,t,value\n";
  char buf[40];
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Trajectory& tr = ts.item(i);
    for (std::size_t h = 0; h < horizon; ++h) {
      std::snprintf(buf, sizeof buf, "%.17g", fc[i][h]);
      csv += tr.style + "," + tr.unit + "," + std::to_string(origin + h) +
             "," + buf + "\n";
    }
  }
  io::save_text(scope.out(out_path), csv);

  if (!model_out.empty()) {
    const std::string path = scope.out(model_out);
    if (models.combined.has_value()) {
      io::save_combined_json(path, *models.combined, ts);
    } else if (models.unit_bank.has_value()) {
      io::save_coherent_bank_json(path, *models.unit_bank, ts);
    } else {
      io::save_coherent_bank_json(path, *models.style_bank, ts);
    }
  }
  scope.finish();
  if (models.combined.has_value())
    std::cout << "alpha = " << models.combined->alpha << "\n";
  std::cout << "forecast " << ts.size() << " trajectories, horizon " << horizon
            << "\n";
}

void cmd_evaluate(const std::string& in_path,
                  const std::string& unit_tensor_path,
                  const std::string& style_tensor_path,
                  const std::string& config_path, const std::string& json_out,
                  const std::string& csv_out, std::size_t horizon,
                  std::size_t period, std::uint64_t seed, int jobs,
                  const std::optional<double>& lambda,
                  const std::optional<int>& max_epochs) {
  ManifestScope scope("evaluate", seed);
  const TrajectorySet ts = io::load_trajectories_csv(scope.in(in_path));
  if (!ts.split().has_value())
    throw DataError(in_path + ": evaluation needs a split-stamped set");

  std::vector<ModelSpec> specs = baseline_models(seed, period);
  if (ts.split()->val_end <= period) {
    // The seasonal baseline needs more than one full period of history.
    std::erase_if(specs,
                  [](const ModelSpec& s) { return s.name == "seasonal"; });
    std::cerr << "note: history shorter than one period, seasonal baseline "
                 "dropped\n";
  }
  specs.push_back(var_model_spec(VarScope::kAllUnitsPerStyle, 8));
  specs.push_back(var_model_spec(VarScope::kAllStylesPerUnit, 8));

  if (!unit_tensor_path.empty() || !style_tensor_path.empty()) {
    const TrainConfig cfg =
        make_train_config(config_path, seed, jobs, lambda, max_epochs, &scope);
    const TrainedModels models =
        train_models(ts, unit_tensor_path, style_tensor_path, cfg, &scope);
    if (models.unit_bank.has_value())
      specs.push_back(coherent_model_spec("coherent_unit", *models.unit_bank));
    if (models.style_bank.has_value())
      specs.push_back(
          coherent_model_spec("coherent_style", *models.style_bank));
    if (models.combined.has_value())
      specs.push_back(combined_model_spec("combined", *models.combined));
  }

  const ForecastReport report = evaluate(specs, ts, horizon);
  io::save_report_json(scope.out(json_out), report);
  if (!csv_out.empty()) io::save_report_csv(scope.out(csv_out), report);
  scope.finish();
  for (const ModelScore& s : report.models)
    std::cout << s.name << " mae=" << s.mae << " mape=" << s.mape << "\n";
}

void cmd_rank(const std::string& tensor_path, const std::string& out_path,
              const std::string& weight, std::uint64_t seed) {
  ManifestScope scope("rank", seed);
  const InfluenceTensor tensor = io::load_tensor_json(scope.in(tensor_path));
  const EdgeWeight w =
      weight == "delta" ? EdgeWeight::kDeltaMse : EdgeWeight::kLag;
  const InfluenceRanking ranking = rank_entities(tensor, w);
  io::save_ranking_csv(scope.out(out_path), ranking);
  scope.finish();
  for (const EntityScore& e : ranking.entries)
    std::cout << e.id << " net=" << e.net << "\n";
}

void cmd_dynamics(const std::string& in_path, const std::string& out_path,
                  std::size_t window, std::size_t stride,
                  const std::string& axis, int order, int max_lag,
                  double alpha, int jobs, std::uint64_t seed) {
  const InfluenceAxis ax = parse_axis(axis);
  ManifestScope scope("dynamics", seed);
  const TrajectorySet ts = io::load_trajectories_csv(scope.in(in_path));
  const DynamicsResult dyn = influence_dynamics(
      ts, window, stride, ax,
      granger_options(order, max_lag, alpha), EdgeWeight::kLag, jobs);
  io::save_dynamics_csv(scope.out(out_path), dyn);
  scope.finish();
  std::cout << dyn.window_starts.size() << " windows\n";
}

void cmd_correlate(const std::string& tensor_path,
                   const std::string& metadata_path, const std::string& mode,
                   const std::string& out_path, std::uint64_t seed) {
  ManifestScope scope("correlate", seed);
  const InfluenceTensor tensor = io::load_tensor_json(scope.in(tensor_path));
  const auto metadata = io::load_metadata_csv(scope.in(metadata_path));
  MetadataMode m;
  if (mode == "world_rank") {
    m = MetadataMode::kWorldRank;
  } else if (mode == "direction") {
    m = MetadataMode::kDirection;
  } else {
    throw std::invalid_argument("mode must be world_rank or direction");
  }
  const InfluenceRanking ranking = rank_entities(tensor);
  const double value = correlate_metadata(ranking, metadata, m, tensor);
  if (!out_path.empty()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    io::save_text(scope.out(out_path), std::string("mode,value\n") + mode +
                                           "," + buf + "\n");
  }
  scope.finish();
  std::cout << mode << " correlation = " << value << "\n";
}

void cmd_synth(const std::string& config_path, const std::string& out_path,
               const std::string& unit_truth_out,
               const std::string& style_truth_out,
               const std::optional<std::size_t>& units,
               const std::optional<std::size_t>& styles,
               const std::optional<std::size_t>& length,
               const std::optional<double>& noise,
               const std::optional<std::uint64_t>& seed_flag,
               std::uint64_t seed) {
  ManifestScope scope("synth", seed);
  SynthConfig cfg;
  if (!config_path.empty()) {
    cfg = io::load_synth_config_json(scope.in(config_path));
    scope.m.config_path = resolve(config_path);
  }
  if (units.has_value()) cfg.units = *units;
  if (styles.has_value()) cfg.styles = *styles;
  if (length.has_value()) cfg.length = *length;
  if (noise.has_value()) cfg.noise_std = *noise;
  cfg.seed = seed_flag.has_value() ? *seed_flag : seed;
  scope.m.seed = cfg.seed;

  const SynthData data = generate(cfg);
  io::save_trajectories_csv(scope.out(out_path), data.set);
  if (!unit_truth_out.empty())
    io::save_tensor_json(scope.out(unit_truth_out), data.unit_truth);
  if (!style_truth_out.empty())
    io::save_tensor_json(scope.out(style_truth_out), data.style_truth);
  scope.finish();
  std::cout << "generated " << data.set.size() << " trajectories over "
            << data.set.length() << " steps\n";
}

void cmd_export_graph(const std::string& tensor_path,
                      const std::string& out_path, const std::string& threshold,
                      std::uint64_t seed) {
  ManifestScope scope("export-graph", seed);
  const InfluenceTensor tensor = io::load_tensor_json(scope.in(tensor_path));
  GraphThreshold th;
  if (threshold == "above_mean") {
    th = GraphThreshold::kAboveMean;
  } else if (threshold == "raw") {
    th = GraphThreshold::kRaw;
  } else {
    throw std::invalid_argument("threshold must be above_mean or raw");
  }
  io::save_text(scope.out(out_path), export_graph(tensor, th));
  scope.finish();
  std::cout << "wrote " << out_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"style popularity trajectories: influence discovery and "
               "coherent forecasting"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--seed", seed, "master random seed")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads inside library calls")
      ->capture_default_str();

  // ingest
  std::string ing_in, ing_out;
  auto* ing = app.add_subcommand(
      "ingest", "validate raw events and write canonical JSONL");
  ing->add_option("--events", ing_in, "raw events (.jsonl or .csv)")
      ->required();
  ing->add_option("--out", ing_out, "canonical events JSONL")->required();
  ing->callback([&]() { cmd_ingest(ing_in, ing_out, seed); });

  // styles
  std::string sty_in, sty_out, sty_kind = "gmm";
  std::size_t sty_k = 8;
  auto* sty = app.add_subcommand(
      "styles", "fit a style vocabulary over event attributes");
  sty->add_option("--events", sty_in, "events file")->required();
  sty->add_option("--out", sty_out, "style model JSON")->required();
  sty->add_option("--k", sty_k, "number of styles")->capture_default_str();
  sty->add_option("--kind", sty_kind, "gmm or nmf")->capture_default_str();
  sty->callback([&]() { cmd_styles(sty_in, sty_out, sty_k, sty_kind, seed); });

  // trajectories
  std::string trj_events, trj_model, trj_out;
  std::size_t trj_val = 4, trj_test = 26;
  bool trj_nosplit = false;
  auto* trj = app.add_subcommand(
      "trajectories", "build per-style-per-unit popularity series");
  trj->add_option("--events", trj_events, "events file")->required();
  trj->add_option("--model", trj_model, "style model JSON")->required();
  trj->add_option("--out", trj_out, "trajectory CSV")->required();
  trj->add_option("--val", trj_val, "validation steps")->capture_default_str();
  trj->add_option("--test", trj_test, "test steps")->capture_default_str();
  trj->add_flag("--no-split", trj_nosplit, "skip stamping a split");
  trj->callback([&]() {
    cmd_trajectories(trj_events, trj_model, trj_out, trj_val, trj_test,
                     trj_nosplit, seed);
  });

  // deseasonalize
  std::string des_in, des_out;
  std::size_t des_period = 52;
  auto* des = app.add_subcommand("deseasonalize",
                                 "season-difference every trajectory");
  des->add_option("--in", des_in, "trajectory CSV")->required();
  des->add_option("--out", des_out, "trajectory CSV")->required();
  des->add_option("--period", des_period, "season length")
      ->capture_default_str();
  des->callback([&]() { cmd_deseasonalize(des_in, des_out, des_period, seed); });

  // granger
  std::string gr_in, gr_out, gr_axis = "unit";
  int gr_order = 8, gr_maxlag = 8;
  double gr_alpha = 0.05;
  auto* gr = app.add_subcommand(
      "granger", "discover pairwise influence relations");
  gr->add_option("--in", gr_in, "trajectory CSV")->required();
  gr->add_option("--out", gr_out, "influence tensor JSON")->required();
  gr->add_option("--axis", gr_axis, "unit or style")->capture_default_str();
  gr->add_option("--order", gr_order, "own-history depth")
      ->capture_default_str();
  gr->add_option("--max-lag", gr_maxlag, "candidate source lags")
      ->capture_default_str();
  gr->add_option("--alpha", gr_alpha, "significance threshold")
      ->capture_default_str();
  gr->callback([&]() {
    cmd_granger(gr_in, gr_out, gr_axis, gr_order, gr_maxlag, gr_alpha, jobs,
                seed);
  });

  // forecast
  std::string fc_in, fc_unit_tensor, fc_style_tensor, fc_config, fc_out,
      fc_model_out;
  std::size_t fc_horizon = 26;
  std::optional<double> fc_lambda;
  std::optional<int> fc_epochs;
  auto* fc = app.add_subcommand(
      "forecast", "train influence-aware networks and forecast");
  fc->add_option("--in", fc_in, "trajectory CSV")->required();
  fc->add_option("--unit-tensor", fc_unit_tensor, "unit influence JSON");
  fc->add_option("--style-tensor", fc_style_tensor, "style influence JSON");
  fc->add_option("--config", fc_config, "training config JSON");
  fc->add_option("--out", fc_out, "forecast CSV")->required();
  fc->add_option("--model-out", fc_model_out, "trained model JSON");
  fc->add_option("--horizon", fc_horizon, "steps ahead")
      ->capture_default_str();
  fc->add_option("--lambda", fc_lambda, "coherence weight override");
  fc->add_option("--max-epochs", fc_epochs, "training epoch cap override");
  fc->callback([&]() {
    cmd_forecast(fc_in, fc_unit_tensor, fc_style_tensor, fc_config, fc_out,
                 fc_model_out, fc_horizon, seed, jobs, fc_lambda, fc_epochs);
  });

  // evaluate
  std::string ev_in, ev_unit_tensor, ev_style_tensor, ev_config, ev_json,
      ev_csv;
  std::size_t ev_horizon = 26, ev_period = 52;
  std::optional<double> ev_lambda;
  std::optional<int> ev_epochs;
  auto* ev = app.add_subcommand(
      "evaluate", "score all models on the held-out test window");
  ev->add_option("--in", ev_in, "trajectory CSV")->required();
  ev->add_option("--unit-tensor", ev_unit_tensor, "unit influence JSON");
  ev->add_option("--style-tensor", ev_style_tensor, "style influence JSON");
  ev->add_option("--config", ev_config, "training config JSON");
  ev->add_option("--json", ev_json, "report JSON")->required();
  ev->add_option("--csv", ev_csv, "report CSV table");
  ev->add_option("--horizon", ev_horizon, "steps ahead")
      ->capture_default_str();
  ev->add_option("--period", ev_period, "season length for baselines")
      ->capture_default_str();
  ev->add_option("--lambda", ev_lambda, "coherence weight override");
  ev->add_option("--max-epochs", ev_epochs, "training epoch cap override");
  ev->callback([&]() {
    cmd_evaluate(ev_in, ev_unit_tensor, ev_style_tensor, ev_config, ev_json,
                 ev_csv, ev_horizon, ev_period, seed, jobs, ev_lambda,
                 ev_epochs);
  });

  // rank
  std::string rk_tensor, rk_out, rk_weight = "lag";
  auto* rk = app.add_subcommand(
      "rank", "order entities by net exerted influence");
  rk->add_option("--tensor", rk_tensor, "influence tensor JSON")->required();
  rk->add_option("--out", rk_out, "ranking CSV")->required();
  rk->add_option("--weight", rk_weight, "lag or delta")->capture_default_str();
  rk->callback([&]() { cmd_rank(rk_tensor, rk_out, rk_weight, seed); });

  // dynamics
  std::string dy_in, dy_out, dy_axis = "unit";
  std::size_t dy_window = 78, dy_stride = 13;
  int dy_order = 8, dy_maxlag = 8;
  double dy_alpha = 0.05;
  auto* dy = app.add_subcommand(
      "dynamics", "influence rankings over sliding windows");
  dy->add_option("--in", dy_in, "trajectory CSV")->required();
  dy->add_option("--out", dy_out, "dynamics CSV")->required();
  dy->add_option("--window", dy_window, "window length")
      ->capture_default_str();
  dy->add_option("--stride", dy_stride, "window stride")
      ->capture_default_str();
  dy->add_option("--axis", dy_axis, "unit or style")->capture_default_str();
  dy->add_option("--order", dy_order, "own-history depth")
      ->capture_default_str();
  dy->add_option("--max-lag", dy_maxlag, "candidate source lags")
      ->capture_default_str();
  dy->add_option("--alpha", dy_alpha, "significance threshold")
      ->capture_default_str();
  dy->callback([&]() {
    cmd_dynamics(dy_in, dy_out, dy_window, dy_stride, dy_axis, dy_order,
                 dy_maxlag, dy_alpha, jobs, seed);
  });

  // correlate
  std::string co_tensor, co_meta, co_mode = "world_rank", co_out;
  auto* co = app.add_subcommand(
      "correlate", "relate influence to per-entity metadata");
  co->add_option("--tensor", co_tensor, "influence tensor JSON")->required();
  co->add_option("--metadata", co_meta, "metadata CSV (id,value)")
      ->required();
  co->add_option("--mode", co_mode, "world_rank or direction")
      ->capture_default_str();
  co->add_option("--out", co_out, "result CSV (optional)");
  co->callback([&]() { cmd_correlate(co_tensor, co_meta, co_mode, co_out, seed); });

  // synth
  std::string sy_config, sy_out, sy_unit_truth, sy_style_truth;
  std::optional<std::size_t> sy_units, sy_styles, sy_length;
  std::optional<double> sy_noise;
  std::optional<std::uint64_t> sy_seed;
  auto* sy = app.add_subcommand(
      "synth", "generate seeded data with planted influence");
  sy->add_option("--config", sy_config, "generator config JSON");
  sy->add_option("--out", sy_out, "trajectory CSV")->required();
  sy->add_option("--unit-truth", sy_unit_truth, "planted unit tensor JSON");
  sy->add_option("--style-truth", sy_style_truth, "planted style tensor JSON");
  sy->add_option("--units", sy_units, "unit count override");
  sy->add_option("--styles", sy_styles, "style count override");
  sy->add_option("--length", sy_length, "time steps override");
  sy->add_option("--noise", sy_noise, "noise level override");
  sy->add_option("--gen-seed", sy_seed, "generator seed override");
  sy->callback([&]() {
    cmd_synth(sy_config, sy_out, sy_unit_truth, sy_style_truth, sy_units,
              sy_styles, sy_length, sy_noise, sy_seed, seed);
  });

  // export-graph
  std::string xg_tensor, xg_out, xg_threshold = "above_mean";
  auto* xg = app.add_subcommand(
      "export-graph", "render an influence tensor as DOT");
  xg->add_option("--tensor", xg_tensor, "influence tensor JSON")->required();
  xg->add_option("--out", xg_out, "DOT file")->required();
  xg->add_option("--threshold", xg_threshold, "above_mean or raw")
      ->capture_default_str();
  xg->callback([&]() { cmd_export_graph(xg_tensor, xg_out, xg_threshold, seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const stylecast::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const stylecast::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
