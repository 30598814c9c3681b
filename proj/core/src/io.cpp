#include "stylecast/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stylecast/errors.hpp"
#include "stylecast/version.hpp"

namespace stylecast::io {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out << content;
  if (!out) throw DataError("write failed for " + path);
}

json parse_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

json parse_json_line(const std::string& path, std::size_t lineno,
                     const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
  }
}

void require_format(const json& j, const std::string& tag,
                    const std::string& path) {
  if (!j.is_object() || j.value("format", "") != tag)
    throw DataError(path + ": expected format tag " + tag);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& field, const std::string& path,
                    std::size_t lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw DataError(path + ":" + std::to_string(lineno) +
                    ": not a number: '" + field + "'");
  }
}

long long parse_int(const std::string& field, const std::string& path,
                    std::size_t lineno) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw DataError(path + ":" + std::to_string(lineno) +
                    ": not an integer: '" + field + "'");
  }
}

/// Splits file content into lines, tolerating a missing final newline.
std::vector<std::string> to_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t pos = content.find('\n', start);
    if (pos == std::string::npos) pos = content.size();
    std::size_t end = pos;
    if (end > start && content[end - 1] == '\r') --end;
    lines.push_back(content.substr(start, end - start));
    start = pos + 1;
  }
  return lines;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json axis_to_json(InfluenceAxis axis) {
  return axis == InfluenceAxis::kUnit ? "unit" : "style";
}

InfluenceAxis axis_from_json(const json& j, const std::string& path) {
  const std::string s = j.get<std::string>();
  if (s == "unit") return InfluenceAxis::kUnit;
  if (s == "style") return InfluenceAxis::kStyle;
  throw DataError(path + ": unknown axis '" + s + "'");
}

json bank_to_json(const CoherentBank& bank, const TrajectorySet& ts) {
  json j;
  const TrainConfig& c = bank.config;
  j["config"] = {{"own_lags", c.own_lags},
                 {"hidden", c.hidden},
                 {"learn_rate", c.learn_rate},
                 {"l2", c.l2},
                 {"lambda", c.lambda},
                 {"patience", c.patience},
                 {"max_epochs", c.max_epochs},
                 {"alpha_step", c.alpha_step},
                 {"seed", c.seed},
                 {"zero_hidden_init", c.zero_hidden_init}};
  j["mean"] = bank.mean;
  j["stddev"] = bank.stddev;
  json nets = json::array();
  for (const TrajectoryNet& net : bank.nets) {
    const Trajectory& tr = ts.item(net.target);
    json inputs = json::array();
    for (const NetInput& inp : net.inputs) {
      const Trajectory& src = ts.item(inp.src);
      inputs.push_back(
          {{"style", src.style}, {"unit", src.unit}, {"lag", inp.lag}});
    }
    nets.push_back({{"style", tr.style},
                    {"unit", tr.unit},
                    {"inputs", inputs},
                    {"params", net.params},
                    {"best_val_mae", net.best_val_mae},
                    {"epochs", net.epochs}});
  }
  j["nets"] = nets;
  return j;
}

CoherentBank bank_from_json(const json& j, const TrajectorySet& ts,
                            const std::string& path) {
  CoherentBank bank;
  const json& c = j.at("config");
  bank.config.own_lags = c.at("own_lags").get<int>();
  bank.config.hidden = c.at("hidden").get<int>();
  bank.config.learn_rate = c.at("learn_rate").get<double>();
  bank.config.l2 = c.at("l2").get<double>();
  bank.config.lambda = c.at("lambda").get<double>();
  bank.config.patience = c.at("patience").get<int>();
  bank.config.max_epochs = c.at("max_epochs").get<int>();
  bank.config.alpha_step = c.at("alpha_step").get<double>();
  bank.config.seed = c.at("seed").get<std::uint64_t>();
  bank.config.zero_hidden_init = c.at("zero_hidden_init").get<bool>();

  bank.mean = j.at("mean").get<std::vector<double>>();
  bank.stddev = j.at("stddev").get<std::vector<double>>();
  const json& nets = j.at("nets");
  if (bank.mean.size() != ts.size() || nets.size() != ts.size())
    throw DataError(path + ": model does not match the trajectory set");

  bank.nets.resize(ts.size());
  bank.groups.assign(ts.style_count(), {});
  bank.group_floor.assign(ts.style_count(), bank.config.own_lags);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const json& nj = nets[i];
    const Trajectory& tr = ts.item(i);
    if (nj.at("style").get<std::string>() != tr.style ||
        nj.at("unit").get<std::string>() != tr.unit)
      throw DataError(path + ": network order does not match the set");
    TrajectoryNet& net = bank.nets[i];
    net.target = i;
    for (const json& ij : nj.at("inputs")) {
      NetInput inp;
      const std::size_t s = ts.style_index(ij.at("style").get<std::string>());
      const std::size_t u = ts.unit_index(ij.at("unit").get<std::string>());
      inp.src = s * ts.unit_count() + u;
      inp.lag = ij.at("lag").get<int>();
      if (inp.lag < 1) throw DataError(path + ": input lag must be positive");
      if (inp.src == net.target)
        throw DataError(path + ": network lists itself as input");
      net.inputs.push_back(inp);
    }
    net.params = nj.at("params").get<std::vector<double>>();
    const std::size_t expect =
        (net.input_dim(bank.config.own_lags) + 2) *
            static_cast<std::size_t>(bank.config.hidden) +
        1;
    if (net.params.size() != expect)
      throw DataError(path + ": parameter count mismatch");
    net.best_val_mae = nj.at("best_val_mae").get<double>();
    net.epochs = nj.at("epochs").get<int>();

    const std::size_t s = ts.style_index(tr.style);
    bank.groups[s].push_back(i);
    int floor = bank.config.own_lags;
    for (const NetInput& inp : net.inputs) floor = std::max(floor, inp.lag);
    bank.group_floor[s] = std::max(bank.group_floor[s], floor);
  }
  bank.group_loss_trace.assign(ts.style_count(), {});
  bank.trained = true;
  return bank;
}

}  // namespace

std::vector<EventRecord> load_events(const std::string& path) {
  if (ends_with(path, ".jsonl")) return load_events_jsonl(path);
  if (ends_with(path, ".csv")) return load_events_csv(path);
  throw DataError(path + ": unknown event file extension (.jsonl or .csv)");
}

std::vector<EventRecord> load_events_jsonl(const std::string& path) {
  const auto lines = to_lines(read_file(path));
  std::vector<EventRecord> events;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const json j = parse_json_line(path, i + 1, lines[i]);
    try {
      EventRecord e;
      e.unit = j.at("unit").get<std::string>();
      e.t = j.at("t").get<TimeIndex>();
      e.attrs = j.at("attrs").get<AttributeVector>();
      events.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw DataError(path + ":" + std::to_string(i + 1) + ": " + ex.what());
    }
  }
  return events;
}

std::vector<EventRecord> load_events_csv(const std::string& path) {
  const auto lines = to_lines(read_file(path));
  if (lines.empty()) throw DataError(path + ": empty file");
  const auto header = split_line(lines[0]);
  if (header.size() < 3 || header[0] != "unit" || header[1] != "t")
    throw DataError(path + ":1: expected header unit,t,attr_00,...");
  const std::size_t m = header.size() - 2;

  std::vector<EventRecord> events;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_line(lines[i]);
    if (fields.size() != header.size())
      throw DataError(path + ":" + std::to_string(i + 1) +
                      ": wrong column count");
    EventRecord e;
    e.unit = fields[0];
    e.t = parse_int(fields[1], path, i + 1);
    e.attrs.resize(m);
    for (std::size_t a = 0; a < m; ++a)
      e.attrs[a] = parse_double(fields[2 + a], path, i + 1);
    events.push_back(std::move(e));
  }
  return events;
}

void save_events_jsonl(const std::string& path,
                       const std::vector<EventRecord>& events) {
  std::string out;
  for (const EventRecord& e : events) {
    json j{{"unit", e.unit}, {"t", e.t}, {"attrs", e.attrs}};
    out += j.dump();
    out += '\n';
  }
  write_file(path, out);
}

void save_trajectories_csv(const std::string& path, const TrajectorySet& ts) {
  std::string out;
  if (ts.split().has_value()) {
    const Split& sp = *ts.split();
    out += "# split," + std::to_string(sp.train_end) + "," +
           std::to_string(sp.val_end) + "," + std::to_string(sp.total) + "\n";
  }
  out += "style,unit,t,value\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Trajectory& tr = ts.item(i);
    for (std::size_t t = 0; t < tr.values.size(); ++t)
      out += tr.style + "," + tr.unit + "," + std::to_string(t) + "," +
             fmt(tr.values[t]) + "\n";
  }
  write_file(path, out);
}

TrajectorySet load_trajectories_csv(const std::string& path) {
  const auto lines = to_lines(read_file(path));
  std::size_t row = 0;
  bool have_split = false;
  std::size_t train_end = 0, val_end = 0, total = 0;
  if (row < lines.size() && !lines[row].empty() && lines[row][0] == '#') {
    const auto fields = split_line(lines[row]);
    if (fields.size() != 4 || fields[0] != "# split")
      throw DataError(path + ":1: malformed split comment");
    train_end = static_cast<std::size_t>(parse_int(fields[1], path, 1));
    val_end = static_cast<std::size_t>(parse_int(fields[2], path, 1));
    total = static_cast<std::size_t>(parse_int(fields[3], path, 1));
    have_split = true;
    ++row;
  }
  if (row >= lines.size() || lines[row] != "style,unit,t,value")
    throw DataError(path + ": expected header style,unit,t,value");
  ++row;

  std::vector<std::string> styles, units;
  std::map<std::string, std::size_t> style_ix, unit_ix;
  struct Cell {
    std::size_t style, unit, t;
    double value;
  };
  std::vector<Cell> cells;
  std::size_t length = 0;
  for (; row < lines.size(); ++row) {
    if (lines[row].empty()) continue;
    const auto f = split_line(lines[row]);
    if (f.size() != 4)
      throw DataError(path + ":" + std::to_string(row + 1) +
                      ": expected 4 columns");
    const auto [sit, s_new] = style_ix.emplace(f[0], styles.size());
    if (s_new) styles.push_back(f[0]);
    const auto [uit, u_new] = unit_ix.emplace(f[1], units.size());
    if (u_new) units.push_back(f[1]);
    const long long t = parse_int(f[2], path, row + 1);
    if (t < 0)
      throw DataError(path + ":" + std::to_string(row + 1) +
                      ": negative time step");
    cells.push_back({sit->second, uit->second, static_cast<std::size_t>(t),
                     parse_double(f[3], path, row + 1)});
    length = std::max(length, static_cast<std::size_t>(t) + 1);
  }
  if (cells.empty()) throw DataError(path + ": no observations");

  TrajectorySet ts(styles, units, length);
  std::vector<char> seen(styles.size() * units.size() * length, 0);
  for (const Cell& c : cells) {
    const std::size_t flat = c.style * units.size() + c.unit;
    char& mark = seen[flat * length + c.t];
    if (mark)
      throw DataError(path + ": duplicate observation for " + styles[c.style] +
                      "/" + units[c.unit] + " at t=" + std::to_string(c.t));
    mark = 1;
    ts.item(flat).values[c.t] = c.value;
  }
  for (char mark : seen)
    if (!mark)
      throw DataError(path + ": observation grid has holes");

  if (have_split) {
    if (total != length || val_end > total || train_end > val_end)
      throw DataError(path + ": split does not fit the data");
    ts.apply_split(val_end - train_end, total - val_end, 0);
  }
  return ts;
}

void save_tensor_json(const std::string& path, const InfluenceTensor& tensor) {
  json j;
  j["format"] = "stylecast/influence-tensor@1";
  j["axis"] = axis_to_json(tensor.axis());
  j["entities"] = tensor.entities();
  j["contexts"] = tensor.contexts();
  j["skipped_pairs"] = tensor.skipped_pairs();
  json edges = json::array();
  for (const InfluenceEdge& e : tensor.edges())
    edges.push_back({{"src", e.src},
                     {"dst", e.dst},
                     {"context", e.context},
                     {"lag", e.lag},
                     {"p_value", e.p_value},
                     {"delta_mse", e.delta_mse}});
  j["edges"] = edges;
  write_file(path, j.dump(2) + "\n");
}

InfluenceTensor load_tensor_json(const std::string& path) {
  const json j = parse_json(path);
  require_format(j, "stylecast/influence-tensor@1", path);
  try {
    InfluenceTensor tensor(axis_from_json(j.at("axis"), path),
                           j.at("entities").get<std::vector<std::string>>(),
                           j.at("contexts").get<std::vector<std::string>>());
    for (const json& ej : j.at("edges")) {
      InfluenceEdge e;
      e.src = ej.at("src").get<std::string>();
      e.dst = ej.at("dst").get<std::string>();
      e.context = ej.at("context").get<std::string>();
      e.lag = ej.at("lag").get<int>();
      e.p_value = ej.at("p_value").is_null()
                      ? std::numeric_limits<double>::quiet_NaN()
                      : ej.at("p_value").get<double>();
      e.delta_mse = ej.at("delta_mse").get<double>();
      tensor.set(e);
    }
    const std::size_t skipped = j.value("skipped_pairs", std::size_t{0});
    for (std::size_t i = 0; i < skipped; ++i) tensor.note_skipped();
    return tensor;
  } catch (const json::exception& ex) {
    throw DataError(path + ": " + ex.what());
  }
}

void save_style_model_json(const std::string& path, const StyleModel& model) {
  json j;
  j["format"] = "stylecast/style-model@1";
  j["kind"] = model.kind == StyleModelKind::kGmm ? "gmm" : "nmf";
  j["k"] = model.k;
  j["m"] = model.m;
  j["weights"] = model.weights;
  j["means"] = model.means;
  j["variances"] = model.variances;
  j["factors"] = model.factors;
  j["row_sums"] = model.row_sums;
  write_file(path, j.dump(2) + "\n");
}

StyleModel load_style_model_json(const std::string& path) {
  const json j = parse_json(path);
  require_format(j, "stylecast/style-model@1", path);
  try {
    StyleModel model;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gmm") {
      model.kind = StyleModelKind::kGmm;
    } else if (kind == "nmf") {
      model.kind = StyleModelKind::kNmf;
    } else {
      throw DataError(path + ": unknown model kind '" + kind + "'");
    }
    model.k = j.at("k").get<std::size_t>();
    model.m = j.at("m").get<std::size_t>();
    model.weights = j.at("weights").get<std::vector<double>>();
    model.means = j.at("means").get<std::vector<std::vector<double>>>();
    model.variances = j.at("variances").get<std::vector<std::vector<double>>>();
    model.factors = j.at("factors").get<std::vector<std::vector<double>>>();
    model.row_sums = j.at("row_sums").get<std::vector<double>>();
    return model;
  } catch (const json::exception& ex) {
    throw DataError(path + ": " + ex.what());
  }
}

void save_report_json(const std::string& path, const ForecastReport& report) {
  json models;
  for (const ModelScore& s : report.models) {
    json entry;
    entry["mae"] = s.mae;
    entry["mape"] = std::isfinite(s.mape) ? json(s.mape) : json();
    entry["mape_count"] = s.mape_count;
    entry["per_trajectory"] = s.per_trajectory_mae;
    models[s.name] = entry;
  }
  json j;
  j["format"] = "stylecast/forecast-report@1";
  j["horizon"] = report.horizon;
  j["models"] = models;
  write_file(path, j.dump(2) + "\n");
}

void save_report_csv(const std::string& path, const ForecastReport& report) {
  std::string out = "model,mae,mape\n";
  for (const ModelScore& s : report.models)
    out += s.name + "," + fmt(s.mae) + "," + fmt(s.mape) + "\n";
  write_file(path, out);
}

void save_ranking_csv(const std::string& path,
                      const InfluenceRanking& ranking) {
  std::string out = "id,exerted,received,net\n";
  for (const EntityScore& e : ranking.entries)
    out += e.id + "," + fmt(e.exerted) + "," + fmt(e.received) + "," +
           fmt(e.net) + "\n";
  write_file(path, out);
}

void save_dynamics_csv(const std::string& path,
                       const DynamicsResult& dynamics) {
  std::string out = "window_start,id,score\n";
  for (std::size_t w = 0; w < dynamics.window_starts.size(); ++w)
    for (const std::string& id : dynamics.entities)
      out += std::to_string(dynamics.window_starts[w]) + "," + id + "," +
             fmt(dynamics.windows[w].find(id).exerted) + "\n";
  write_file(path, out);
}

std::map<std::string, double> load_metadata_csv(const std::string& path) {
  const auto lines = to_lines(read_file(path));
  if (lines.empty() || lines[0] != "id,value")
    throw DataError(path + ": expected header id,value");
  std::map<std::string, double> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_line(lines[i]);
    if (f.size() != 2)
      throw DataError(path + ":" + std::to_string(i + 1) +
                      ": expected 2 columns");
    if (!out.emplace(f[0], parse_double(f[1], path, i + 1)).second)
      throw DataError(path + ":" + std::to_string(i + 1) + ": duplicate id '" +
                      f[0] + "'");
  }
  return out;
}

void save_text(const std::string& path, const std::string& text) {
  write_file(path, text);
}

std::string load_text(const std::string& path) { return read_file(path); }

SynthConfig load_synth_config_json(const std::string& path) {
  const json j = parse_json(path);
  require_format(j, "stylecast/synth-config@1", path);
  try {
    SynthConfig cfg;
    cfg.units = j.value("units", cfg.units);
    cfg.styles = j.value("styles", cfg.styles);
    cfg.length = j.value("length", cfg.length);
    cfg.noise_std = j.value("noise_std", cfg.noise_std);
    cfg.ar_coef = j.value("ar_coef", cfg.ar_coef);
    cfg.base_level = j.value("base_level", cfg.base_level);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.val = j.value("val", cfg.val);
    cfg.test = j.value("test", cfg.test);
    cfg.rescale = j.value("rescale", cfg.rescale);
    if (j.contains("seasonal"))
      for (const json& hj : j.at("seasonal"))
        cfg.seasonal.push_back({hj.at("amplitude").get<double>(),
                                hj.at("period").get<std::size_t>()});
    if (j.contains("edges"))
      for (const json& ej : j.at("edges")) {
        PlantedEdge e;
        e.axis = axis_from_json(ej.at("axis"), path);
        e.src = ej.at("src").get<std::size_t>();
        e.dst = ej.at("dst").get<std::size_t>();
        e.context = ej.at("context").get<std::size_t>();
        e.lag = ej.at("lag").get<int>();
        e.coef = ej.at("coef").get<double>();
        e.start = ej.value("start", std::size_t{0});
        cfg.edges.push_back(e);
      }
    return cfg;
  } catch (const json::exception& ex) {
    throw DataError(path + ": " + ex.what());
  }
}

void save_synth_config_json(const std::string& path,
                            const SynthConfig& config) {
  json j;
  j["format"] = "stylecast/synth-config@1";
  j["units"] = config.units;
  j["styles"] = config.styles;
  j["length"] = config.length;
  j["noise_std"] = config.noise_std;
  j["ar_coef"] = config.ar_coef;
  j["base_level"] = config.base_level;
  j["seed"] = config.seed;
  j["val"] = config.val;
  j["test"] = config.test;
  j["rescale"] = config.rescale;
  json seasonal = json::array();
  for (const SeasonalHarmonic& h : config.seasonal)
    seasonal.push_back({{"amplitude", h.amplitude}, {"period", h.period}});
  j["seasonal"] = seasonal;
  json edges = json::array();
  for (const PlantedEdge& e : config.edges)
    edges.push_back({{"axis", axis_to_json(e.axis)},
                     {"src", e.src},
                     {"dst", e.dst},
                     {"context", e.context},
                     {"lag", e.lag},
                     {"coef", e.coef},
                     {"start", e.start}});
  j["edges"] = edges;
  write_file(path, j.dump(2) + "\n");
}

TrainConfig load_train_config_json(const std::string& path) {
  const json j = parse_json(path);
  require_format(j, "stylecast/train-config@1", path);
  try {
    TrainConfig cfg;
    cfg.own_lags = j.value("own_lags", cfg.own_lags);
    cfg.hidden = j.value("hidden", cfg.hidden);
    cfg.learn_rate = j.value("learn_rate", cfg.learn_rate);
    cfg.l2 = j.value("l2", cfg.l2);
    cfg.lambda = j.value("lambda", cfg.lambda);
    cfg.patience = j.value("patience", cfg.patience);
    cfg.max_epochs = j.value("max_epochs", cfg.max_epochs);
    cfg.alpha_step = j.value("alpha_step", cfg.alpha_step);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.zero_hidden_init = j.value("zero_hidden_init", cfg.zero_hidden_init);
    return cfg;
  } catch (const json::exception& ex) {
    throw DataError(path + ": " + ex.what());
  }
}

void save_train_config_json(const std::string& path,
                            const TrainConfig& config) {
  json j;
  j["format"] = "stylecast/train-config@1";
  j["own_lags"] = config.own_lags;
  j["hidden"] = config.hidden;
  j["learn_rate"] = config.learn_rate;
  j["l2"] = config.l2;
  j["lambda"] = config.lambda;
  j["patience"] = config.patience;
  j["max_epochs"] = config.max_epochs;
  j["alpha_step"] = config.alpha_step;
  j["seed"] = config.seed;
  j["zero_hidden_init"] = config.zero_hidden_init;
  write_file(path, j.dump(2) + "\n");
}

void save_coherent_bank_json(const std::string& path, const CoherentBank& bank,
                             const TrajectorySet& ts) {
  json j = bank_to_json(bank, ts);
  j["format"] = "stylecast/coherent-bank@1";
  write_file(path, j.dump(2) + "\n");
}

CoherentBank load_coherent_bank_json(const std::string& path,
                                     const TrajectorySet& ts) {
  const json j = parse_json(path);
  require_format(j, "stylecast/coherent-bank@1", path);
  try {
    return bank_from_json(j, ts, path);
  } catch (const json::exception& ex) {
    throw DataError(path + ": " + ex.what());
  }
}

void save_combined_json(const std::string& path,
                        const CombinedForecaster& model,
                        const TrajectorySet& ts) {
  json j;
  j["format"] = "stylecast/combined-model@1";
  j["alpha"] = model.alpha;
  j["style_bank"] = bank_to_json(model.style_bank, ts);
  j["unit_bank"] = bank_to_json(model.unit_bank, ts);
  write_file(path, j.dump(2) + "\n");
}

CombinedForecaster load_combined_json(const std::string& path,
                                      const TrajectorySet& ts) {
  const json j = parse_json(path);
  require_format(j, "stylecast/combined-model@1", path);
  try {
    CombinedForecaster model;
    model.alpha = j.at("alpha").get<double>();
    if (model.alpha < 0.0 || model.alpha > 1.0)
      throw DataError(path + ": alpha out of [0,1]");
    model.style_bank = bank_from_json(j.at("style_bank"), ts, path);
    model.unit_bank = bank_from_json(j.at("unit_bank"), ts, path);
    return model;
  } catch (const json::exception& ex) {
    throw DataError(path + ": " + ex.what());
  }
}

std::string manifest_path_for(const std::string& primary_output) {
  return primary_output + ".manifest.json";
}

void save_manifest(const std::string& primary_output, const RunManifest& m) {
  json j;
  j["format"] = "stylecast/run-manifest@1";
  j["command"] = m.command;
  j["config_path"] = m.config_path;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["seed"] = m.seed;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["version"] = m.version.empty() ? kVersion : m.version;
  write_file(manifest_path_for(primary_output), j.dump(2) + "\n");
}

std::string now_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace stylecast::io
