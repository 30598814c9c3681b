#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "stylecast/io.hpp"
#include "stylecast/synth.hpp"

using namespace stylecast;
namespace fs = std::filesystem;

namespace {

/// Path of the binary under test, passed down from the build.
std::string cli_path() {
  const char* p = std::getenv("STYLECAST_CLI");
  REQUIRE_MESSAGE(p != nullptr, "STYLECAST_CLI must point at the binary");
  return p;
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "stylecast_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string in_scratch(const std::string& name) {
  return (scratch() / name).string();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

/// Runs the binary with the given argument string, capturing both streams.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string out = in_scratch("stdout_" + std::to_string(counter));
  const std::string err = in_scratch("stderr_" + std::to_string(counter));
  ++counter;
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += cli_path() + " " + args + " > " + out + " 2> " + err;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = status == -1 ? -1 : WEXITSTATUS(status);
  r.out = io::load_text(out);
  r.err = io::load_text(err);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

/// Generator settings shared by the pipeline tests: three units, one style,
/// one planted relation unit_00 -> unit_01 at lag 2.
std::string write_synth_config() {
  const std::string path = in_scratch("synth_cfg.json");
  SynthConfig cfg;
  cfg.units = 3;
  cfg.styles = 1;
  cfg.length = 150;
  cfg.noise_std = 0.05;
  cfg.ar_coef = 0.3;
  PlantedEdge edge;
  edge.src = 0;
  edge.dst = 1;
  edge.lag = 2;
  edge.coef = 0.8;
  cfg.edges = {edge};
  io::save_synth_config_json(path, cfg);
  return path;
}

}  // namespace

TEST_CASE("the binary reports a version and demands a subcommand") {
  const RunResult version = run_cli("--version");
  CHECK(version.code == 0);
  CHECK(!version.out.empty());

  const RunResult bare = run_cli("");
  CHECK(bare.code == 2);

  const RunResult unknown = run_cli("synth --bogus x --out y.csv");
  CHECK(unknown.code == 2);
}

TEST_CASE("missing inputs exit with the data error code and name the path") {
  const RunResult r = run_cli("granger --in " + in_scratch("absent.csv") +
                              " --out " + in_scratch("t.json"));
  CHECK(r.code == 3);
  CHECK(contains(r.err, "absent.csv"));

  const RunResult bad_axis =
      run_cli("granger --in x.csv --out y.json --axis frob");
  CHECK(bad_axis.code == 3);
  CHECK(contains(bad_axis.err, "axis must be unit or style"));
}

TEST_CASE("the generate-discover-rank pipeline finds the planted relation") {
  const std::string cfg = write_synth_config();
  const std::string traj = in_scratch("traj.csv");
  const std::string truth = in_scratch("truth.json");
  const RunResult synth = run_cli("synth --config " + cfg + " --out " + traj +
                                  " --unit-truth " + truth + " --gen-seed 4");
  REQUIRE(synth.code == 0);
  CHECK(contains(synth.out, "generated 3 trajectories"));
  CHECK(fs::exists(traj));
  CHECK(fs::exists(truth));

  // Provenance lands beside the primary output.
  const std::string manifest = io::manifest_path_for(traj);
  REQUIRE(fs::exists(manifest));
  const nlohmann::json mj = nlohmann::json::parse(io::load_text(manifest));
  CHECK(mj.at("command") == "synth");
  CHECK(mj.at("seed") == 4);
  CHECK(mj.at("outputs").size() == 2);

  const std::string tensor = in_scratch("tensor.json");
  const RunResult granger =
      run_cli("granger --in " + traj + " --out " + tensor + " --alpha 0.001");
  REQUIRE(granger.code == 0);
  const InfluenceTensor found = io::load_tensor_json(tensor);
  CHECK(found.lag(0, 1, 0) == 2);

  const std::string rank = in_scratch("rank.csv");
  const RunResult ranked =
      run_cli("rank --tensor " + tensor + " --out " + rank);
  REQUIRE(ranked.code == 0);
  const std::string table = io::load_text(rank);
  CHECK(contains(table, "id,exerted,received,net"));
  CHECK(contains(table, "unit_00,"));

  const std::string dot = in_scratch("graph.dot");
  const RunResult graph = run_cli("export-graph --tensor " + tensor +
                                  " --out " + dot + " --threshold raw");
  REQUIRE(graph.code == 0);
  CHECK(contains(io::load_text(dot), "\"unit_00\" -> \"unit_01\""));
}

TEST_CASE("evaluation and forecasting run end to end on generated data") {
  const std::string cfg = write_synth_config();
  const std::string traj = in_scratch("traj_eval.csv");
  REQUIRE(run_cli("synth --config " + cfg + " --out " + traj +
                  " --gen-seed 4")
              .code == 0);

  const std::string json = in_scratch("report.json");
  const std::string csv = in_scratch("report.csv");
  const RunResult eval = run_cli("evaluate --in " + traj + " --json " + json +
                                 " --csv " + csv + " --horizon 10");
  REQUIRE(eval.code == 0);
  const nlohmann::json rj = nlohmann::json::parse(io::load_text(json));
  CHECK(rj.at("horizon") == 10);
  CHECK(rj.at("models").contains("mean"));
  CHECK(rj.at("models").contains("var_units"));
  CHECK(contains(io::load_text(csv), "model,mae,mape"));

  const std::string fc = in_scratch("forecast.csv");
  const RunResult forecast = run_cli("forecast --in " + traj + " --out " + fc +
                                     " --horizon 6 --max-epochs 40");
  REQUIRE(forecast.code == 0);
  const std::string fc_table = io::load_text(fc);
  CHECK(contains(fc_table, "style,unit,t,value"));
  // Forecast steps are indexed from the end of the validation span.
  CHECK(contains(fc_table, "style_00,unit_00,124,"));
  CHECK(contains(fc_table, "style_00,unit_02,129,"));

  const std::string flat = in_scratch("no_split.csv");
  io::save_text(flat,
                "style,unit,t,value\ns,u,0,1\ns,u,1,2\ns,u,2,1\ns,u,3,2\n");
  const RunResult no_split =
      run_cli("evaluate --in " + flat + " --json " + in_scratch("r2.json"));
  CHECK(no_split.code == 3);
  CHECK(contains(no_split.err, "split"));
}

TEST_CASE("reruns with the same seed produce identical files") {
  const std::string cfg = write_synth_config();
  const std::string t1 = in_scratch("rerun_a.csv");
  const std::string t2 = in_scratch("rerun_b.csv");
  REQUIRE(run_cli("synth --config " + cfg + " --out " + t1 +
                  " --gen-seed 7")
              .code == 0);
  REQUIRE(run_cli("synth --config " + cfg + " --out " + t2 +
                  " --gen-seed 7")
              .code == 0);
  CHECK(io::load_text(t1) == io::load_text(t2));

  const std::string x1 = in_scratch("rerun_a.json");
  const std::string x2 = in_scratch("rerun_b.json");
  REQUIRE(run_cli("granger --in " + t1 + " --out " + x1).code == 0);
  REQUIRE(run_cli("granger --in " + t2 + " --out " + x2).code == 0);
  CHECK(io::load_text(x1) == io::load_text(x2));
}

TEST_CASE("relative paths resolve against the data directory variable") {
  const std::string cfg = write_synth_config();
  const std::string traj = in_scratch("envtest.csv");
  REQUIRE(run_cli("synth --config " + cfg + " --out " + traj +
                  " --gen-seed 7")
              .code == 0);
  const RunResult r =
      run_cli("granger --in envtest.csv --out envtensor.json",
              "STYLECAST_DATA_DIR=" + scratch().string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(scratch() / "envtensor.json"));
}
