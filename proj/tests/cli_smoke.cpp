// End-to-end exercise of the command-line tool using a tiny cohort.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

int run(const std::string& args) {
  const std::string cmd = std::string(PASSIM_BIN) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
  const fs::path base = fs::temp_directory_path() / "passim_cli_smoke";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string data = (base / "data").string();
  const std::string out = (base / "out").string();

  check(run("simulate --events 1 --runs 3 --seed 11 --out " + data) == 0, "simulate");
  check(fs::exists(base / "data" / "manifest.json"), "manifest written");
  check(fs::exists(base / "data" / "trajectories" / "A1" / "r00.csv"), "trajectories written");

  // Idempotence: the same command into a fresh directory is byte-identical.
  const std::string data2 = (base / "data2").string();
  check(run("simulate --events 1 --runs 3 --seed 11 --out " + data2) == 0, "simulate again");
  check(slurp(base / "data" / "trajectories" / "A1" / "r00.csv") ==
            slurp(base / "data2" / "trajectories" / "A1" / "r00.csv"),
        "reruns byte-identical");

  check(run("evaluate --dataset " + data + " --out " + out) == 0, "evaluate");
  check(fs::exists(base / "out" / "evaluation_report.json"), "evaluation report");
  check(fs::exists(base / "out" / "metrics" / "A1" / "r00.csv"), "per-tick metrics");
  {
    std::ifstream metrics(base / "out" / "metrics" / "A1" / "r00.csv");
    std::string header;
    std::getline(metrics, header);
    check(header == "vehicle_id,time,lane_id,v0,v_proj,chosen_lane,A,dA,dA_scaled,pass,baseline",
          "metric csv header");
  }

  check(run("calibrate --dataset " + data + " --out " + out + " --step 0.1") == 0, "calibrate");
  check(fs::exists(base / "out" / "grid.csv"), "grid dump");
  {
    std::ifstream grid(base / "out" / "grid.csv");
    int lines = 0;
    std::string line;
    while (std::getline(grid, line)) ++lines;
    check(lines == 1 + 10 * 10, "grid row count at step 0.1");
  }

  check(run("compare --dataset " + data + " --out " + out + " --k1 -0.4 --k2 0.7") == 0,
        "compare");
  check(fs::exists(base / "out" / "compare_scatter.csv"), "scatter output");
  {
    const std::string summary = slurp(base / "out" / "compare_summary.json");
    check(summary.find("not reproduced") != std::string::npos,
          "reference values flagged as annotations");
  }

  check(run("report --out " + out) == 0, "report");
  check(run("report --out " + out + " --json") == 0, "report --json");

  check(run("evaluate --dataset " + (base / "nowhere").string() + " --out " + out) != 0,
        "missing dataset fails loudly");

  if (failures == 0) {
    std::printf("cli smoke: all checks passed\n");
    return 0;
  }
  std::printf("cli smoke: %d failure(s)\n", failures);
  return 1;
}
