#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliRun result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.out.append(buf, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "hyperpack_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("validate accepts builtins and fixture files") {
  for (const char* name : {"double4", "fan6", "self_glued"}) {
    const CliRun run = run_cli(std::string("validate --triangulation ") + name);
    CHECK(run.exit_code == 0);
    const json doc = json::parse(run.out);
    CHECK(doc["valid"] == true);
  }
  const CliRun file = run_cli("validate --triangulation " + fixture("tet1.json"));
  CHECK(file.exit_code == 0);
}

TEST_CASE("validate rejects unknown names and bad documents with exit 2") {
  CHECK(run_cli("validate --triangulation no_such_thing").exit_code == 2);
  const fs::path bad = write_file("bad.json", "{\"version\": 1}");
  CHECK(run_cli("validate --triangulation " + bad.string()).exit_code == 2);
  CHECK(run_cli("validate --no-such-flag").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("lengths reports the regular values") {
  const CliRun run = run_cli("lengths --triangulation double4 --weights " +
                             fixture("double4_weights_zero.json") + " --radii " +
                             fixture("double4_radii_one.json"));
  CHECK(run.exit_code == 0);
  const json doc = json::parse(run.out);
  CHECK(doc["all_exist"] == true);
  for (const auto& l : doc["lengths"]) {
    CHECK(std::abs(l.get<double>() - 2.0) < 1e-14);
  }
}

TEST_CASE("lengths exits 1 when a length is missing") {
  const fs::path radii = write_file("small_radii.json", "[0.1, 0.1, 0.1, 0.1]\n");
  const CliRun run = run_cli("lengths --triangulation " + fixture("tet1.json") +
                             " --weights " + fixture("tet1_weights_pattern.json") +
                             " --radii " + radii.string());
  CHECK(run.exit_code == 1);
  const json doc = json::parse(run.out);
  CHECK(doc["all_exist"] == false);
}

TEST_CASE("check flags the always degenerate pattern") {
  const CliRun run = run_cli("check --triangulation " + fixture("tet1.json") +
                             " --weights " + fixture("tet1_weights_pattern.json") +
                             " --radii " + fixture("tet1_radii_one.json"));
  CHECK(run.exit_code == 0);
  const json doc = json::parse(run.out);
  CHECK(doc["admissible"] == false);
  CHECK(doc["always_degenerate"] == true);
}

TEST_CASE("curvature matches the pinned regular values") {
  const CliRun run = run_cli("curvature --triangulation double4 --weights " +
                             fixture("double4_weights_zero.json") + " --radii " +
                             fixture("double4_radii_one.json"));
  CHECK(run.exit_code == 0);
  const json doc = json::parse(run.out);
  for (const auto& k : doc["edge_ricci"]) {
    CHECK(std::abs(k.get<double>() - 4.3708017940474442114) < 1e-12);
  }
  for (const auto& k : doc["vertex_scalar"]) {
    CHECK(std::abs(k.get<double>() - 13.112405382142332634) < 1e-12);
  }
  CHECK(doc["link_gauss_bonnet"]["max_residual"].get<double>() < 1e-12);
}

TEST_CASE("curvature exits 1 on inadmissible states") {
  const fs::path weights = write_file("heavy_weights.json",
                                      "[1.57, 1.57, 1.57, 1.57, 1.57, 1.57]\n");
  const fs::path radii = write_file("tiny_radii.json", "[0.05, 0.05, 0.05, 0.05]\n");
  const CliRun run = run_cli("curvature --triangulation double4 --weights " +
                             weights.string() + " --radii " + radii.string());
  CHECK(run.exit_code == 1);
}

TEST_CASE("certify passes the regular tier state in both modes") {
  for (const char* mode : {"scalar", "ricci"}) {
    const CliRun run = run_cli("certify --mode " + std::string(mode) +
                               " --triangulation double4 --weights " +
                               fixture("double4_weights_zero.json") + " --radii " +
                               fixture("double4_radii_one.json"));
    CHECK(run.exit_code == 0);
    const json doc = json::parse(run.out);
    CHECK(doc["certified"] == true);
    CHECK(doc["lambda_max"].get<double>() < 0.0);
  }
}

TEST_CASE("solve recovers a perturbed regular state") {
  const fs::path target = write_file(
      "target.json",
      "[13.112405382142332634, 13.112405382142332634, 13.112405382142332634, "
      "13.112405382142332634]\n");
  const fs::path start = write_file("start_radii.json", "[1.05, 0.93, 1.1, 0.97]\n");
  const CliRun run = run_cli("solve --triangulation double4 --weights " +
                             fixture("double4_weights_zero.json") + " --radii " +
                             start.string() + " --target " + target.string());
  CHECK(run.exit_code == 0);
  const json doc = json::parse(run.out);
  CHECK(doc["converged"] == true);
  for (const auto& r : doc["radii"]) {
    CHECK(std::abs(r.get<double>() - 1.0) < 1e-8);
  }
}

TEST_CASE("solve requires the target flag") {
  CHECK(run_cli("solve --triangulation double4 --weights " +
                fixture("double4_weights_zero.json") + " --radii " +
                fixture("double4_radii_one.json")).exit_code == 2);
}

TEST_CASE("sample is deterministic per seed") {
  const std::string args = "sample --weights " + fixture("double4_weights_zero.json") +
                           " --apex 2 --seed 9 --samples 5";
  const CliRun a = run_cli(args);
  const CliRun b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["points"].size() == 5);
  for (const auto& p : doc["points"]) {
    // Zero weights keep the threshold well above the reachable t < 1 range.
    CHECK(p["tau_star"].get<double>() > 1.0);
  }
}

TEST_CASE("volume totals are antisymmetric") {
  const fs::path r1 = write_file("vol_r1.json", "[1.0, 1.0, 1.0, 1.0]\n");
  const fs::path r2 = write_file("vol_r2.json", "[1.2, 0.9, 1.1, 1.05]\n");
  const std::string base = "volume --triangulation double4 --weights " +
                           fixture("double4_weights_zero.json");
  const CliRun ab =
      run_cli(base + " --radii " + r1.string() + " --reference " + r2.string());
  const CliRun ba =
      run_cli(base + " --radii " + r2.string() + " --reference " + r1.string());
  CHECK(ab.exit_code == 0);
  CHECK(ba.exit_code == 0);
  const double tab = json::parse(ab.out)["total"].get<double>();
  const double tba = json::parse(ba.out)["total"].get<double>();
  CHECK(std::abs(tab + tba) < 1e-12);
  CHECK(std::abs(tab) > 1e-6);
}

TEST_CASE("verify runs clean and reproduces bytes") {
  const fs::path out1 = scratch_dir() / "verify1.json";
  const fs::path out2 = scratch_dir() / "verify2.json";
  const CliRun a =
      run_cli("verify --seed 0 --samples 500 --out " + out1.string());
  const CliRun b =
      run_cli("verify --seed 0 --samples 500 --out " + out2.string());
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
  const json doc = json::parse(slurp(out1));
  CHECK(doc["all_pass"] == true);
  CHECK(doc["total"].get<int>() == doc["passed"].get<int>());
}

TEST_CASE("csv output has one row per suite") {
  const CliRun run = run_cli("verify --seed 1 --samples 300 --csv");
  CHECK(run.exit_code == 0);
  const auto rows = std::count(run.out.begin(), run.out.end(), '\n');
  const json doc = json::parse(run_cli("verify --seed 1 --samples 300").out);
  CHECK(rows == static_cast<long>(doc["total"].get<int>()) + 1);
}
