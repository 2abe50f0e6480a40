#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "decphs/commands.hpp"
#include "decphs/error.hpp"
#include "decphs/scenario.hpp"
#include "json.hpp"

using namespace decphs;
namespace fs = std::filesystem;

namespace {

const std::string root = DECPHS_SOURCE_DIR;
std::string mesh(const std::string& name) { return root + "/data/meshes/" + name; }
std::string scenario(const std::string& name) { return root + "/data/scenarios/" + name; }

std::string scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("decphs_cli_test_" + name);
  fs::remove_all(p);
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

int run_binary(const std::string& args) {
  const int status = std::system((std::string(DECPHS_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("mesh check") {
  std::ostringstream out, err;
  CHECK(cmd_mesh_check(mesh("pentagon.json"), out, err) == kExitOk);
  CHECK(out.str().rfind("N0=6 N1=10 N2=5, well-centered: yes\n", 0) == 0);

  std::ostringstream out2, err2;
  CHECK(cmd_mesh_check(mesh("right_triangle.json"), out2, err2) == kExitValidation);
  CHECK(out2.str().find("not well-centered: dim 2 simplex 0 (0,1,2)") != std::string::npos);

  std::ostringstream out3, err3;
  CHECK(cmd_mesh_check(mesh("malformed.json"), out3, err3) == kExitIo);
  CHECK(err3.str().find("ParseError: line 6") != std::string::npos);

  std::ostringstream out4, err4;
  CHECK(cmd_mesh_check(mesh("bowtie.json"), out4, err4) == kExitValidation);
  CHECK(err4.str().find("NonManifold") != std::string::npos);

  std::ostringstream out5, err5;
  CHECK(cmd_mesh_check(mesh("missing.json"), out5, err5) == kExitIo);
}

TEST_CASE("dirac verify") {
  for (const char* name : {"telegraph_benchmark.json", "pentagon_wave.json", "maxwell_two_tets.json"}) {
    std::ostringstream out, err;
    CHECK(cmd_dirac_verify(scenario(name), std::nullopt, out, err) == kExitOk);
    CHECK(out.str().find("result: pass") != std::string::npos);
  }
  std::ostringstream out, err;
  CHECK(cmd_dirac_verify(scenario("telegraph_benchmark.json"), std::string("1,0"), out, err) == kExitValidation);
  CHECK(out.str().find("result: FAIL") != std::string::npos);
  std::ostringstream out2, err2;
  CHECK(cmd_dirac_verify(scenario("telegraph_benchmark.json"), std::string("one"), out2, err2) == kExitIo);
}

TEST_CASE("simulate the benchmark") {
  const std::string dir = scratch("bench");
  std::ostringstream out, err;
  SimulateOverrides o;
  o.t_final = 5.0;
  REQUIRE(cmd_simulate(scenario("telegraph_benchmark.json"), o, dir, out, err) == kExitOk);
  const std::string traj = slurp(fs::path(dir) / "trajectory.csv");
  CHECK(traj.rfind("t,H,P_boundary,x0,", 0) == 0);
  CHECK(slurp(fs::path(dir) / "voltage_field.csv").rfind("t,V(z=", 0) == 0);
  CHECK(slurp(fs::path(dir) / "endpoint_error.csv").rfind("t,numeric,exact,error\n", 0) == 0);
  const auto summary = nlohmann::json::parse(slurp(fs::path(dir) / "summary.json"));
  CHECK(summary.at("max_error").get<double>() < 0.05);
  CHECK(summary.at("max_step_energy_residual").get<double>() < 1e-9);
  CHECK(summary.at("t_final").get<double>() == 5.0);

  // Re-running gives identical files.
  const std::string again = scratch("bench_again");
  std::ostringstream o2, e2;
  REQUIRE(cmd_simulate(scenario("telegraph_benchmark.json"), o, again, o2, e2) == kExitOk);
  for (const char* f : {"trajectory.csv", "summary.json", "voltage_field.csv", "endpoint_error.csv"})
    CHECK(slurp(fs::path(dir) / f) == slurp(fs::path(again) / f));
}

TEST_CASE("simulate lossless and unstable scenarios") {
  std::ostringstream out, err;
  const std::string dir = scratch("maxwell");
  REQUIRE(cmd_simulate(scenario("maxwell_two_tets.json"), {}, dir, out, err) == kExitOk);
  const auto summary = nlohmann::json::parse(slurp(fs::path(dir) / "summary.json"));
  CHECK(std::abs(summary.at("H_drift").get<double>()) < 1e-10);

  std::ostringstream out2, err2;
  CHECK(cmd_simulate(scenario("unstable.json"), {}, scratch("unstable"), out2, err2) == kExitValidation);
  CHECK(err2.str().find("UnstableStep") != std::string::npos);
}

TEST_CASE("converge") {
  SimulateOverrides o;
  o.dt = 0.002;
  o.t_final = 4.0;
  std::ostringstream out, err;
  CHECK(cmd_converge(scenario("telegraph_converge.json"), {10, 20}, o, scratch("conv2"), out, err) == kExitValidation);
  CHECK(err.str().find("InsufficientPoints") != std::string::npos);

  const std::string dir = scratch("conv");
  std::ostringstream out2, err2;
  REQUIRE(cmd_converge(scenario("telegraph_converge.json"), {10, 20, 40}, o, dir, out2, err2) == kExitOk);
  CHECK(out2.str().find("fitted order: ") != std::string::npos);
  const auto summary = nlohmann::json::parse(slurp(fs::path(dir) / "convergence.json"));
  CHECK(summary.at("slope").get<double>() > 0.5);
  CHECK(summary.at("rows").size() == 3);
  CHECK(slurp(fs::path(dir) / "convergence.csv").rfind("n,h,max_error,ratio\n", 0) == 0);

  std::ostringstream out3, err3;
  CHECK(cmd_converge(scenario("pentagon_wave.json"), {10, 20, 40}, o, scratch("conv3"), out3, err3) == kExitValidation);
}

TEST_CASE("scenario parsing") {
  std::istringstream ok(R"({"mesh": {"a": 0, "b": "e-1", "n": 4}, "model": {"kind": "telegraph"},
                            "dt": 0.1, "t_final": 1})");
  const Scenario s = parse_scenario(ok);
  CHECK(s.mesh.b == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(s.mesh.n == 4);
  std::istringstream unknown(R"({"mesh": {}, "model": {"kind": "telegraph"}, "dt": 0.1, "t_final": 1, "colour": 2})");
  CHECK_THROWS_WITH_AS(parse_scenario(unknown), doctest::Contains("unknown key 'colour'"), Error);
  std::istringstream broken("{\n  \"mesh\": {},\n  \"dt\": ,\n}");
  CHECK_THROWS_WITH_AS(parse_scenario(broken), doctest::Contains("line 3"), Error);
  CHECK(parse_n_list("10,20,40") == std::vector<int>{10, 20, 40});
  CHECK_THROWS_AS(parse_n_list("10,x"), Error);
  CHECK(parse_block("2,0") == std::pair<int, int>{2, 0});
}

TEST_CASE("command line exit codes") {
  CHECK(run_binary("--help") == 0);
  CHECK(run_binary("mesh check --mesh " + mesh("pentagon.json")) == 0);
  CHECK(run_binary("mesh check --mesh " + mesh("right_triangle.json")) == 1);
  CHECK(run_binary("mesh check --mesh " + mesh("malformed.json")) == 2);
  CHECK(run_binary("simulate") == 2);
  CHECK(run_binary("frobnicate") == 2);
  CHECK(run_binary("converge --scenario " + scenario("telegraph_converge.json") + " --n-list 10,abc") == 2);
}
