#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "decphs/commands.hpp"
#include "decphs/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Discrete exterior calculus port-Hamiltonian toolkit"};
  app.require_subcommand(1);

  std::string mesh_path, scenario_path, out_dir = ".", n_list, fault;
  std::optional<double> dt, t_final;

  auto* mesh = app.add_subcommand("mesh", "Mesh inspection");
  mesh->require_subcommand(1);
  auto* mesh_check = mesh->add_subcommand("check", "Counts, well-centeredness and boundary of a mesh file");
  mesh_check->add_option("--mesh", mesh_path, "Mesh JSON file")->required();

  auto* dirac = app.add_subcommand("dirac", "Dirac structure checks");
  dirac->require_subcommand(1);
  auto* dirac_verify = dirac->add_subcommand("verify", "Isotropy, dimension and summation-by-parts residuals");
  dirac_verify->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  auto* fault_opt = dirac_verify->add_option("--fault-inject", fault, "Debug: flip one sign in block ROW,COL");

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write trajectory and summary files");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  simulate->add_option("--dt", dt, "Override the time step");
  simulate->add_option("--tfinal", t_final, "Override the final time");
  simulate->add_option("--out", out_dir, "Output directory");

  auto* converge = app.add_subcommand("converge", "Refine the mesh and fit the order of the max error");
  converge->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  converge->add_option("--n-list", n_list, "Comma-separated cell counts, e.g. 10,20,40,80")->required();
  converge->add_option("--dt", dt, "Override the time step");
  converge->add_option("--tfinal", t_final, "Override the final time");
  converge->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? decphs::kExitOk : decphs::kExitIo;
  }

  const decphs::SimulateOverrides overrides{dt, t_final};
  if (mesh_check->parsed()) return decphs::cmd_mesh_check(mesh_path, std::cout, std::cerr);
  if (dirac_verify->parsed())
    return decphs::cmd_dirac_verify(scenario_path, fault_opt->count() ? std::optional<std::string>(fault) : std::nullopt,
                                    std::cout, std::cerr);
  if (simulate->parsed()) return decphs::cmd_simulate(scenario_path, overrides, out_dir, std::cout, std::cerr);
  if (converge->parsed()) {
    try {
      return decphs::cmd_converge(scenario_path, decphs::parse_n_list(n_list), overrides, out_dir, std::cout, std::cerr);
    } catch (const decphs::Error& e) {
      std::cerr << e.what() << '\n';
      return decphs::kExitIo;
    }
  }
  return decphs::kExitIo;
}
