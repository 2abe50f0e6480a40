#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "decphs/models.hpp"
#include "decphs/sim.hpp"

namespace decphs {

struct SignalSpec {
  std::string kind = "zero";  // zero | sine | step
  double amplitude = 1.0;
  double frequency = 1.0;  // angular frequency for sine
  double phase = 0.0;
  double delay = 0.0;      // switch-on time for step
};

Signal make_signal(const SignalSpec& spec);

struct PortSpec {
  std::optional<SignalSpec> signal;
  std::optional<double> load;
};

struct MeshSpec {
  std::string kind = "uniform_interval";  // uniform_interval | file | preset
  double a = 0.0;
  double b = 1.0;
  int n = 10;
  std::string path;
  std::string preset;  // pentagon | two_tets | ring
};

struct MaterialSpec {
  std::string kind = "constant";  // constant | paper_line
  double value = 1.0;
};

ScalarField make_field(const MaterialSpec& spec);

struct InitialSpec {
  std::string kind = "zero";  // zero | random | impulse
  std::uint64_t seed = 1;
  double scale = 1.0;
  int index = 0;
};

struct OutputSpec {
  std::string trajectory = "trajectory.csv";
  std::string summary = "summary.json";
  std::string field = "voltage_field.csv";
  std::string endpoint_error = "endpoint_error.csv";
  std::string convergence = "convergence.csv";
  std::string convergence_summary = "convergence.json";
  int stride = 1;
};

struct Scenario {
  std::string name = "scenario";
  MeshSpec mesh;
  ModelKind model = ModelKind::Telegraph;
  MaterialSpec capacitance, inductance;
  double density = 1.0, stiffness = 1.0;
  double resistance = 1.0, capacity = 1.0;
  double permittivity = 1.0, permeability = 1.0;
  SignalSpec default_signal;
  std::map<int, PortSpec> ports;  // keyed by boundary input cell
  double dt = 0.01;
  double t_final = 1.0;
  InitialSpec initial;
  std::string exact;  // "" or "telegraph"
  OutputSpec outputs;
  std::filesystem::path base_dir;  // relative mesh paths resolve against this
};

// Scenario files are JSON; see docs/formats.md. Throws ParseError with a line number.
Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::string& path);

struct BuiltScenario {
  std::shared_ptr<const DecMesh> mesh;
  PhsModel model;
  BoundaryPort port;
  Eigen::VectorXd initial;
};

// n_cells overrides the uniform_interval cell count.
BuiltScenario build_scenario(const Scenario& s, std::optional<int> n_cells = std::nullopt);
SimplicialComplex build_scenario_mesh(const Scenario& s, std::optional<int> n_cells = std::nullopt);

// The driving signal whose travelling wave the telegraph exact solution describes.
Signal telegraph_drive(const Scenario& s);

}  // namespace decphs
