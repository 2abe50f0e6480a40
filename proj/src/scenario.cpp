#include "decphs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <set>

#include "decphs/error.hpp"
#include "decphs/mesh_io.hpp"
#include "json.hpp"

namespace decphs {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::ParseError, where + ": " + what);
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(where, "expected an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) bad(where, "unknown key '" + k + "'");
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "e-1") return std::exp(1.0) - 1.0;
  bad(where, "expected a number");
}

SignalSpec parse_signal(const json& j, const std::string& where) {
  SignalSpec s;
  if (j.is_string()) {
    s.kind = j.get<std::string>();
  } else {
    allow_keys(j, where, {"kind", "amplitude", "frequency", "phase", "delay"});
    s.kind = j.value("kind", s.kind);
    if (j.contains("amplitude")) s.amplitude = number(j["amplitude"], where + ".amplitude");
    if (j.contains("frequency")) s.frequency = number(j["frequency"], where + ".frequency");
    if (j.contains("phase")) s.phase = number(j["phase"], where + ".phase");
    if (j.contains("delay")) s.delay = number(j["delay"], where + ".delay");
  }
  if (s.kind != "zero" && s.kind != "sine" && s.kind != "step") bad(where, "unknown signal '" + s.kind + "'");
  return s;
}

MaterialSpec parse_material(const json& j, const std::string& where) {
  MaterialSpec m;
  if (j.is_number()) {
    m.value = j.get<double>();
  } else if (j.is_string()) {
    m.kind = j.get<std::string>();
  } else {
    allow_keys(j, where, {"kind", "value"});
    m.kind = j.value("kind", m.kind);
    if (j.contains("value")) m.value = number(j["value"], where + ".value");
  }
  if (m.kind != "constant" && m.kind != "paper_line") bad(where, "unknown material preset '" + m.kind + "'");
  return m;
}

ModelKind parse_model_kind(const std::string& k, const std::string& where) {
  for (ModelKind m : {ModelKind::Telegraph, ModelKind::Wave2D, ModelKind::Diffusion, ModelKind::Maxwell})
    if (k == to_string(m)) return m;
  bad(where, "unknown model '" + k + "'");
}

int line_of(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

}  // namespace

Signal make_signal(const SignalSpec& spec) {
  const SignalSpec s = spec;
  if (s.kind == "sine") return [s](double t) { return s.amplitude * std::sin(s.frequency * t + s.phase); };
  if (s.kind == "step") return [s](double t) { return t >= s.delay ? s.amplitude : 0.0; };
  return [](double) { return 0.0; };
}

ScalarField make_field(const MaterialSpec& spec) {
  if (spec.kind == "paper_line") return paper_line;
  const double v = spec.value;
  return [v](const Point&) { return v; };
}

Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, "line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  Scenario s;
  s.base_dir = base_dir;
  try {
    allow_keys(j, "scenario", {"name", "mesh", "model", "boundary", "dt", "t_final", "initial", "exact", "outputs"});
    s.name = j.value("name", s.name);

    const json& mj = j.at("mesh");
    allow_keys(mj, "mesh", {"generator", "a", "b", "n", "file", "preset"});
    if (mj.contains("file")) {
      s.mesh.kind = "file";
      s.mesh.path = mj["file"].get<std::string>();
    } else if (mj.contains("preset")) {
      s.mesh.kind = "preset";
      s.mesh.preset = mj["preset"].get<std::string>();
    } else {
      if (mj.value("generator", std::string("uniform_interval")) != "uniform_interval")
        bad("mesh.generator", "only uniform_interval is built in");
      if (mj.contains("a")) s.mesh.a = number(mj["a"], "mesh.a");
      if (mj.contains("b")) s.mesh.b = number(mj["b"], "mesh.b");
      s.mesh.n = mj.value("n", s.mesh.n);
    }

    const json& md = j.at("model");
    allow_keys(md, "model", {"kind", "capacitance", "inductance", "density", "stiffness", "resistance", "capacity",
                             "permittivity", "permeability"});
    s.model = parse_model_kind(md.at("kind").get<std::string>(), "model.kind");
    if (md.contains("capacitance")) s.capacitance = parse_material(md["capacitance"], "model.capacitance");
    if (md.contains("inductance")) s.inductance = parse_material(md["inductance"], "model.inductance");
    for (auto [key, field] : {std::pair{"density", &s.density}, std::pair{"stiffness", &s.stiffness},
                              std::pair{"resistance", &s.resistance}, std::pair{"capacity", &s.capacity},
                              std::pair{"permittivity", &s.permittivity}, std::pair{"permeability", &s.permeability}})
      if (md.contains(key)) *field = number(md[key], std::string("model.") + key);

    if (j.contains("boundary")) {
      const json& bj = j["boundary"];
      allow_keys(bj, "boundary", {"default", "ports"});
      if (bj.contains("default")) s.default_signal = parse_signal(bj["default"], "boundary.default");
      for (const auto& pj : bj.value("ports", json::array())) {
        allow_keys(pj, "boundary.ports", {"cell", "signal", "load"});
        const int cell = pj.at("cell").get<int>();
        PortSpec ps;
        if (pj.contains("signal")) ps.signal = parse_signal(pj["signal"], "boundary.ports.signal");
        if (pj.contains("load")) ps.load = number(pj["load"], "boundary.ports.load");
        if (ps.signal && ps.load) bad("boundary.ports", "a port takes a signal or a load, not both");
        s.ports[cell] = ps;
      }
    }

    s.dt = number(j.at("dt"), "dt");
    s.t_final = number(j.at("t_final"), "t_final");
    if (!(s.dt > 0) || !(s.t_final >= 0)) bad("dt/t_final", "need dt > 0 and t_final >= 0");

    if (j.contains("initial")) {
      const json& ij = j["initial"];
      allow_keys(ij, "initial", {"kind", "seed", "scale", "index"});
      s.initial.kind = ij.value("kind", s.initial.kind);
      s.initial.seed = ij.value("seed", s.initial.seed);
      if (ij.contains("scale")) s.initial.scale = number(ij["scale"], "initial.scale");
      s.initial.index = ij.value("index", s.initial.index);
      if (s.initial.kind != "zero" && s.initial.kind != "random" && s.initial.kind != "impulse")
        bad("initial.kind", "unknown initial state '" + s.initial.kind + "'");
    }
    s.exact = j.value("exact", std::string());
    if (!s.exact.empty() && s.exact != "telegraph") bad("exact", "unknown exact solution '" + s.exact + "'");

    if (j.contains("outputs")) {
      const json& oj = j["outputs"];
      allow_keys(oj, "outputs",
                 {"trajectory", "summary", "field", "endpoint_error", "convergence", "convergence_summary", "stride"});
      s.outputs.trajectory = oj.value("trajectory", s.outputs.trajectory);
      s.outputs.summary = oj.value("summary", s.outputs.summary);
      s.outputs.field = oj.value("field", s.outputs.field);
      s.outputs.endpoint_error = oj.value("endpoint_error", s.outputs.endpoint_error);
      s.outputs.convergence = oj.value("convergence", s.outputs.convergence);
      s.outputs.convergence_summary = oj.value("convergence_summary", s.outputs.convergence_summary);
      s.outputs.stride = oj.value("stride", s.outputs.stride);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("scenario schema: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  return parse_scenario(in, std::filesystem::path(path).parent_path());
}

SimplicialComplex build_scenario_mesh(const Scenario& s, std::optional<int> n_cells) {
  if (s.mesh.kind == "file") {
    std::filesystem::path p = s.mesh.path;
    if (p.is_relative()) p = s.base_dir / p;
    return read_mesh_file(p.string());
  }
  if (s.mesh.kind == "preset") {
    if (s.mesh.preset == "pentagon") return pentagon_mesh();
    if (s.mesh.preset == "two_tets") return two_tet_mesh();
    if (s.mesh.preset == "ring") return ring_mesh();
    fail(ErrorKind::ParseError, "unknown mesh preset '" + s.mesh.preset + "'");
  }
  return uniform_interval(s.mesh.a, s.mesh.b, n_cells.value_or(s.mesh.n));
}

BuiltScenario build_scenario(const Scenario& s, std::optional<int> n_cells) {
  BuiltScenario b;
  b.mesh = make_dec_mesh(build_scenario_mesh(s, n_cells));
  switch (s.model) {
    case ModelKind::Telegraph:
      b.model = assemble_telegraph(b.mesh, make_field(s.capacitance), make_field(s.inductance));
      break;
    case ModelKind::Wave2D:
      b.model = assemble_wave2d(b.mesh, s.density, s.stiffness);
      break;
    case ModelKind::Diffusion:
      b.model = assemble_diffusion(b.mesh, s.resistance, s.capacity);
      break;
    case ModelKind::Maxwell:
      b.model = assemble_maxwell(b.mesh, s.permittivity, s.permeability);
      break;
  }
  b.port = zero_port(b.model);
  for (int j = 0; j < b.port.size(); ++j) set_signal(b.port, j, make_signal(s.default_signal));
  for (const auto& [cell, ps] : s.ports) {
    if (ps.load) set_load(b.port, cell, *ps.load);
    if (ps.signal) set_signal(b.port, cell, make_signal(*ps.signal));
  }
  const int nx = b.model.state_dim();
  b.initial = Eigen::VectorXd::Zero(nx);
  if (s.initial.kind == "random") {
    std::mt19937_64 rng(s.initial.seed);
    std::uniform_real_distribution<double> uni(-s.initial.scale, s.initial.scale);
    for (int i = 0; i < nx; ++i) b.initial(i) = uni(rng);
  } else if (s.initial.kind == "impulse") {
    if (s.initial.index < 0 || s.initial.index >= nx) fail(ErrorKind::IndexOutOfRange, "impulse index outside the state");
    b.initial(s.initial.index) = s.initial.scale;
  }
  return b;
}

Signal telegraph_drive(const Scenario& s) {
  auto it = s.ports.find(0);
  if (it != s.ports.end() && it->second.signal) return make_signal(*it->second.signal);
  return make_signal(s.default_signal);
}

}  // namespace decphs
