#include "decphs/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "decphs/cochain.hpp"
#include "decphs/dirac.hpp"
#include "decphs/error.hpp"
#include "decphs/mesh_io.hpp"
#include "decphs/scenario.hpp"
#include "decphs/sim.hpp"
#include "json.hpp"

namespace decphs {

namespace {

int exit_code(const Error& e) {
  return (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::IoError) ? kExitIo : kExitValidation;
}

std::string verdict(bool ok) { return ok ? "pass" : "FAIL"; }

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) fail(ErrorKind::IoError, "cannot write " + p.string());
  f << std::setprecision(17);
  return f;
}

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create " + dir + ": " + ec.message());
}

Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = uni(rng);
  return v;
}

struct ExactComparison {
  Probe probe;
  ErrorReport report;
  int endpoint = 0;  // probe index of the far end z = e-1
};

ExactComparison compare_with_exact(const Scenario& s, const BuiltScenario& b, const Trajectory& tr) {
  if (s.model != ModelKind::Telegraph) fail(ErrorKind::InvalidArgument, "the telegraph exact solution needs the telegraph model");
  ExactComparison c;
  c.probe = telegraph_voltage_probe(b.model);
  const Signal drive = telegraph_drive(s);
  c.report = error_report(tr, c.probe, [drive](double t, double z) { return exact_telegraph(drive, t, z); });
  for (std::size_t i = 0; i < c.probe.locations.size(); ++i)
    if (c.probe.locations[i] > c.probe.locations[c.endpoint]) c.endpoint = static_cast<int>(i);
  return c;
}

}  // namespace

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size() || n < 1) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad mesh size '" + item + "' in --n-list");
    }
  }
  return out;
}

std::pair<int, int> parse_block(const std::string& text) {
  int r = -1, c = -1;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> r >> comma >> c) || comma != ',' || !in.eof())
    fail(ErrorKind::ParseError, "fault block must look like ROW,COL (got '" + text + "')");
  return {r, c};
}

int cmd_mesh_check(const std::string& mesh_path, std::ostream& out, std::ostream& err) {
  try {
    const SimplicialComplex K = read_mesh_file(mesh_path);
    const WellCenteredReport wc = is_well_centered(K);
    for (int k = 0; k <= K.dim(); ++k) out << (k ? " " : "") << 'N' << k << '=' << K.count(k);
    out << ", well-centered: " << (wc.well_centered ? "yes" : "no") << '\n';
    if (K.is_closed()) {
      out << "boundary: none (closed complex)\n";
    } else {
      out << "boundary: " << K.boundary_faces().size() << " faces";
      for (int k = 0; k + 1 < K.dim(); ++k) out << ", " << K.boundary_count(k) << " simplices of dim " << k;
      out << '\n';
    }
    for (auto [k, i] : wc.offending) {
      out << "not well-centered: dim " << k << " simplex " << i << " (";
      const auto& s = K.simplex(k, i);
      for (std::size_t j = 0; j < s.size(); ++j) out << (j ? "," : "") << s[j];
      out << ")\n";
    }
    if (!wc.well_centered) return kExitValidation;
    const DualComplex dual = build_dual(K);
    const OperatorSet ops = assemble_operators(K, dual);
    out << "hodge condition numbers:";
    for (int k = 0; k <= K.dim(); ++k) out << " M" << k << '=' << hodge_condition_number(ops.M[k]);
    out << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e);
  }
}

int cmd_dirac_verify(const std::string& scenario_path, const std::optional<std::string>& fault, std::ostream& out,
                     std::ostream& err) {
  try {
    const Scenario s = load_scenario(scenario_path);
    const BuiltScenario b = build_scenario(s);
    DiracBlocks d = b.model.dirac;
    out << "structure: " << to_string(s.model) << ' ' << to_string(d.variant) << " n=" << d.n << " p=" << d.p
        << " q=" << d.q << '\n';
    if (fault) {
      const auto [r, c] = parse_block(*fault);
      d = inject_sign_fault(d, r, c);
      out << "fault injected: sign of first entry in block (" << r << ',' << c << ")\n";
    }
    out << "inputs:";
    for (const auto& blk : d.inputs) out << ' ' << blk.name << '[' << blk.size << ']';
    out << "\noutputs:";
    for (const auto& blk : d.outputs) out << ' ' << blk.name << '[' << blk.size << ']';
    out << '\n';

    const DiracReport rep = verify_dirac(d, 200, 1);
    out << "isotropy residual: " << rep.isotropy_residual << " (" << verdict(rep.isotropy_residual < rep.tolerance) << ")\n";
    out << "cross residual: " << rep.cross_residual << " (" << verdict(rep.cross_residual < rep.tolerance) << ")\n";
    out << "dimension: rank " << rep.rank << " of " << rep.output_dim << " (" << verdict(rep.dimension_ok()) << ")\n";
    bool ok = rep.passed();

    const SimplicialComplex& K = b.mesh->complex;
    const int n = K.dim();
    std::mt19937_64 rng(2);
    for (int k = 1; k <= n; ++k) {
      double worst = 0.0;
      for (int t = 0; t < 200; ++t) {
        const Cochain ep(K, k - 1, Locus::Primal, random_vector(cell_count(K, k - 1, Locus::Primal), rng));
        const Cochain eq(K, n - k, Locus::DualInterior, random_vector(cell_count(K, n - k, Locus::DualInterior), rng));
        const Cochain eb(K, n - k, Locus::DualBoundary, random_vector(cell_count(K, n - k, Locus::DualBoundary), rng));
        worst = std::max(worst, summation_by_parts_residual(b.mesh->ops, ep, eq, eb));
      }
      out << "summation by parts k=" << k << ": " << worst << " (" << verdict(worst < 1e-12) << ")\n";
      ok = ok && worst < 1e-12;
    }
    out << "result: " << verdict(ok) << '\n';
    return ok ? kExitOk : kExitValidation;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e);
  }
}

int cmd_simulate(const std::string& scenario_path, const SimulateOverrides& o, const std::string& out_dir,
                 std::ostream& out, std::ostream& err) {
  try {
    Scenario s = load_scenario(scenario_path);
    if (o.dt) s.dt = *o.dt;
    if (o.t_final) s.t_final = *o.t_final;
    const BuiltScenario b = build_scenario(s);
    SimOptions opt;
    opt.dt = s.dt;
    opt.t_final = s.t_final;
    opt.stride = s.outputs.stride;
    const Trajectory tr = simulate(b.model, b.port, b.initial, opt);
    for (const auto& w : tr.warnings) err << "warning: " << w << '\n';

    prepare_dir(out_dir);
    const std::filesystem::path dir(out_dir);
    {
      auto f = open_out(dir / s.outputs.trajectory);
      f << "t,H,P_boundary";
      for (int i = 0; i < b.model.state_dim(); ++i) f << ",x" << i;
      for (int j = 0; j < b.model.port_count(); ++j) f << ",y" << j;
      f << '\n';
      for (int k = 0; k < tr.size(); ++k) {
        f << tr.times[k] << ',' << tr.hamiltonian[k] << ',' << tr.boundary_power[k];
        for (int i = 0; i < tr.states[k].size(); ++i) f << ',' << tr.states[k](i);
        for (int j = 0; j < tr.outputs[k].size(); ++j) f << ',' << tr.outputs[k](j);
        f << '\n';
      }
    }

    const double H0 = tr.hamiltonian.front(), H1 = tr.hamiltonian.back();
    nlohmann::json summary = {
        {"name", s.name},
        {"model", to_string(s.model)},
        {"state_dim", b.model.state_dim()},
        {"dt", s.dt},
        {"t_final", s.t_final},
        {"recorded_steps", tr.size()},
        {"initial_H", H0},
        {"final_H", H1},
        {"supplied_energy", tr.supplied_energy.back()},
        {"dissipated_energy", tr.dissipated_energy.back()},
        {"H_drift", H1 - H0 - tr.supplied_energy.back() + tr.dissipated_energy.back()},
        {"max_step_energy_residual", tr.max_step_residual},
        {"accumulated_energy_residual", tr.accumulated_step_residual},
        {"spectral_radius", tr.spectral_radius},
        {"warnings", tr.warnings},
    };
    out << std::setprecision(6) << "final H = " << H1 << ", H drift = " << summary["H_drift"].get<double>()
        << ", max |energy-balance residual| per step = " << tr.max_step_residual << '\n';

    if (s.exact == "telegraph") {
      const ExactComparison c = compare_with_exact(s, b, tr);
      const ErrorReport& r = c.report;
      summary["max_error"] = r.max_error;
      summary["max_error_location"] = r.locations[r.argmax_location];
      summary["max_error_time"] = r.argmax_time;
      summary["endpoint_max_error"] = r.max_abs_per_location(c.endpoint);
      {
        auto f = open_out(dir / s.outputs.field);
        f << "t";
        for (double z : r.locations) f << ",V(z=" << z << ")";
        f << '\n';
        for (int k = 0; k < tr.size(); ++k) {
          const Eigen::VectorXd v = c.probe.sample(tr, k);
          f << tr.times[k];
          for (int i = 0; i < v.size(); ++i) f << ',' << v(i);
          f << '\n';
        }
      }
      {
        auto f = open_out(dir / s.outputs.endpoint_error);
        const Signal drive = telegraph_drive(s);
        const double z = r.locations[c.endpoint];
        f << "t,numeric,exact,error\n";
        for (int k = 0; k < tr.size(); ++k) {
          const double ex = exact_telegraph(drive, tr.times[k], z);
          f << tr.times[k] << ',' << ex + r.error[k](c.endpoint) << ',' << ex << ',' << r.error[k](c.endpoint) << '\n';
        }
      }
      out << "max voltage error = " << r.max_error << " at z = " << r.locations[r.argmax_location]
          << ", t = " << r.argmax_time << "; at z = " << r.locations[c.endpoint] << ": "
          << r.max_abs_per_location(c.endpoint) << '\n';
    }
    auto f = open_out(dir / s.outputs.summary);
    f << summary.dump(2) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e);
  }
}

int cmd_converge(const std::string& scenario_path, const std::vector<int>& n_list, const SimulateOverrides& o,
                 const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    Scenario s = load_scenario(scenario_path);
    if (o.dt) s.dt = *o.dt;
    if (o.t_final) s.t_final = *o.t_final;
    if (s.exact.empty()) fail(ErrorKind::InvalidArgument, "convergence study needs a scenario with an exact solution");
    if (s.mesh.kind != "uniform_interval") fail(ErrorKind::InvalidArgument, "convergence study refines the uniform_interval generator");
    auto max_error_of = [s](int n) {
      const BuiltScenario b = build_scenario(s, n);
      SimOptions opt;
      opt.dt = s.dt;
      opt.t_final = s.t_final;
      const Trajectory tr = simulate(b.model, b.port, b.initial, opt);
      return compare_with_exact(s, b, tr).report.max_error;
    };
    const double length = s.mesh.b - s.mesh.a;
    const ConvergenceResult res = convergence_study(max_error_of, n_list, [length](int n) { return length / n; });

    prepare_dir(out_dir);
    const std::filesystem::path dir(out_dir);
    nlohmann::json rows = nlohmann::json::array();
    {
      auto f = open_out(dir / s.outputs.convergence);
      f << "n,h,max_error,ratio\n";
      for (const auto& r : res.rows) {
        f << r.n << ',' << r.h << ',' << r.max_error << ',' << r.ratio << '\n';
        rows.push_back({{"n", r.n}, {"h", r.h}, {"max_error", r.max_error}, {"ratio", r.ratio}});
      }
    }
    {
      auto f = open_out(dir / s.outputs.convergence_summary);
      f << nlohmann::json{{"name", s.name}, {"dt", s.dt}, {"t_final", s.t_final}, {"slope", res.slope}, {"rows", rows}}.dump(2)
        << '\n';
    }
    out << std::setprecision(6) << "n        h            max_error    ratio\n";
    for (const auto& r : res.rows)
      out << std::left << std::setw(9) << r.n << std::setw(13) << r.h << std::setw(13) << r.max_error << r.ratio << '\n';
    out << "fitted order: " << res.slope << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e);
  }
}

}  // namespace decphs
