#include "decphs/sim.hpp"

#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

#include "decphs/error.hpp"

namespace decphs {

Eigen::VectorXd port_signals(const BoundaryPort& port, double t) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(port.size());
  for (int j = 0; j < port.size(); ++j)
    if (!port.load[j] && port.signal[j]) s(j) = port.signal[j](t);
  return s;
}

ClosedLoop close_loop(const PhsModel& m, const BoundaryPort& port) {
  const int nu = m.port_count();
  if (port.size() != nu) fail(ErrorKind::DimensionMismatch, "port does not match the model's boundary");
  Eigen::MatrixXd Kd = Eigen::MatrixXd::Zero(nu, nu);
  for (int j = 0; j < nu; ++j)
    if (port.load[j]) Kd(j, j) = -m.boundary_weight() * *port.load[j];
  const Eigen::MatrixXd gain =
      (Eigen::MatrixXd::Identity(nu, nu) - Kd * Eigen::MatrixXd(m.F)).partialPivLu().inverse();
  ClosedLoop cl;
  cl.K = gain * Kd * Eigen::MatrixXd(m.C);
  cl.L = gain * Eigen::MatrixXd(port.orientation.asDiagonal());
  cl.A = m.A + (m.B * cl.K).sparseView();
  cl.B = (m.B * cl.L).sparseView();
  cl.A.prune(0.0);
  return cl;
}

double spectral_radius(const RealSparse& A, int iterations) {
  if (A.rows() == 0) return 0.0;
  Eigen::VectorXd v(A.rows());
  for (int i = 0; i < v.size(); ++i) v(i) = 1.0 + 0.37 * std::sin(1.0 + i);
  v.normalize();
  double log_growth = 0.0;
  int counted = 0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd w = A * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    if (it >= iterations / 2) {
      log_growth += std::log(norm);
      ++counted;
    }
    v = w / norm;
  }
  return std::exp(log_growth / counted);
}

Trajectory simulate(const PhsModel& m, const BoundaryPort& port, const Eigen::VectorXd& x0, const SimOptions& opt) {
  if (!(opt.dt > 0) || !(opt.t_final >= 0)) fail(ErrorKind::InvalidArgument, "need dt > 0 and t_final >= 0");
  if (opt.stride < 1) fail(ErrorKind::InvalidArgument, "stride must be positive");
  if (x0.size() != m.state_dim()) fail(ErrorKind::DimensionMismatch, "initial state has wrong length");
  const ClosedLoop cl = close_loop(m, port);
  const int wb = m.boundary_weight();

  Trajectory tr;
  tr.spectral_radius = spectral_radius(cl.A);
  if (opt.dt * tr.spectral_radius > 2.8) {
    std::ostringstream os;
    os << "dt * spectral radius = " << opt.dt * tr.spectral_radius << " exceeds the RK4 stability bound 2.8";
    tr.warnings.push_back(os.str());
  }

  struct Rate {
    Eigen::VectorXd dx;
    double power, loss;
  };
  auto input_at = [&](double t, const Eigen::VectorXd& x) { return Eigen::VectorXd(cl.K * x + cl.L * port_signals(port, t)); };
  auto rate = [&](double t, const Eigen::VectorXd& x) {
    const Eigen::VectorXd s = port_signals(port, t);
    const Eigen::VectorXd u = cl.K * x + cl.L * s;
    Rate r;
    r.dx = cl.A * x + cl.B * s;
    r.power = wb * u.dot(m.C * x + m.F * u);
    r.loss = dissipation_rate(m, x, u);
    return r;
  };

  long steps = static_cast<long>(std::ceil(opt.t_final / opt.dt - 1e-9));
  if (steps < 0) steps = 0;
  Eigen::VectorXd x = x0;
  double t = 0.0, supplied = 0.0, dissipated = 0.0, abs_supplied = 0.0;
  double H = hamiltonian(m, x);
  const double H0 = H;

  auto record = [&] {
    const Eigen::VectorXd u = input_at(t, x);
    tr.times.push_back(t);
    if (opt.store_states) tr.states.push_back(x);
    tr.hamiltonian.push_back(H);
    tr.boundary_power.push_back(boundary_power(m, x, u));
    tr.supplied_energy.push_back(supplied);
    tr.dissipated_energy.push_back(dissipated);
    tr.inputs.push_back(u);
    tr.outputs.push_back(boundary_output(m, x, u));
  };
  record();
  for (long k = 0; k < steps; ++k) {
    const double t_next = (k + 1 == steps) ? opt.t_final : (k + 1) * opt.dt;
    const double h = t_next - t;
    const Rate k1 = rate(t, x);
    const Rate k2 = rate(t + h / 2, x + (h / 2) * k1.dx);
    const Rate k3 = rate(t + h / 2, x + (h / 2) * k2.dx);
    const Rate k4 = rate(t + h, x + h * k3.dx);
    x += (h / 6) * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx);
    const double dS = (h / 6) * (k1.power + 2 * k2.power + 2 * k3.power + k4.power);
    const double dD = (h / 6) * (k1.loss + 2 * k2.loss + 2 * k3.loss + k4.loss);
    supplied += dS;
    dissipated += dD;
    abs_supplied += (h / 6) * (std::abs(k1.power) + 2 * std::abs(k2.power) + 2 * std::abs(k3.power) + std::abs(k4.power));
    t = t_next;
    const double H_next = hamiltonian(m, x);
    const double residual = std::abs(H_next - H - dS + dD);
    tr.max_step_residual = std::max(tr.max_step_residual, residual);
    tr.accumulated_step_residual += residual;
    H = H_next;
    if (opt.stability_guard && (!x.allFinite() || H > 10.0 * (H0 + abs_supplied) + 1e-300)) {
      std::ostringstream os;
      os << "energy blew up at t = " << t << " (dt = " << opt.dt << ", dt * spectral radius = "
         << opt.dt * tr.spectral_radius << ")";
      fail(ErrorKind::UnstableStep, os.str());
    }
    if ((k + 1) % opt.stride == 0 || k + 1 == steps) record();
  }
  return tr;
}

double exact_telegraph(const Signal& u, double t, double z) {
  const double zmax = std::exp(1.0) - 1.0;
  if (t < 0 || z < -1e-12 || z > zmax + 1e-12) fail(ErrorKind::OutOfDomain, "exact solution defined for t >= 0, z in [0, e-1]");
  const double s = t - std::log1p(std::max(z, 0.0));
  return s < 0 ? 0.0 : u(s);
}

std::vector<double> ErrorReport::series_at(int location) const {
  std::vector<double> s;
  for (const auto& e : error) s.push_back(e(location));
  return s;
}

ErrorReport error_report(const Trajectory& traj, const Probe& probe, const SpaceTimeField& exact) {
  ErrorReport r;
  r.locations = probe.locations;
  const int nloc = static_cast<int>(probe.locations.size());
  r.max_abs_per_location = Eigen::VectorXd::Zero(nloc);
  r.max_error = -1.0;
  for (int k = 0; k < traj.size(); ++k) {
    const double t = traj.times[k];
    const Eigen::VectorXd num = probe.sample(traj, k);
    if (num.size() != nloc) fail(ErrorKind::DimensionMismatch, "probe returned wrong number of samples");
    Eigen::VectorXd e(nloc);
    for (int i = 0; i < nloc; ++i) e(i) = num(i) - exact(t, probe.locations[i]);
    for (int i = 0; i < nloc; ++i) {
      const double a = std::abs(e(i));
      r.max_abs_per_location(i) = std::max(r.max_abs_per_location(i), a);
      if (a > r.max_error) {
        r.max_error = a;
        r.argmax_location = i;
        r.argmax_time = t;
      }
    }
    r.times.push_back(t);
    r.max_abs_per_step.push_back(nloc ? e.cwiseAbs().maxCoeff() : 0.0);
    r.l2_per_step.push_back(nloc ? std::sqrt(e.squaredNorm() / nloc) : 0.0);
    r.error.push_back(std::move(e));
  }
  r.max_error = std::max(r.max_error, 0.0);
  return r;
}

OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size()) fail(ErrorKind::DimensionMismatch, "h and error lists differ in length");
  if (h.size() < 2) fail(ErrorKind::InsufficientPoints, "need at least two points to fit an order");
  const int m = static_cast<int>(h.size());
  Eigen::VectorXd x(m), y(m);
  for (int i = 0; i < m; ++i) {
    if (!(h[i] > 0) || !(err[i] > 0)) fail(ErrorKind::InvalidArgument, "fit needs positive sizes and errors");
    x(i) = std::log(h[i]);
    y(i) = std::log(err[i]);
  }
  const double mx = x.mean(), my = y.mean();
  const double var = (x.array() - mx).square().sum();
  if (var == 0) fail(ErrorKind::InsufficientPoints, "all sizes are equal");
  OrderFit f;
  f.slope = ((x.array() - mx) * (y.array() - my)).sum() / var;
  f.intercept = my - f.slope * mx;
  return f;
}

ConvergenceResult convergence_study(const std::function<double(int)>& max_error_of, const std::vector<int>& n_list,
                                    const std::function<double(int)>& h_of, bool parallel) {
  if (n_list.size() < 3) fail(ErrorKind::InsufficientPoints, "convergence study needs at least three mesh sizes");
  std::vector<double> err(n_list.size());
  if (parallel) {
    std::vector<std::future<double>> jobs;
    for (int n : n_list) jobs.push_back(std::async(std::launch::async, max_error_of, n));
    for (std::size_t i = 0; i < jobs.size(); ++i) err[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < n_list.size(); ++i) err[i] = max_error_of(n_list[i]);
  }
  ConvergenceResult res;
  std::vector<double> hs;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    ConvergenceRow row;
    row.n = n_list[i];
    row.h = h_of(n_list[i]);
    row.max_error = err[i];
    row.ratio = i ? err[i - 1] / err[i] : 0.0;
    hs.push_back(row.h);
    res.rows.push_back(row);
  }
  res.slope = fit_order(hs, err).slope;
  return res;
}

double paper_line(const Point& x) { return 1.0 / (1.0 + x(0)); }

Probe telegraph_voltage_probe(const PhsModel& m) {
  const auto& K = m.mesh->complex;
  const auto& dual = m.mesh->dual;
  Probe p;
  Eigen::VectorXd edge_sign(K.count(1));
  for (int e = 0; e < K.count(1); ++e) {
    p.locations.push_back(dual.circumcenters(1)[e](0));
    edge_sign(e) = dual.interior_cells(1)[e].pieces.front().sign;
  }
  const auto& ends = K.boundary_simplices(0);
  for (int v : ends) p.locations.push_back(K.vertices()[v](0));
  const int ne = K.count(1);
  const Eigen::VectorXd orient = m.port_orientation;
  const RealSparse E = m.E;
  const int off = m.dirac.input_offset(0);
  p.sample = [ne, edge_sign, orient, E, off](const Trajectory& tr, int k) {
    if (k >= static_cast<int>(tr.states.size())) fail(ErrorKind::IndexOutOfRange, "trajectory holds no state for this step");
    Eigen::VectorXd out(ne + orient.size());
    const Eigen::VectorXd efforts = E * tr.states[k];
    out.head(ne) = edge_sign.cwiseProduct(efforts.segment(off, ne));
    out.tail(orient.size()) = orient.cwiseProduct(tr.inputs[k]);
    return out;
  };
  return p;
}

TelegraphRun run_telegraph(const TelegraphSetup& setup) {
  auto mesh = make_dec_mesh(uniform_interval(0.0, std::exp(1.0) - 1.0, setup.n));
  TelegraphRun run{assemble_telegraph(mesh, paper_line, paper_line), {}, {}, {}, {}};
  run.port = zero_port(run.model);
  set_signal(run.port, 0, setup.drive);
  set_load(run.port, 1, setup.load);
  SimOptions opt;
  opt.dt = setup.dt;
  opt.t_final = setup.t_final;
  opt.stride = setup.stride;
  run.trajectory = simulate(run.model, run.port, Eigen::VectorXd::Zero(run.model.state_dim()), opt);
  run.probe = telegraph_voltage_probe(run.model);
  const Signal drive = setup.drive;
  run.error = error_report(run.trajectory, run.probe, [drive](double t, double z) { return exact_telegraph(drive, t, z); });
  return run;
}

}  // namespace decphs
