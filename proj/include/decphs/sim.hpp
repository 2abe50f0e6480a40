#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "decphs/models.hpp"

namespace decphs {

struct SimOptions {
  double dt = 0.01;
  double t_final = 1.0;
  int stride = 1;             // record every stride-th step (the last step is always kept)
  bool store_states = true;
  bool stability_guard = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> hamiltonian;
  std::vector<double> boundary_power;
  std::vector<double> supplied_energy;    // integral of boundary power since t = 0
  std::vector<double> dissipated_energy;  // integral of internal dissipation since t = 0
  std::vector<Eigen::VectorXd> inputs;    // boundary input cells, loads included
  std::vector<Eigen::VectorXd> outputs;
  double max_step_residual = 0.0;          // max over steps of |dH - supplied + dissipated|
  double accumulated_step_residual = 0.0;  // sum of the same over all steps
  double spectral_radius = 0.0;
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(times.size()); }
};

// Closed-loop linear system with the port's loads folded in:
// dx/dt = A x + B s(t), u = K x + L s(t), s = oriented driving signals.
struct ClosedLoop {
  RealSparse A, B;
  Eigen::MatrixXd K, L;
};

ClosedLoop close_loop(const PhsModel& m, const BoundaryPort& port);
Eigen::VectorXd port_signals(const BoundaryPort& port, double t);

// Spectral radius estimate by power iteration.
double spectral_radius(const RealSparse& A, int iterations = 300);

// Classic fixed-step RK4; supplied and dissipated energy are integrated with
// the same stages. Throws UnstableStep if the energy leaves any bound the
// boundary supply can explain, or the state stops being finite.
Trajectory simulate(const PhsModel& m, const BoundaryPort& port, const Eigen::VectorXd& x0, const SimOptions& opt);

// u(t - ln(z + 1)), zero before the wave front arrives.
double exact_telegraph(const Signal& u, double t, double z);

// Samples the numerical field at fixed locations for each recorded step.
struct Probe {
  std::vector<double> locations;
  std::function<Eigen::VectorXd(const Trajectory&, int step)> sample;
};

using SpaceTimeField = std::function<double(double t, double z)>;

struct ErrorReport {
  std::vector<double> locations;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> error;    // signed numeric - exact, per step and location
  Eigen::VectorXd max_abs_per_location;  // over time
  std::vector<double> max_abs_per_step;  // over space
  std::vector<double> l2_per_step;       // root mean square over locations
  double max_error = 0.0;
  int argmax_location = 0;
  double argmax_time = 0.0;

  std::vector<double> series_at(int location) const;
};

ErrorReport error_report(const Trajectory& traj, const Probe& probe, const SpaceTimeField& exact);

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares slope of log(err) against log(h).
OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& err);

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double max_error = 0.0;
  double ratio = 0.0;  // previous max_error / this max_error (0 for the first row)
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;
};

// Runs max_error_of(n) for every n (in parallel when asked), fits the order
// against h_of(n). Throws InsufficientPoints for fewer than three sizes.
ConvergenceResult convergence_study(const std::function<double(int)>& max_error_of, const std::vector<int>& n_list,
                                    const std::function<double(int)>& h_of, bool parallel = true);

// The transmission line on [0, e-1] with C = L = 1/(1+z), driven at z = 0
// and closed by a resistive load at the far end.
struct TelegraphSetup {
  int n = 10;
  double dt = 0.01;
  double t_final = 10.0;
  double load = 1.0;
  Signal drive = [](double t) { return std::sin(t); };
  int stride = 1;
};

struct TelegraphRun {
  PhsModel model;
  BoundaryPort port;
  Trajectory trajectory;
  Probe probe;
  ErrorReport error;
};

double paper_line(const Point& x);
TelegraphRun run_telegraph(const TelegraphSetup& setup);
// Voltage probe: edge midpoints in order, then both end points.
Probe telegraph_voltage_probe(const PhsModel& m);

}  // namespace decphs
