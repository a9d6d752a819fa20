#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dglab/field.hpp"
#include "dglab/invariants.hpp"

namespace dglab {

struct Clm {};
struct DeGregorio {
  Gauge gauge = MeanZero{};
};
struct DeGregorioMean {
  double c = 0.0;
  Gauge gauge = MeanZero{};
};
struct Transport {
  RealCircleField b;
};
using ModelSpec = std::variant<Clm, DeGregorio, DeGregorioMean, Transport>;

std::string model_name(const ModelSpec& model);

struct SimConfig {
  ModelSpec model = DeGregorio{};
  int N = 64;
  double dt = 1e-3;
  double t_final = 1.0;
  bool dealias = true;
  int record_every = 100;
  double gamma = 1.75;
  double epsilon = 0.0;  // metadata only
  double blowup_ceiling = 1e8;
  int snapshot_every = 0;  // in records; 0 keeps only the first and last state
  bool track_invariants = true;

  void validate() const;
};

struct TimeSeriesRecord {
  double t = 0.0;
  long step = 0;
  double h_half = 0.0, h_one = 0.0, h_32 = 0.0, h_two = 0.0;
  double y0 = 0.0;  // quotient-Y norm (distance to span{1, cos, sin})
  double m_mult = 0.0;
  double sup = 0.0;
  double bkm = 0.0;   // int_0^t |omega|_inf
  double mean = 0.0;  // int omega dtheta
  double b_gauge = 0.0;
  std::optional<OrbitInvariants> invariants;
};

struct Snapshot {
  double t = 0.0;
  long step = 0;
  RealCircleField field;
};

struct BlowUp {
  long step = 0;
  double t = 0.0;
  std::string reason;
};

struct SimulationResult {
  std::vector<TimeSeriesRecord> records;
  std::vector<Snapshot> snapshots;
  RealCircleField final_state;
  std::optional<BlowUp> blowup;
};

RealCircleField rhs(const ModelSpec& model, const RealCircleField& w, bool dealias = true);

// One classical RK4 step. Throws BlowUpError(step) on non-finite output.
RealCircleField step_rk4(const ModelSpec& model, const RealCircleField& w, double dt,
                         bool dealias = true, long step = 0);

// Velocity scale entering the stability guard dt <= 2 / (max(1, |u|_inf) N), inside the RK4
// imaginary-axis bound 2 sqrt(2) for advection at the top mode.
double velocity_scale(const ModelSpec& model, const RealCircleField& w);

// Integrates to t_final; a blow-up stops the run and is reported with the partial series.
// Throws ParameterError when config is invalid or the stability guard fails at t = 0.
SimulationResult simulate(const SimConfig& config, const RealCircleField& w0);

// Exact CLM solution: with f = w + iHw, f_t = -(i/2) f^2, so f(t) = f0 / (1 + i t f0 / 2).
double clm_blowup_time(const RealCircleField& w0);
double clm_exact_value(const RealCircleField& w0, double t, double theta);
RealCircleField clm_exact(const RealCircleField& w0, double t, int N_out);

// Flow of theta' = sin(theta): phi_t(z) = (z - tau)/(1 - tau z), tau = tanh(t/2).
double mobius_flow(double theta, double t);
// d/dtheta of mobius_flow
double mobius_flow_derivative(double theta, double t);
// (phi_t)_# xi0 at theta, exact.
double pushforward_value(const std::function<double(double)>& xi0, double t, double theta);
double pushforward_value(const RealCircleField& xi0, double t, double theta);

struct PushforwardResult {
  RealCircleField field;
  double tail_fraction = 0.0;  // energy fraction above N_out on the sampling grid
  bool resolved = true;
};
PushforwardResult exact_pushforward(const RealCircleField& xi0, double t, int N_out = -1);

struct Normalization {
  double A = 1.0;           // amplitude
  double theta_shift = 0.0;  // x2, the zero with negative slope
  double time_scale = 1.0;   // normalized time = time_scale * original time
};
std::pair<RealCircleField, Normalization> normalize_initial_data(const RealCircleField& w0);

// Rotation f(theta + shift).
RealCircleField rotate(const RealCircleField& f, double shift);

}  // namespace dglab
