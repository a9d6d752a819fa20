#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "dglab/dynamics.hpp"
#include "dglab/errors.hpp"
#include "dglab/heun.hpp"
#include "dglab/invariants.hpp"
#include "dglab/io.hpp"
#include "dglab/linear_ops.hpp"
#include "dglab/spectral.hpp"
#include "dglab/version.hpp"
#include "dglab/weighted_norm.hpp"
#include "manifest.hpp"

namespace dglab::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const char* kInitHelp =
    "Initial data: a signed sum of terms 'c sin m', 'c cos m' or constants, e.g.\n"
    "  \"-sin+0.1sin2\", \"1 - cos\", \"0.5*cos 3\". Coefficient and mode default to 1.";

struct Common {
  std::string out;
  std::string config;
};

struct SimulateOpts {
  std::string model = "dg";
  std::string init, input;
  std::string b = "sin";
  std::string gauge = "mean";
  double theta0 = 0.0;
  double c = 0.0;
  int n = 64;
  double dt = 1e-3;
  double t = 1.0;
  int record_every = 100;
  int snapshot_every = 0;
  double gamma = 1.75;
  double epsilon = 0.0;
  double ceiling = 1e8;
  bool no_dealias = false;
  bool normalize = false;
  bool no_invariants = false;
};

struct LinearOpts {
  int k = 512;
  double dt = 1e-3;
  double t = 10.0;
  std::string init;
  int mode = 2;
  bool gauge_term = false;
  bool absorb = false;
  double absorb_strength = 50.0;
  double absorb_start = 0.5;
  double sample_every = 0.1;
  double gamma = 1.75;
  double fit_from = 0.0;
  std::string modes = "1,2,3";
  int snapshot_every = 0;
};

struct EigenOpts {
  std::string s_grid;
  int k = 4000;
  int side = 1;
  int jobs = 1;
  bool dump = false;
};

struct InvariantsOpts {
  std::string input;
  double gamma = 1.75;
};

struct OracleOpts {
  std::string model = "clm";
  std::string init;
  double t = 0.5;
  int n_out = 64;
  int points = 64;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure that still produced (partial) outputs.
struct Outcome {
  int code = kExitOk;
  std::string status = "ok";
};

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw UsageError("cannot create output directory " + p.string() + ": " + ec.message());
}

std::ofstream open_out(RunManifest& m, const std::string& rel) {
  const fs::path p = m.path(rel);
  if (p.has_parent_path()) ensure_dir(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw UsageError("cannot open " + p.string() + " for writing");
  return os;
}

void finish(RunManifest& m, const std::string& rel, std::ofstream& os) {
  os.close();
  m.add_file(rel);
}

ModelSpec make_model(const SimulateOpts& o) {
  Gauge gauge = MeanZero{};
  if (o.gauge == "point") gauge = PointZero{o.theta0};
  else if (o.gauge != "mean") throw UsageError("--gauge must be 'mean' or 'point'");
  if (o.model == "dg") return DeGregorio{gauge};
  if (o.model == "dgmean") return DeGregorioMean{o.c, gauge};
  if (o.model == "clm") return Clm{};
  if (o.model == "transport") return Transport{parse_init(o.b)};
  throw UsageError("--model must be one of dg, dgmean, clm, transport");
}

RealCircleField load_initial(const std::string& init, const std::string& input) {
  if (!init.empty() && !input.empty()) throw UsageError("give either --init or --input, not both");
  if (!input.empty()) return read_dgf1(fs::path(input));
  if (init.empty()) throw UsageError("initial data required (--init or --input)");
  return parse_init(init);
}

std::string snapshot_name(long step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshots/step_%09ld.dgf1", step);
  return buf;
}

Outcome run_simulate(const SimulateOpts& o, RunManifest& man, std::ostream& out) {
  RealCircleField w0 = load_initial(o.init, o.input);
  json& cfg = man.config();
  cfg["model"] = o.model;
  cfg["init"] = o.init;
  cfg["input"] = o.input;
  cfg["b"] = o.b;
  cfg["gauge"] = o.gauge;
  cfg["theta0"] = o.theta0;
  cfg["c"] = o.c;
  cfg["n"] = o.n;
  cfg["dt"] = o.dt;
  cfg["t"] = o.t;
  cfg["record_every"] = o.record_every;
  cfg["snapshot_every"] = o.snapshot_every;
  cfg["gamma"] = o.gamma;
  cfg["epsilon"] = o.epsilon;
  cfg["ceiling"] = o.ceiling;
  cfg["dealias"] = !o.no_dealias;
  cfg["normalize"] = o.normalize;

  if (o.normalize) {
    auto [w, n] = normalize_initial_data(w0);
    w0 = w;
    man.summary()["normalization"] = {{"A", n.A}, {"theta_shift", n.theta_shift}, {"time_scale", n.time_scale}};
  }

  SimConfig sc;
  sc.model = make_model(o);
  sc.N = o.n;
  sc.dt = o.dt;
  sc.t_final = o.t;
  sc.dealias = !o.no_dealias;
  sc.record_every = o.record_every;
  sc.snapshot_every = o.snapshot_every;
  sc.gamma = o.gamma;
  sc.epsilon = o.epsilon;
  sc.blowup_ceiling = o.ceiling;
  sc.track_invariants = !o.no_invariants;
  if (w0.max_mode() > sc.N) throw UsageError("initial data has modes above --n");

  const SimulationResult res = simulate(sc, w0);

  {
    auto os = open_out(man, "timeseries.csv");
    CsvWriter csv(os, {"t", "step", "h_half", "h_one", "h_32", "h_two", "y0", "m_mult", "sup", "bkm", "mean",
                       "b_gauge", "zero_count", "pv"});
    for (const auto& r : res.records) {
      const double zc = r.invariants ? double(r.invariants->count) : -1.0;
      const double pv = r.invariants ? r.invariants->pv : std::nan("");
      csv.row({r.t, double(r.step), r.h_half, r.h_one, r.h_32, r.h_two, r.y0, r.m_mult, r.sup, r.bkm, r.mean,
               r.b_gauge, zc, pv});
    }
    finish(man, "timeseries.csv", os);
  }

  if (sc.track_invariants) {
    std::vector<InvariantSample> samples;
    for (const auto& r : res.records) samples.push_back({r.t, r.invariants, r.mean});
    const DriftReport dr = drift_report(samples);
    auto os = open_out(man, "invariants.csv");
    CsvWriter csv(os, {"t", "zero_count", "deriv_drift", "pv_drift", "mean_drift"});
    for (const auto& row : dr.rows)
      csv.row({row.t, double(row.zero_count), row.deriv_drift, row.pv_drift, row.mean_drift});
    finish(man, "invariants.csv", os);
    man.summary()["max_deriv_drift"] = dr.max_deriv_drift;
    man.summary()["max_pv_drift"] = dr.max_pv_drift;
    man.summary()["max_mean_drift"] = dr.max_mean_drift;
    man.summary()["topology_change"] = dr.topology_change;
    if (dr.topology_change) man.summary()["topology_change_t"] = dr.topology_change_t;
  }

  {
    auto os = open_out(man, "snapshots.csv");
    CsvWriter csv(os, {"t", "step"});
    for (const auto& s : res.snapshots) {
      const std::string rel = snapshot_name(s.step);
      auto bin = open_out(man, rel);
      write_dgf1(bin, s.field);
      finish(man, rel, bin);
      csv.row({s.t, double(s.step)});
    }
    finish(man, "snapshots.csv", os);
  }
  if (res.final_state.is_finite()) {
    auto os = open_out(man, "final.dgf1");
    write_dgf1(os, res.final_state);
    finish(man, "final.dgf1", os);
  }

  man.summary()["records"] = res.records.size();
  Outcome oc;
  if (res.blowup) {
    man.summary()["blowup"] = {{"step", res.blowup->step}, {"t", res.blowup->t}, {"reason", res.blowup->reason}};
    out << "blow-up at t = " << format_double(res.blowup->t) << ": " << res.blowup->reason << '\n';
    oc = {kExitNumerical, "blowup"};
  }
  for (const auto& r : res.records)
    if (!std::isfinite(r.y0) && oc.code == kExitOk) oc = {kExitNumerical, "divergent norm"};
  if (oc.code == kExitOk)
    out << "simulated " << model_name(sc.model) << " to t = " << format_double(o.t) << ", "
        << res.records.size() << " records\n";
  return oc;
}

Outcome run_linear(const LinearOpts& o, RunManifest& man, std::ostream& out) {
  json& cfg = man.config();
  cfg["k"] = o.k;
  cfg["dt"] = o.dt;
  cfg["t"] = o.t;
  cfg["init"] = o.init;
  cfg["mode"] = o.mode;
  cfg["gauge_term"] = o.gauge_term;
  cfg["absorb"] = o.absorb;
  cfg["absorb_strength"] = o.absorb_strength;
  cfg["absorb_start"] = o.absorb_start;
  cfg["sample_every"] = o.sample_every;
  cfg["gamma"] = o.gamma;
  cfg["fit_from"] = o.fit_from;
  cfg["modes"] = o.modes;
  cfg["snapshot_every"] = o.snapshot_every;

  if (o.k < 2) throw UsageError("--k must be at least 2");
  ModeVector eta0;
  if (!o.init.empty()) {
    const RealCircleField f = parse_init(o.init);
    if (f.max_mode() > o.k) throw UsageError("initial data has modes above --k");
    eta0 = ModeVector::from_field(f, o.k);
  } else {
    if (o.mode < 1 || o.mode > o.k) throw UsageError("--mode must lie in 1..k");
    eta0 = ModeVector::unit(o.mode, o.k);
  }
  LinearEvolveOptions opt;
  opt.t_final = o.t;
  opt.dt = o.dt;
  opt.gauge_term = o.gauge_term;
  opt.sample_every = o.sample_every;
  if (o.absorb) opt.absorb = AbsorbingLayer{o.absorb_strength, o.absorb_start, 4};
  const LinearTrajectory tr = evolve_linear(eta0, opt);

  std::vector<int> modes;
  for (double m : parse_grid(o.modes)) {
    if (m != std::floor(m) || m < 1 || m > o.k) throw UsageError("--modes entries must be integers in 1..k");
    modes.push_back(static_cast<int>(m));
  }
  if (o.snapshot_every < 0) throw UsageError("--snapshot-every must be non-negative");

  const double e0 = conserved_energy(eta0);
  std::vector<double> ft, fy;
  bool divergent = false;
  {
    std::vector<std::string> header = {"t"};
    for (int m : modes) header.push_back("abs_eta_" + std::to_string(m));
    for (const char* c : {"energy", "energy_drift", "tail_fraction", "y0_quotient", "h_one"}) header.push_back(c);
    auto os = open_out(man, "linear.csv");
    CsvWriter csv(os, header);
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
      const auto& s = tr.samples[i];
      const RealCircleField f = s.eta.to_field();
      const double e = conserved_energy(s.eta);
      const NormResult qy = quotient_y_norm(f, o.gamma);
      divergent = divergent || qy.divergent;
      std::vector<double> row = {s.t};
      for (int m : modes) row.push_back(std::abs(s.eta(m)));
      for (double v : {e, e0 > 0 ? (e - e0) / e0 : 0.0, tail_energy_fraction(s.eta), qy.value, sobolev_norm(f, 1.0)})
        row.push_back(v);
      csv.row(row);
      if (s.t >= o.fit_from && qy.value > 0.0 && std::isfinite(qy.value)) {
        ft.push_back(s.t);
        fy.push_back(qy.value);
      }
      const bool snap = i == 0 || i + 1 == tr.samples.size() || (o.snapshot_every > 0 && i % o.snapshot_every == 0);
      if (snap) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "snapshots/sample_%06zu.dgf1", i);
        auto bin = open_out(man, buf);
        write_dgf1(bin, f);
        finish(man, buf, bin);
      }
    }
    finish(man, "linear.csv", os);
  }
  man.summary()["max_tail_fraction"] = tr.max_tail_fraction;
  man.summary()["truncation_warning"] = tr.truncation_warning;
  if (tr.truncation_warning) out << "warning: energy reached the top 10% of modes (" << format_double(tr.max_tail_fraction) << ")\n";
  if (ft.size() >= 10) {
    const DecayFit fit = decay_rate_fit(ft, fy);
    auto os = open_out(man, "decay_fit.csv");
    CsvWriter csv(os, {"t_start", "t_end", "rate", "r_squared", "power_law_r_squared", "exponential", "samples_used"});
    csv.row({ft.front(), ft.back(), fit.rate, fit.r_squared, fit.power_law_r_squared, fit.exponential ? 1.0 : 0.0,
             double(fit.samples_used)});
    finish(man, "decay_fit.csv", os);
    man.summary()["rate"] = fit.rate;
    man.summary()["r_squared"] = fit.r_squared;
    out << "decay rate " << format_double(fit.rate) << " (R^2 " << format_double(fit.r_squared) << ")\n";
  }
  if (divergent) return {kExitNumerical, "divergent norm"};
  return {};
}

Outcome run_eigen(const EigenOpts& o, RunManifest& man, std::ostream& out) {
  json& cfg = man.config();
  cfg["s_grid"] = o.s_grid;
  cfg["k"] = o.k;
  cfg["side"] = o.side;
  cfg["jobs"] = o.jobs;
  cfg["dump"] = o.dump;
  const std::vector<double> grid = parse_grid(o.s_grid);
  for (double s : grid)
    if (s == 0.0) throw UsageError("s = 0 is the kernel direction; remove it from --s-grid");
  if (o.side != 1 && o.side != -1) throw UsageError("--side must be 1 or -1");
  if (o.k < 3) throw UsageError("--k must be at least 3");
  if (o.jobs < 1) throw UsageError("--jobs must be at least 1");

  std::vector<ConnectionFit> fits(grid.size());
  std::vector<std::string> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        fits[i] = fit_connection(grid[i], o.side, o.k);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::min<int>(o.jobs, static_cast<int>(grid.size())); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!errors[i].empty()) throw Error("s = " + format_double(grid[i]) + ": " + errors[i]);

  int inconclusive = 0;
  {
    auto os = open_out(man, "connection.csv");
    CsvWriter csv(os, {"s", "side", "re_A", "im_A", "abs_A", "residual", "inconclusive", "tail_exponent", "K"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const ConnectionFit& f = fits[i];
      inconclusive += f.inconclusive;
      csv.row({grid[i], double(f.side), f.A.real(), f.A.imag(), std::abs(f.A), f.residual, f.inconclusive ? 1.0 : 0.0,
               f.tail_exponent, double(f.K)});
    }
    finish(man, "connection.csv", os);
  }
  if (o.dump) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "series/s_%04zu.eig1", i);
      const EigenfunctionSeries s = eigen_recursion(cplx(0.0, grid[i]), o.k);
      auto os = open_out(man, buf);
      write_eig1(os, s.eta, s.lambda);
      finish(man, buf, os);
    }
  }
  man.summary()["points"] = grid.size();
  man.summary()["inconclusive"] = inconclusive;
  out << grid.size() << " spectral parameters, " << inconclusive << " inconclusive fits\n";
  return {};
}

Outcome run_invariants(const InvariantsOpts& o, RunManifest& man, std::ostream& out) {
  man.config()["input"] = o.input;
  man.config()["gamma"] = o.gamma;
  if (o.input.empty()) throw UsageError("--input is required");
  const RealCircleField f = read_dgf1(fs::path(o.input));
  json rep;
  rep["N"] = f.max_mode();
  rep["mean"] = 2.0 * kPi * f.mean();
  rep["h_half"] = sobolev_norm(f, 0.5);
  rep["h_one"] = sobolev_norm(f, 1.0);
  rep["h_32"] = sobolev_norm(f, 1.5);
  rep["h_two"] = sobolev_norm(f, 2.0);
  rep["m_mult"] = norm(f, MMultiplier{}).value;
  rep["sup"] = sup_norm(f);
  const NormResult y0 = y0_norm(f, o.gamma);
  const NormResult qy = quotient_y_norm(f, o.gamma);
  rep["y0"] = y0.divergent ? json(nullptr) : json(y0.value);
  rep["y0_divergent"] = y0.divergent;
  rep["y0_quotient"] = qy.divergent ? json(nullptr) : json(qy.value);
  try {
    const OrbitInvariants inv = orbit_invariants(f);
    json zs = json::array();
    for (const auto& z : inv.zeros) zs.push_back({{"theta", z.theta}, {"derivative", z.deriv}});
    rep["zero_count"] = inv.count;
    rep["zeros"] = zs;
    rep["pv"] = inv.pv;
    if (inv.count == 2) {
      const Amplitudes a = predict_amplitudes(f);
      rep["amplitudes"] = {{"plus", a.plus}, {"minus", a.minus}};
    }
  } catch (const DegeneracyError& e) {
    rep["degenerate"] = e.what();
  }
  const EquilibriumFit eq = fit_equilibrium(f);
  rep["equilibrium"] = {{"A", eq.A}, {"theta0", eq.theta0}, {"residual_h1", eq.residual}};
  {
    auto os = open_out(man, "report.json");
    os << rep.dump(2) << '\n';
    finish(man, "report.json", os);
  }
  out << rep.dump(2) << '\n';
  if (qy.divergent) return {kExitNumerical, "divergent norm"};
  return {};
}

Outcome run_oracle(const OracleOpts& o, RunManifest& man, std::ostream& out) {
  json& cfg = man.config();
  cfg["model"] = o.model;
  cfg["init"] = o.init;
  cfg["t"] = o.t;
  cfg["n_out"] = o.n_out;
  cfg["points"] = o.points;
  if (o.init.empty()) throw UsageError("--init is required");
  if (o.points < 1) throw UsageError("--points must be positive");
  if (o.n_out < 0) throw UsageError("--n-out must be non-negative");
  const RealCircleField w0 = parse_init(o.init);

  RealCircleField field;
  std::function<double(double)> exact;
  Outcome oc;
  if (o.model == "clm") {
    const double tstar = clm_blowup_time(w0);
    man.summary()["blowup_time"] = std::isfinite(tstar) ? json(tstar) : json(nullptr);
    out << "blow-up time " << format_double(tstar) << '\n';
    field = clm_exact(w0, o.t, o.n_out);
    exact = [&](double th) { return clm_exact_value(w0, o.t, th); };
  } else if (o.model == "pushforward") {
    const PushforwardResult p = exact_pushforward(w0, o.t, o.n_out);
    man.summary()["tail_fraction"] = p.tail_fraction;
    man.summary()["resolved"] = p.resolved;
    field = p.field;
    exact = [&](double th) { return pushforward_value(w0, o.t, th); };
    if (!p.resolved) oc = {kExitNumerical, "unresolved pushforward"};
  } else {
    throw UsageError("--model must be 'clm' or 'pushforward'");
  }
  {
    auto os = open_out(man, "oracle.csv");
    CsvWriter csv(os, {"theta", "exact", "series"});
    for (int j = 0; j < o.points; ++j) {
      const double th = GridSamples::node(j, o.points);
      csv.row({th, exact(th), evaluate(field, th).value});
    }
    finish(man, "oracle.csv", os);
  }
  {
    auto os = open_out(man, "oracle.dgf1");
    write_dgf1(os, field);
    finish(man, "oracle.dgf1", os);
  }
  return oc;
}

// Config entries become --key=value arguments unless the command line already sets the key.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string config_path;
  std::size_t sub_pos = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    if (sub_pos == args.size() && !a.empty() && a[0] != '-') sub_pos = i;
  }
  if (config_path.empty() || sub_pos == args.size()) return args;
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot read config file " + config_path);
  std::map<std::string, std::string> kv;
  try {
    kv = parse_config(in);
  } catch (const InputError& e) {
    throw UsageError(config_path + ": " + e.what());
  }
  auto on_command_line = [&](const std::string& key) {
    for (const auto& a : args)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> merged(args.begin(), args.begin() + static_cast<long>(sub_pos) + 1);
  for (const auto& [k, v] : kv)
    if (k != "config" && !on_command_line(k)) merged.push_back("--" + k + "=" + v);
  merged.insert(merged.end(), args.begin() + static_cast<long>(sub_pos) + 1, args.end());
  return merged;
}

}  // namespace

fs::path resolve_output_dir(const std::string& out) {
  fs::path p(out);
  if (p.is_relative()) {
    if (const char* root = std::getenv("DG_LAB_OUT"); root && *root) p = fs::path(root) / p;
  }
  return p;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dglab: spectral experiments for 1D vorticity models on the circle"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.footer(kInitHelp);

  Common common;
  SimulateOpts so;
  LinearOpts lo;
  EigenOpts eo;
  InvariantsOpts io;
  OracleOpts oo;

  auto add_common = [&](CLI::App* sub, const std::string& default_out) {
    sub->add_option("--out", common.out, "Output directory (relative paths go under $DG_LAB_OUT)")
        ->default_str(default_out);
    sub->add_option("--config", common.config, "key=value file; command-line flags win");
  };

  CLI::App* sim = app.add_subcommand("simulate", "Integrate a model with RK4 and record norms and invariants");
  add_common(sim, "simulate");
  sim->add_option("--model", so.model, "dg | dgmean | clm | transport")->capture_default_str();
  sim->add_option("--init", so.init, "Initial data expression");
  sim->add_option("--input", so.input, "Initial data from a DGF1 file");
  sim->add_option("--b", so.b, "Transport velocity expression")->capture_default_str();
  sim->add_option("--gauge", so.gauge, "mean | point")->capture_default_str();
  sim->add_option("--theta0", so.theta0, "Point gauge location")->capture_default_str();
  sim->add_option("--c", so.c, "Coefficient of the added Hilbert term (dgmean)")->capture_default_str();
  sim->add_option("--n", so.n, "Band limit N")->capture_default_str();
  sim->add_option("--dt", so.dt, "Time step")->capture_default_str();
  sim->add_option("--t", so.t, "Final time")->capture_default_str();
  sim->add_option("--record-every", so.record_every, "Steps between records")->capture_default_str();
  sim->add_option("--snapshot-every", so.snapshot_every, "Records between DGF1 snapshots (0: first and last)")
      ->capture_default_str();
  sim->add_option("--gamma", so.gamma, "Weight exponent of the Y0 norm")->capture_default_str();
  sim->add_option("--epsilon", so.epsilon, "Perturbation size, recorded only")->capture_default_str();
  sim->add_option("--ceiling", so.ceiling, "Sup-norm blow-up threshold")->capture_default_str();
  sim->add_flag("--no-dealias", so.no_dealias, "Collocate products on 2N+1 nodes");
  sim->add_flag("--normalize", so.normalize, "Rotate and rescale so that the data is near -sin");
  sim->add_flag("--no-invariants", so.no_invariants, "Skip zero tracking");

  CLI::App* lin = app.add_subcommand("linear", "Evolve the linearized operator in mode space");
  add_common(lin, "linear");
  lin->add_option("--k", lo.k, "Number of modes K_max")->capture_default_str();
  lin->add_option("--dt", lo.dt, "Time step")->capture_default_str();
  lin->add_option("--t", lo.t, "Final time")->capture_default_str();
  lin->add_option("--init", lo.init, "Initial data expression (mean is dropped)");
  lin->add_option("--mode", lo.mode, "Unit initial mode when --init is absent")->capture_default_str();
  lin->add_flag("--gauge-term", lo.gauge_term, "Add -cos(theta) v(0,t)");
  lin->add_flag("--absorb", lo.absorb, "Damp the top half of the modes");
  lin->add_option("--absorb-strength", lo.absorb_strength, "Damping rate at K_max")->capture_default_str();
  lin->add_option("--absorb-start", lo.absorb_start, "Damping onset as a fraction of K_max")->capture_default_str();
  lin->add_option("--sample-every", lo.sample_every, "Time between samples")->capture_default_str();
  lin->add_option("--gamma", lo.gamma, "Weight exponent of the Y0 norm")->capture_default_str();
  lin->add_option("--fit-from", lo.fit_from, "Start of the decay-fit window")->capture_default_str();
  lin->add_option("--modes", lo.modes, "Modes whose |eta_k| is tabulated")->capture_default_str();
  lin->add_option("--snapshot-every", lo.snapshot_every, "Samples between DGF1 snapshots (0: first and last)")
      ->capture_default_str();

  CLI::App* eig = app.add_subcommand("eigen", "Generalized eigenfunctions and connection coefficients");
  add_common(eig, "eigen");
  eig->add_option("--s-grid", eo.s_grid, "start:step:stop or comma list of s (lambda = i s)")->required();
  eig->add_option("--k", eo.k, "Minimum series length")->capture_default_str();
  eig->add_option("--side", eo.side, "Endpoint +1 or -1")->capture_default_str();
  eig->add_option("--jobs", eo.jobs, "Worker threads")->capture_default_str();
  eig->add_flag("--dump", eo.dump, "Write EIG1 coefficient files");

  CLI::App* inv = app.add_subcommand("invariants", "Report norms and orbit invariants of a DGF1 field");
  add_common(inv, "invariants");
  inv->add_option("--input", io.input, "DGF1 file")->required();
  inv->add_option("--gamma", io.gamma, "Weight exponent of the Y0 norm")->capture_default_str();

  CLI::App* orc = app.add_subcommand("oracle", "Exact CLM solution or Mobius pushforward tables");
  add_common(orc, "oracle");
  orc->add_option("--model", oo.model, "clm | pushforward")->capture_default_str();
  orc->add_option("--init", oo.init, "Initial data expression")->required();
  orc->add_option("--t", oo.t, "Time")->capture_default_str();
  orc->add_option("--n-out", oo.n_out, "Output band limit")->capture_default_str();
  orc->add_option("--points", oo.points, "Table rows")->capture_default_str();

  std::vector<std::string> args;
  try {
    args = merge_config(raw_args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (common.out.empty()) common.out = name;
  const fs::path root = resolve_output_dir(common.out);
  RunManifest man(name, root);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  Outcome oc;
  bool dir_ready = false;
  try {
    ensure_dir(root);
    dir_ready = true;
    if (name == "simulate") oc = run_simulate(so, man, out);
    else if (name == "linear") oc = run_linear(lo, man, out);
    else if (name == "eigen") oc = run_eigen(eo, man, out);
    else if (name == "invariants") oc = run_invariants(io, man, out);
    else oc = run_oracle(oo, man, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    oc = {kExitUsage, "usage error"};
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    oc = {kExitUsage, "usage error"};
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    oc = {kExitUsage, "usage error"};
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << '\n';
    oc = {kExitUsage, "usage error"};
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    oc = {kExitNumerical, "numerical failure"};
  }
  if (dir_ready) man.write(oc.code, elapsed(), oc.status);
  return oc.code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace dglab::cli
