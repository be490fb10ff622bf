#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grid.hpp"
#include "spinphase/error.hpp"
#include "spinphase/fidelity.hpp"
#include "spinphase/phases.hpp"
#include "spinphase/pulsedesign.hpp"
#include "spinphase/special.hpp"

namespace spinphase::cli {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// 17 significant digits, scientific.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

json matrix_json(const Matrix2& m) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_lifetime(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  if (v.size() != 1 || !(v[0] > 0.0)) {
    throw UsageError("--tau-t must be a positive number of ps or 'inf'");
  }
  return v[0];
}

// Writes to --output when given, otherwise to the stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct CommonPhysics {
  double field = 0.29;
  double g = constants::electron_g;
  double tau_d = 1.5;
};

void add_physics(CLI::App* cmd, CommonPhysics& p) {
  cmd->add_option("--B", p.field, "Transverse magnetic field [T]")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--g", p.g, "Electron g-factor magnitude |g_e| [dimensionless]")
      ->capture_default_str();
  cmd->add_option("--tau-d", p.tau_d, "Pulse duration, FWHM of the sech amplitude [ps]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_output(CLI::App* cmd, std::string& path) {
  cmd->add_option("-o,--output", path, "Output file [path]; standard output when omitted");
}

// ---------------------------------------------------------------- phases

struct PhasesArgs {
  std::string ratios;
  std::string method = "analytic";
  std::string format = "csv";
  std::string output;
  double window = 20.0;
  double numeric_window = 7.0;
  double dt = 0.0;
  CommonPhysics physics;
};

int cmd_phases(const PhasesArgs& a, Streams io) {
  const std::vector<double> ratios = parse_grid(a.ratios);
  for (double r : ratios) {
    if (!std::isfinite(r) || r == 0.0) throw UsageError("ratios must be finite and nonzero");
  }
  std::vector<PhaseMethod> methods;
  if (a.method == "analytic" || a.method == "both") methods.push_back(PhaseMethod::AnalyticI);
  if (a.method == "numeric" || a.method == "both") methods.push_back(PhaseMethod::NumericII);

  const double bandwidth = bandwidth_from_duration(a.physics.tau_d);
  const SystemParams s = SystemParams::closed(larmor_from_field(a.physics.field, a.physics.g));
  if (!s.slow_precession(bandwidth)) {
    io.err << "warning: omega_B/bandwidth = " << s.omega_b / bandwidth
           << " is not small; precession is not slow\n";
  }
  PhaseOptions opts;
  opts.analytic_window = a.window;
  opts.numeric_half_window = a.numeric_window;
  opts.integrator.dt = a.dt;

  std::vector<PhaseDecomposition> rows;
  for (PhaseMethod m : methods) {
    const auto part = sweep_ratio(ratios, m, s, bandwidth, opts);
    rows.insert(rows.end(), part.begin(), part.end());
  }

  Sink sink(a.output, io.out);
  std::ostream& out = sink.get();
  if (a.format == "json") {
    json arr = json::array();
    for (const auto& d : rows) {
      arr.push_back({{"r", number(d.ratio)},
                     {"phi", d.overall},
                     {"alpha", d.dynamic},
                     {"gamma", d.geometric},
                     {"method", std::string(to_string(d.method))}});
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "r,phi,alpha,gamma,method\n";
    for (const auto& d : rows) {
      out << fmt(d.ratio) << ',' << fmt(d.overall) << ',' << fmt(d.dynamic) << ','
          << fmt(d.geometric) << ',' << to_string(d.method) << '\n';
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------- design

struct DesignArgs {
  double angle = 0.0;
  double tau_d = 1.5;
  std::optional<double> spacing;
  std::string branch = "mirror";
};

DesignBranch parse_branch(const std::string& b) {
  return b == "positive" ? DesignBranch::Positive : DesignBranch::Mirror;
}

int cmd_design(const DesignArgs& a, Streams io) {
  if (!(std::abs(a.angle) < std::numbers::pi)) {
    throw UsageError(
        "--angle must satisfy |angle| < pi; for a rotation of pi use a single resonant pulse "
        "(simulate --ratios inf)");
  }
  const double rabi = bandwidth_from_duration(a.tau_d);
  const double spacing = a.spacing.value_or(14.0 * a.tau_d);
  const CancelingPair pair = design_for_angle(a.angle, rabi, spacing, parse_branch(a.branch));
  const CancellationResidual res = verify_cancellation(pair, SystemParams::closed(0.0));
  const json j = {
      {"r1", pair.r1},
      {"r2", pair.r2()},
      {"rabi", rabi},
      {"delta1", pair.first.detuning},
      {"delta2", pair.second.detuning},
      {"spacing", pair.spacing},
      {"gamma_tot", total_geometric_phase(pair.r1)},
      {"alpha1", res.first},
      {"alpha2", res.second},
      {"residual_dynamic_phase", res.residual()},
  };
  io.out << j.dump(2) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- fidelity

struct FidelityArgs {
  double angle = std::numbers::pi / 2.0;
  bool sweep = false;
  std::string angles = "lin:-3:3:25";
  std::string fields = "0.29";
  std::string tau_t = "900";
  std::optional<double> spacing;
  std::string ideal = "interleaved";
  std::string branch = "mirror";
  std::string format;
  std::string output;
  double g = constants::electron_g;
  double tau_d = 1.5;
  double dt = 0.0;
};

int cmd_fidelity(const FidelityArgs& a, Streams io) {
  GateParams params;
  params.g = a.g;
  params.pulse_duration = a.tau_d;
  params.trion_lifetime = parse_lifetime(a.tau_t);
  params.spacing = a.spacing;
  params.ideal = a.ideal == "bare" ? IdealConvention::Bare : IdealConvention::Interleaved;
  params.branch = parse_branch(a.branch);
  params.integrator.dt = a.dt;

  const std::vector<double> fields = parse_list(a.fields);
  for (double b : fields) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw UsageError("--B values must be >= 0 [T]");
  }
  Sink sink(a.output, io.out);
  std::ostream& out = sink.get();

  if (!a.sweep) {
    if (fields.size() != 1) throw UsageError("a single gate takes one --B value; use --sweep");
    if (!(std::abs(a.angle) <= std::numbers::pi)) throw UsageError("--angle must satisfy |angle| <= pi");
    const GateReport r = gate_report(a.angle, fields[0], params);
    const json j = {
        {"gamma", r.gamma},
        {"B", r.field},
        {"fidelity", r.fidelity},
        {"residual_population", r.residual_population},
        {"ideal", std::string(to_string(params.ideal))},
        {"U_actual", matrix_json(r.actual)},
        {"U_ideal", matrix_json(r.ideal)},
    };
    out << j.dump(2) << '\n';
    return kSuccess;
  }

  const std::vector<double> angles = parse_grid(a.angles);
  for (double g : angles) {
    if (!(std::abs(g) <= std::numbers::pi)) throw UsageError("sweep angles must satisfy |angle| <= pi");
  }
  const std::vector<GateReport> reports = fidelity_sweep(angles, fields, params);
  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) {
      arr.push_back({{"gamma", r.gamma},
                     {"B", r.field},
                     {"fidelity", r.fidelity},
                     {"population_loss", r.residual_population}});
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "gamma,B,fidelity,population_loss\n";
    for (const auto& r : reports) {
      out << fmt(r.gamma) << ',' << fmt(r.field) << ',' << fmt(r.fidelity) << ','
          << fmt(r.residual_population) << '\n';
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string ratios;
  std::string tau_t = "inf";
  std::string initial = "z";
  std::string output;
  std::optional<double> spacing;
  std::optional<double> duration;
  double window = 7.0;
  double dt = 0.0;
  std::size_t stride = 10;
  CommonPhysics physics;
};

int cmd_simulate(const SimulateArgs& a, Streams io) {
  const double bandwidth = bandwidth_from_duration(a.physics.tau_d);
  const double omega_b = larmor_from_field(a.physics.field, a.physics.g);
  const double lifetime = parse_lifetime(a.tau_t);
  const SystemParams s = std::isfinite(lifetime) ? SystemParams::with_decay(omega_b, lifetime)
                                                 : SystemParams::closed(omega_b);

  std::vector<PulseParams> pulses;
  if (!a.ratios.empty() && a.ratios != "none") {
    const double spacing = a.spacing.value_or(14.0 * a.physics.tau_d);
    const std::vector<double> ratios = parse_list(a.ratios);
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if (ratios[i] == 0.0) throw UsageError("pulse ratios must be nonzero (use inf for resonance)");
      pulses.push_back(two_pi_pulse_for_ratio(bandwidth, ratios[i], static_cast<double>(i) * spacing));
    }
  }
  PulseSchedule sched;
  if (pulses.empty()) {
    const double duration = a.duration.value_or(14.0 * a.physics.tau_d);
    sched = PulseSchedule::make({}, 0.0, duration);
  } else {
    sched = PulseSchedule::around(pulses, a.window);
  }

  Level level = kZ;
  if (a.initial == "zbar") level = kZbar;
  if (a.initial == "tau") level = kTau;

  IntegratorOpts opts;
  opts.dt = a.dt;
  opts.sample_stride = a.stride;
  const Trajectory traj = propagate(basis_state(level), sched, s, opts);

  Sink sink(a.output, io.out);
  std::ostream& out = sink.get();
  out << "t,re_zbar,im_zbar,re_z,im_z,re_tau,im_tau,norm\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const StateVector& psi = traj.states[i];
    out << fmt(traj.times[i]);
    for (int k = 0; k < 3; ++k) out << ',' << fmt(psi(k).real()) << ',' << fmt(psi(k).imag());
    out << ',' << fmt(traj.norms[i]) << '\n';
  }
  return kSuccess;
}

// CLI11 only reads config files registered on the top-level app, so the
// simulate subcommand feeds its file through the options by hand.
void apply_config(CLI::App* cmd, const std::string& path) {
  const std::vector<CLI::ConfigItem> items = CLI::ConfigINI().from_file(path);
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty()) throw UsageError("config sections are not supported: " + item.fullname());
    CLI::Option* opt = cmd->get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config" || item.name == "help") {
      throw UsageError("unknown config key '" + item.name + "' in " + path);
    }
    if (opt->count() > 0) continue;
    // A comma list may come back split into several inputs.
    std::string joined;
    for (const std::string& in : item.inputs) joined += (joined.empty() ? "" : ",") + in;
    opt->add_result(joined);
    opt->run_callback();
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence:
    case ErrorCode::NormBlowup:
    case ErrorCode::QuadratureFailure:
    case ErrorCode::NonContraction:
      return kNumericalFailure;
    default:
      return kUsageError;
  }
}

void report(Streams io, const std::string& message) {
  if (io.color) {
    io.err << "\033[31merror:\033[0m " << message << '\n';
  } else {
    io.err << "error: " << message << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, Streams io) {
  CLI::App app{"Geometric and dynamic phases of 2*pi sech-pulse spin rotations in a quantum dot",
               "spinphase"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::function<int()> action;

  PhasesArgs pa;
  auto* phases = app.add_subcommand("phases", "Dynamic/geometric phase decomposition vs r = Omega/Delta");
  phases->add_option("--ratios", pa.ratios,
                     "Ratio grid r = Omega/Delta [dimensionless]: list '1,2', 'lin:a:b:n' or "
                     "'log:a:b:n' (a<0<b gives a sign-symmetric grid)")
      ->required();
  phases->add_option("--method", pa.method, "analytic | numeric | both")
      ->capture_default_str()
      ->check(CLI::IsMember({"analytic", "numeric", "both"}));
  add_physics(phases, pa.physics);
  phases->add_option("--window", pa.window,
                     "Analytic quadrature half-window [units of 1/Omega, >= 10]")
      ->capture_default_str();
  phases->add_option("--numeric-window", pa.numeric_window,
                     "Numeric propagation half-window [pulse durations]")
      ->capture_default_str();
  phases->add_option("--dt", pa.dt, "Fixed integration step [ps]; 0 = automatic")->capture_default_str();
  phases->add_option("--format", pa.format, "csv | json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  add_output(phases, pa.output);
  phases->callback([&] { action = [&] { return cmd_phases(pa, io); }; });

  DesignArgs da;
  auto* design = app.add_subcommand("design", "Two-pulse design for a pure geometric z-rotation");
  design->add_option("--angle", da.angle, "Target rotation angle gamma_tot [rad], |angle| < pi")
      ->required();
  design->add_option("--tau-d", da.tau_d, "Pulse duration, FWHM of the sech amplitude [ps]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  design->add_option("--spacing", da.spacing, "Pulse center spacing [ps]; default 14 * tau-d");
  design->add_option("--branch", da.branch, "mirror (sign r1 = sign angle) | positive (r1 > 0)")
      ->capture_default_str()
      ->check(CLI::IsMember({"mirror", "positive"}));
  design->callback([&] { action = [&] { return cmd_design(da, io); }; });

  FidelityArgs fa;
  auto* fidelity = app.add_subcommand("fidelity", "Average gate fidelity with precession and trion decay");
  fidelity->add_option("--angle", fa.angle, "Target rotation angle gamma_tot [rad], |angle| <= pi")
      ->capture_default_str();
  fidelity->add_flag("--sweep", fa.sweep,
                     "Sweep --angles x --B and write CSV gamma,B,fidelity,population_loss");
  fidelity->add_option("--angles", fa.angles, "Angle grid for --sweep [rad]: list, lin:a:b:n or log:a:b:n")
      ->capture_default_str();
  fidelity->add_option("--B", fa.fields, "Transverse magnetic field(s) [T], comma-separated for --sweep")
      ->capture_default_str();
  fidelity->add_option("--g", fa.g, "Electron g-factor magnitude |g_e| [dimensionless]")
      ->capture_default_str();
  fidelity->add_option("--tau-d", fa.tau_d, "Pulse duration, FWHM of the sech amplitude [ps]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fidelity->add_option("--tau-t", fa.tau_t, "Trion lifetime [ps]; 'inf' disables decay")
      ->capture_default_str();
  fidelity->add_option("--spacing", fa.spacing, "Pulse center spacing [ps]; default 14 * tau-d");
  fidelity->add_option("--ideal", fa.ideal,
                       "Ideal gate: interleaved (free precession + instantaneous rotations) | bare (Rz only)")
      ->capture_default_str()
      ->check(CLI::IsMember({"interleaved", "bare"}));
  fidelity->add_option("--branch", fa.branch, "Design branch: mirror | positive")
      ->capture_default_str()
      ->check(CLI::IsMember({"mirror", "positive"}));
  fidelity->add_option("--dt", fa.dt, "Fixed integration step [ps]; 0 = automatic")->capture_default_str();
  fidelity->add_option("--format", fa.format, "Sweep output: csv | json (single gates are always JSON)")
      ->check(CLI::IsMember({"csv", "json"}));
  add_output(fidelity, fa.output);
  fidelity->callback([&] { action = [&] { return cmd_fidelity(fa, io); }; });

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Propagate a pulse train and export the trajectory");
  std::string config_path;
  simulate->add_option("--config", config_path,
                       "Config file of 'key = value' lines using the flag names [path]; flags given "
                       "on the command line take precedence");
  simulate->add_option("--ratios", sa.ratios,
                       "Per-pulse r = Omega/Delta [dimensionless], comma-separated; 'inf' = resonant; "
                       "omit for free evolution");
  add_physics(simulate, sa.physics);
  simulate->add_option("--tau-t", sa.tau_t, "Trion lifetime [ps]; 'inf' disables decay")
      ->capture_default_str();
  simulate->add_option("--spacing", sa.spacing, "Pulse center spacing [ps]; default 14 * tau-d");
  simulate->add_option("--duration", sa.duration, "Window length without pulses [ps]; default 14 * tau-d");
  simulate->add_option("--window", sa.window, "Half-window around each pulse [pulse durations]")
      ->capture_default_str();
  simulate->add_option("--initial", sa.initial, "Initial basis state: z | zbar | tau")
      ->capture_default_str()
      ->check(CLI::IsMember({"z", "zbar", "tau"}));
  simulate->add_option("--dt", sa.dt, "Fixed integration step [ps]; 0 = automatic")->capture_default_str();
  simulate->add_option("--stride", sa.stride, "Write every n-th integration step [steps]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_output(simulate, sa.output);
  simulate->callback([&] { action = [&] { return cmd_simulate(sa, io); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::ParseError& e) {
    report(io, e.what());
    return kUsageError;
  }

  try {
    if (!config_path.empty()) apply_config(simulate, config_path);
    return action();
  } catch (const CLI::Error& e) {
    report(io, e.what());
    return kUsageError;
  } catch (const Error& e) {
    report(io, e.what());
    return exit_code_for(e.code());
  } catch (const UsageError& e) {
    report(io, e.what());
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    report(io, e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    report(io, e.what());
    return kNumericalFailure;
  }
}

}  // namespace spinphase::cli
