#include "fracctrl/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracctrl/controllability.hpp"
#include "fracctrl/hum.hpp"

namespace fracctrl {

RunMode parse_run_mode(const std::string& name) {
  if (name == "simulate") return RunMode::Simulate;
  if (name == "analyze") return RunMode::Analyze;
  if (name == "hum") return RunMode::Hum;
  throw ConfigError("unknown mode '" + name + "' (expected simulate|analyze|hum)");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

std::string mode_name(RunMode m) {
  switch (m) {
    case RunMode::Simulate: return "simulate";
    case RunMode::Analyze: return "analyze";
    case RunMode::Hum: return "hum";
  }
  return "?";
}

std::string actuator_text(const ActuatorSpec& a) {
  std::ostringstream os;
  if (a.kind == ActuatorSpec::Kind::Zone)
    os << "zone:" << format_number(a.a1) << "," << format_number(a.a2);
  else
    os << "point:" << format_number(a.b);
  return os.str();
}

std::string join_modes(const std::vector<int>& modes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < modes.size(); ++i) os << (i ? "," : "") << modes[i];
  return modes.empty() ? "none" : os.str();
}

void write_state_csv(const std::string& path, const SpectralField& target,
                     const SpectralField& achieved) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "x,z_T_target,z_T_achieved\n";
  const int points = 401;
  for (int k = 0; k < points; ++k) {
    const double x = double(k) / (points - 1);
    out << format_number(x) << "," << format_number(evaluate_field(target, x)) << ","
        << format_number(evaluate_field(achieved, x)) << "\n";
  }
}

void write_control_csv(const std::string& path, const ControlSignal& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,u_star\n";
  for (std::size_t k = 0; k < u.times().size(); ++k)
    out << format_number(u.times()[k]) << "," << format_number(u.grid_values()[k]) << "\n";
}

void echo_config(std::ostream& out, const ProblemConfig& cfg, RunMode mode) {
  out << "[config]\n";
  out << "mode=" << mode_name(mode) << "\n";
  out << "alpha=" << format_number(cfg.alpha) << "\n";
  out << "T=" << format_number(cfg.T) << "\n";
  out << "n_modes=" << cfg.n_modes << "\n";
  out << "actuator=" << actuator_text(*cfg.actuator) << "\n";
  out << "region=" << format_number(cfg.region->sigma1) << "," << format_number(cfg.region->sigma2)
      << "\n";
  out << "z0=" << cfg.z0.describe() << "\n";
  out << "z_T=" << cfg.z_T.describe() << "\n";
  out << "epsilon=" << format_number(cfg.epsilon) << "\n";
  out << "gain_tol=" << format_number(cfg.gain_tol) << "\n";
  out << "quad_panels=" << cfg.quad.panels << "\n";
  out << "quad_nodes_per_panel=" << cfg.quad.nodes_per_panel << "\n";
  out << "seed=" << cfg.seed << "\n";
  out << "out_dir=" << cfg.out_dir << "\n";
  out << "signal_samples=" << cfg.signal_samples << "\n";
  out << "mlf_series_tol=" << format_number(cfg.mlf.series_tol) << "\n";
  out << "mlf_series_max_terms=" << cfg.mlf.series_max_terms << "\n";
  out << "mlf_asymptotic_crossover=" << format_number(cfg.mlf.asymptotic_crossover) << "\n";
  out << "mlf_asymptotic_terms=" << cfg.mlf.asymptotic_terms << "\n";
}

void echo_controllability(std::ostream& out, const ControllabilityReport& rep) {
  out << "[controllability]\n";
  out << "scope=truncation_N=" << rep.truncation
      << " (finite-dimensional test; the infinite-dimensional statement is not decidable"
         " numerically)\n";
  out << "verdict=" << (rep.controllable ? "controllable_at_truncation" : "not_controllable")
      << "\n";
  out << "gain_tol=" << format_number(rep.gain_tol) << "\n";
  out << "dead_modes=" << join_modes(rep.dead_modes) << "\n";
  out << "live_modes=" << join_modes(rep.live_modes) << "\n";
  out << "obstruction_visible_on_region=" << (rep.obstruction_visible_on_region ? "yes" : "no")
      << "\n";
}

}  // namespace

int run_experiment(const ProblemConfig& cfg, RunMode mode) {
  cfg.validate(mode == RunMode::Hum);
  std::filesystem::create_directories(cfg.out_dir);
  const std::string report_path = cfg.out_dir + "/report.txt";
  std::ofstream report(report_path, std::ios::binary);
  if (!report) throw std::runtime_error("cannot write " + report_path);

  const EigenBasis basis = build_basis(cfg.n_modes);
  const RegionMass mass(*cfg.region, basis);
  const ControllabilityReport creport = analyze(*cfg.actuator, *cfg.region, basis, cfg.gain_tol);
  const SpectralField z0 = cfg.z0.realize(basis);
  const SpectralField z_T = cfg.z_T.realize(basis);

  echo_config(report, cfg, mode);
  report << "\n";
  echo_controllability(report, creport);

  if (mode == RunMode::Analyze) return 0;

  if (mode == RunMode::Simulate) {
    // free evolution from z0 under u = 0
    const ControlSignal u = ControlSignal::zero(cfg.T, cfg.signal_samples);
    const SpectralField zT_free = free_evolution(z0, cfg.alpha, cfg.T, basis, cfg.mlf);
    write_state_csv(cfg.out_dir + "/state_T.csv", z_T, zT_free);
    write_control_csv(cfg.out_dir + "/control.csv", u);
    report << "\n[simulate]\n";
    report << "state_norm_T=" << format_number(zT_free.norm()) << "\n";
    report << "state_omega_norm_T=" << format_number(restrict_norm(zT_free, mass)) << "\n";
    report << "target_omega_norm=" << format_number(restrict_norm(z_T, mass)) << "\n";
    return 0;
  }

  // HUM synthesis
  try {
    const TimeGramian gramian = assemble_gramian(cfg.alpha, cfg.T, basis, cfg.quad, cfg.mlf);
    const ModeGains gains = mode_gains(*cfg.actuator, basis);
    const LambdaOperator lambda_op = assemble_lambda(gramian, gains, mass, cfg.epsilon);
    const HUMSolution sol = solve_hum(lambda_op, z_T, z0, cfg.alpha, cfg.T, basis, *cfg.actuator,
                                      creport, cfg.quad, cfg.mlf, cfg.signal_samples);

    write_state_csv(cfg.out_dir + "/state_T.csv", z_T, sol.achieved);
    write_control_csv(cfg.out_dir + "/control.csv", sol.u_star);

    report << "\n[hum]\n";
    report << "status="
           << (sol.status == SteeringStatus::Steered ? "steered" : "obstructed_target") << "\n";
    report << "residual=" << format_number(sol.residual) << "\n";
    report << "relative_residual=" << format_number(sol.relative_residual) << "\n";
    report << "energy=" << format_number(sol.energy) << "\n";
    report << "zstar_norm=" << format_number(sol.zstar_norm) << "\n";
    report << "obstructed_norm=" << format_number(sol.obstructed_norm) << "\n";
    report << "reachable_omega_norm=" << format_number(restrict_norm(sol.reachable_target, mass))
           << "\n";
    return sol.status == SteeringStatus::Steered ? 0 : 2;
  } catch (const UnreachableTargetError& e) {
    report << "\n[hum]\n";
    report << "status=unreachable\n";
    report << "error=" << e.what() << "\n";
    const TargetSplit split = reachable_component(z_T, creport);
    report << "obstructed_norm=" << format_number(restrict_norm(split.obstructed, mass)) << "\n";
    report << "reachable_omega_norm=" << format_number(restrict_norm(split.reachable, mass))
           << "\n";
    return 2;
  }
}

}  // namespace fracctrl
