#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccring/config_io.hpp"
#include "ccring/errors.hpp"
#include "ccring/scenario.hpp"

namespace {

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

// "lo:hi:step" or a comma list of numbers.
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    std::string lo_s, hi_s, step_s;
    std::getline(in, lo_s, ':');
    std::getline(in, hi_s, ':');
    std::getline(in, step_s, ':');
    const double lo = std::stod(lo_s);
    const double hi = std::stod(hi_s);
    const double step = step_s.empty() ? 1.0 : std::stod(step_s);
    if (step <= 0) throw ccring::precondition_error("--values: step must be > 0");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) values.push_back(lo + i * step);
    return values;
  }
  for (const auto& token : split_list(text)) values.push_back(std::stod(token));
  return values;
}

constexpr const char* kSchemaHelp = R"(Report files (UTF-8, 6 significant digits):
  couplings.csv    table 1: j,zeta_prime,xi_prime,lambda_prime
                   table 2: name,ratio,threshold,pass (after a blank line)
  design_report.csv j,solved_delta,mismatch_residual,min_separation_achieved,rejected_roots
  gate_report.txt  key = value blocks separated by blank lines
  sweep.csv        value, then fixed columns per task, then error:
                   couplings:      zeta_prime_j,xi_prime_j,lambda_prime_j (j = 2..N)
                   conditions:     adiabatic_cavity,adiabatic_ctrl,adiabatic_tgt,
                                   dispersive_ctrl,dispersive_tgt,cross_ratio,
                                   target_ratio,passed
                   budget:         p_e,p_c,fidelity_estimate
                   gate-effective: gate_time,gate_time_seconds,fidelity
Sweep paths: hop, gamma, kappa, g_atom[j], delta_cav[j], rabi_ctrl[m],
delta_ctrl[m], rabi_tgt[n], delta_tgt[n], pair[j] (sets delta_ctrl[j-1]
and delta_tgt[j] together).
)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coupled-cavity ring controlled-phase gate toolkit: effective "
      "couplings, validity conditions, detuning design, gate simulation "
      "and error budgets."};
  app.footer(kSchemaHelp);

  std::string scenario_name = "custom";
  std::string config_path;
  std::string tasks_csv;
  std::string out_dir = ".";
  std::string sweep_path;
  std::string sweep_values;
  double g_hz = ccring::kDefaultGHz;
  double dt = 5e-4;
  int nmax = -1;
  int threads = 0;
  bool dump_traj = false;
  std::vector<double> weights;

  app.add_option("--scenario", scenario_name,
                 "paper-n3 | paper-n4 | paper-n200 | custom");
  app.add_option("--config", config_path,
                 "config file (required for custom, overrides otherwise)");
  app.add_option("--tasks", tasks_csv,
                 "comma list: couplings,conditions,design,gate-effective,"
                 "gate-full,budget");
  app.add_option("--out", out_dir, "output directory for report files");
  app.add_option("--g-hz", g_hz, "reference coupling g in rad/s");
  app.add_option("--dt", dt, "integrator step for gate-full, units 1/g");
  app.add_option("--nmax", nmax, "override per-mode photon cutoff");
  app.add_option("--threads", threads, "propagation threads (0 = all cores)");
  app.add_option("--sweep", sweep_path, "parameter path to sweep");
  app.add_option("--values", sweep_values,
                 "sweep values: lo:hi:step or comma list");
  app.add_option("--weights", weights,
                 "excitation weights: prefactor, ctrl, one per target");
  app.add_flag("--dump-trajectory", dump_traj,
               "write per-basis-state trajectory CSVs for gate-full");

  CLI11_PARSE(app, argc, argv);

  try {
    ccring::Scenario scenario = ccring::make_scenario(scenario_name);
    if (!config_path.empty()) {
      scenario.config = ccring::parse_config_file(config_path);
    } else if (scenario_name == "custom") {
      std::cerr << "error: --scenario custom requires --config\n";
      return 2;
    }
    if (!tasks_csv.empty()) {
      scenario.tasks.clear();
      for (const auto& name : split_list(tasks_csv)) {
        scenario.tasks.push_back(ccring::parse_task(name));
      }
    }
    scenario.g_hz = g_hz;
    scenario.prop.dt = dt;
    scenario.threads = threads;
    scenario.dump_trajectories = dump_traj;
    scenario.budget_weights = weights;
    if (nmax >= 0) scenario.config.n_max = nmax;

    if (!sweep_path.empty()) {
      if (sweep_values.empty()) {
        std::cerr << "error: --sweep requires --values\n";
        return 2;
      }
      ccring::SweepSpec spec;
      spec.path = sweep_path;
      spec.values = parse_values(sweep_values);
      spec.tasks = scenario.tasks;
      std::filesystem::create_directories(out_dir);
      std::ofstream csv(std::filesystem::path(out_dir) / "sweep.csv");
      if (!csv) {
        std::cerr << "error: cannot write sweep.csv under " << out_dir << "\n";
        return 2;
      }
      ccring::run_sweep(scenario.config, spec, scenario.g_hz, csv);
      std::cout << "wrote " << (std::filesystem::path(out_dir) / "sweep.csv")
                << "\n";
      return 0;
    }

    const ccring::ScenarioOutcome outcome =
        ccring::run_scenario(scenario, out_dir, std::cout);
    if (outcome.exit_status != 0) {
      std::cout << "scenario " << scenario_name << ": "
                << "reference checks FAILED\n";
    }
    return outcome.exit_status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
