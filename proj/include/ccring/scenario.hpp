#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccring/config.hpp"
#include "ccring/dynamics.hpp"
#include "ccring/numerics.hpp"

namespace ccring {

enum class Task {
  couplings,
  conditions,
  design,
  gate_effective,
  gate_full,
  budget,
};

Task parse_task(const std::string& name);
std::string task_name(Task task);

inline constexpr double kDefaultGHz = kTwoPi * 34e6;  // reference g, rad/s

struct Scenario {
  std::string name;  // paper-n3 | paper-n4 | paper-n200 | custom
  SystemConfig config;
  std::vector<Task> tasks;
  double g_hz = kDefaultGHz;
  PropagationSettings prop{1e-3, 200, 1e-8};
  int threads = 0;  // 0 = hardware concurrency
  std::int64_t capacity = 10'000'000;
  std::vector<double> budget_weights;  // empty = defaults where known
  bool dump_trajectories = false;
};

SystemConfig paper_n3_config();
SystemConfig paper_n4_config();
SystemConfig paper_n200_config();

// Named scenario with its default task list; throws on unknown names.
Scenario make_scenario(const std::string& name);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ScenarioOutcome {
  std::vector<CheckResult> checks;
  int exit_status = 0;  // nonzero iff any check failed
};

// Runs the scenario's tasks in dependency order, writes report files into
// out_dir, prints one line per reference check, and reports overall status.
ScenarioOutcome run_scenario(const Scenario& scenario,
                             const std::filesystem::path& out_dir,
                             std::ostream& log);

struct SweepSpec {
  std::string path;  // scalar field path, e.g. hop, delta_tgt[3], pair[3]
  std::vector<double> values;
  std::vector<Task> tasks;  // couplings / conditions / budget / gate-effective
};

// One CSV row per value, fixed column set per task; per-row failures land in
// the error column and the sweep continues.
void run_sweep(const SystemConfig& base, const SweepSpec& spec,
               double g_hz, std::ostream& csv);

// 6-significant-digit number formatting used by every report writer.
std::string format_number(double value);

}  // namespace ccring
