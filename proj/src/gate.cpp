#include "ccring/gate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "ccring/errors.hpp"
#include "ccring/numerics.hpp"

namespace ccring {

PhaseTable effective_phases(const EffectiveCouplings& coup, double t) {
  if (!(t >= 0.0)) throw precondition_error("effective_phases: t must be >= 0");
  PhaseTable table;
  const std::size_t n = coup.lambda_prime.size();
  table.phi.resize(n);
  table.psi.resize(n);
  table.phi_cond.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    table.phi[i] = coup.xi_prime[i] * t;
    table.psi[i] = coup.zeta_prime[i] * t;
    table.phi_cond[i] = coup.lambda_prime[i] * t;
  }
  return table;
}

double gate_time(const EffectiveCouplings& coup, double rel_tol) {
  const double reference = coup.lambda_prime.front();
  if (reference == 0.0) {
    throw singular_parameter_error("gate_time: Lambda'_{1,2} is zero");
  }
  for (double lp : coup.lambda_prime) {
    if (std::abs(lp - reference) > rel_tol * std::abs(reference)) {
      throw design_error(
          "gate_time: conditional couplings are not equalized (" +
          std::to_string(lp) + " vs " + std::to_string(reference) +
          "); run the detuning designer first");
    }
  }
  return kPi / reference;
}

namespace {

// 2^N diagonal tables stop making sense (and fitting) long before N = 64.
std::int64_t qubit_dim_checked(int n_sites) {
  if (n_sites < 2) throw precondition_error("n_sites must be >= 2");
  if (n_sites > 23) {
    throw capacity_error("qubit diagonal of 2^" + std::to_string(n_sites) +
                         " states exceeds capacity");
  }
  return std::int64_t{1} << n_sites;
}

}  // namespace

std::vector<double> ideal_gate_diag(int n_sites) {
  const std::int64_t dim = qubit_dim_checked(n_sites);
  std::vector<double> diag(dim);
  for (std::int64_t s = 0; s < dim; ++s) {
    const bool ctrl_g = ((s >> (n_sites - 1)) & 1) != 0;
    if (!ctrl_g) {
      diag[s] = 1.0;
      continue;
    }
    int targets_g = 0;
    for (int j = 2; j <= n_sites; ++j) {
      if (((s >> (n_sites - j)) & 1) != 0) ++targets_g;
    }
    diag[s] = (targets_g % 2 == 0) ? 1.0 : -1.0;
  }
  return diag;
}

namespace {

// One-qubit correction angle for basis state s: +psi_{1,j} summed over j when
// the control is in g, +phi_j for every target j in g.
double correction_angle(const PhaseTable& table, std::int64_t s, int n_sites) {
  const bool ctrl_g = ((s >> (n_sites - 1)) & 1) != 0;
  double corr = 0.0;
  for (int j = 2; j <= n_sites; ++j) {
    const bool tgt_g = ((s >> (n_sites - j)) & 1) != 0;
    if (ctrl_g) corr += table.psi[j - 2];
    if (tgt_g) corr += table.phi[j - 2];
  }
  return corr;
}

// Phase accumulated by basis state s under the reduced diagonal model,
// assembled from the same PhaseTable entries the corrections use so the
// one-qubit parts cancel exactly.
double effective_run_phase(const PhaseTable& table, std::int64_t s,
                           int n_sites) {
  const bool ctrl_g = ((s >> (n_sites - 1)) & 1) != 0;
  double phase = 0.0;
  for (int j = 2; j <= n_sites; ++j) {
    const bool tgt_g = ((s >> (n_sites - j)) & 1) != 0;
    if (ctrl_g) phase += table.psi[j - 2];
    if (tgt_g) phase += table.phi[j - 2];
    if (ctrl_g && tgt_g) phase += table.phi_cond[j - 2];
  }
  return phase;
}

struct FullRun {
  double phase = 0.0;
  double leakage = 0.0;
  Trajectory trajectory;
};

FullRun run_full_state(const SystemConfig& cfg, const SpaceDescriptor& space,
                       const HamiltonianGenerator& gen, std::int64_t s,
                       double t, const PropagationSettings& settings,
                       bool keep_trajectory) {
  std::vector<int> levels(cfg.n_sites);
  for (int j = 1; j <= cfg.n_sites; ++j) {
    levels[j - 1] =
        ((s >> (cfg.n_sites - j)) & 1) != 0 ? kLevelG : kLevelA;
  }
  const StateVector psi0 = vacuum_state(space, levels);
  PropagationResult res = propagate(psi0, gen, t, settings, &space);
  FullRun out;
  out.phase = extract_phase(res.trajectory);
  const double survive = std::abs(res.trajectory.samples.back().overlap);
  out.leakage = 1.0 - survive * survive;
  if (keep_trajectory) out.trajectory = std::move(res.trajectory);
  return out;
}

}  // namespace

GateDiagResult simulated_gate_diag(const SystemConfig& cfg, double t,
                                   GateSource source,
                                   const PropagationSettings& settings,
                                   int threads, std::int64_t capacity,
                                   bool keep_trajectories) {
  const int n_sites = cfg.n_sites;
  const std::int64_t dim = qubit_dim_checked(n_sites);
  const EffectiveCouplings coup = reduced_couplings(cfg);
  const PhaseTable table = effective_phases(coup, t);

  GateDiagResult result;
  result.diag.resize(dim);
  result.raw_phases.resize(dim);
  result.leakage.assign(dim, 0.0);

  if (source == GateSource::effective) {
    for (std::int64_t s = 0; s < dim; ++s) {
      const double run = effective_run_phase(table, s, n_sites);
      const double corr = correction_angle(table, s, n_sites);
      result.raw_phases[s] = run;
      result.diag[s] = std::polar(1.0, -run + corr);
    }
    return result;
  }

  const SpaceDescriptor space = build_space(n_sites, cfg.n_max, capacity);
  const HamiltonianGenerator gen = build_full_hamiltonian(cfg, space);

  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  std::vector<FullRun> runs(dim);
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t s = next.fetch_add(1); s < dim; s = next.fetch_add(1)) {
      runs[s] =
          run_full_state(cfg, space, gen, s, t, settings, keep_trajectories);
    }
  };
  if (threads == 1 || dim == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n_workers = static_cast<int>(std::min<std::int64_t>(threads, dim));
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (keep_trajectories) result.trajectories.resize(dim);
  for (std::int64_t s = 0; s < dim; ++s) {
    const double corr = correction_angle(table, s, n_sites);
    result.raw_phases[s] = runs[s].phase;
    result.diag[s] = std::polar(1.0, -runs[s].phase + corr);
    result.leakage[s] = runs[s].leakage;
    if (keep_trajectories) result.trajectories[s] = std::move(runs[s].trajectory);
  }
  return result;
}

double conditional_phase_from_runs(double phi_gg, double phi_ga, double phi_ag,
                                   double phi_aa) {
  return phi_gg - phi_ga - phi_ag + phi_aa;
}

double gate_fidelity(const std::vector<Complex>& sim,
                     const std::vector<double>& ideal) {
  if (sim.size() != ideal.size()) {
    throw precondition_error("gate_fidelity: length mismatch");
  }
  Complex acc = 0.0;
  for (std::size_t i = 0; i < sim.size(); ++i) acc += ideal[i] * sim[i];
  return std::abs(acc) / static_cast<double>(sim.size());
}

GateReport score_gate(const SystemConfig& cfg, GateSource source, double g_hz,
                      const PropagationSettings& settings, int threads,
                      std::int64_t capacity, bool keep_trajectories) {
  const EffectiveCouplings coup = reduced_couplings(cfg);
  GateReport report;
  report.source = source;
  report.gate_time = gate_time(coup);
  report.gate_time_seconds = report.gate_time / g_hz;

  GateDiagResult diag =
      simulated_gate_diag(cfg, report.gate_time, source, settings, threads,
                          capacity, keep_trajectories);
  report.diag = std::move(diag.diag);
  report.raw_phases = std::move(diag.raw_phases);
  report.trajectories = std::move(diag.trajectories);
  report.leakage = std::move(diag.leakage);
  report.diag_phases.resize(report.diag.size());
  for (std::size_t i = 0; i < report.diag.size(); ++i) {
    report.diag_phases[i] = std::arg(report.diag[i]);
  }
  report.fidelity = gate_fidelity(report.diag, ideal_gate_diag(cfg.n_sites));
  return report;
}

std::string basis_label(int n_sites, std::int64_t index) {
  std::string label(n_sites, 'a');
  for (int j = 1; j <= n_sites; ++j) {
    if (((index >> (n_sites - j)) & 1) != 0) label[j - 1] = 'g';
  }
  return label;
}

}  // namespace ccring
