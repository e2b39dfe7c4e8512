#pragma once

#include <vector>

#include "ccring/couplings.hpp"
#include "ccring/dynamics.hpp"
#include "ccring/hilbert.hpp"

namespace ccring {

// Accumulated phases of the reduced model at interaction time t, indexed
// j = 2..N (stored at j-2). phi: one-qubit target phases, psi: one-qubit
// control phases, phi_cond: conditional phases.
struct PhaseTable {
  std::vector<double> phi;       // xi'_j t
  std::vector<double> psi;       // zeta'_{1,j} t
  std::vector<double> phi_cond;  // Lambda'_{1,j} t
};

PhaseTable effective_phases(const EffectiveCouplings& coup, double t);

// Common completion time t = pi / Lambda'_{1,2}. All conditional couplings
// must agree to rel_tol; configs straight from a designer run satisfy this,
// hand-rounded ones need the looser default.
double gate_time(const EffectiveCouplings& coup, double rel_tol = 1e-3);

// Diagonal of the ideal gate over {a,g}^N: +1 when the control is a,
// otherwise (-1)^(number of targets in g).
std::vector<double> ideal_gate_diag(int n_sites);

enum class GateSource { effective, full };

struct GateDiagResult {
  std::vector<Complex> diag;       // corrected unimodular entries, one per state
  std::vector<double> raw_phases;  // unwrapped accumulated phase before corrections
  std::vector<double> leakage;     // 1 - |overlap|^2 per state (full source)
  std::vector<Trajectory> trajectories;  // full source only, when requested
};

// Phase per computational basis state at time t, from the chosen model, with
// the one-qubit corrections applied. Corrections always come from the
// effective PhaseTable so that full-model error stays visible.
GateDiagResult simulated_gate_diag(const SystemConfig& cfg, double t,
                                   GateSource source,
                                   const PropagationSettings& settings = {},
                                   int threads = 0,
                                   std::int64_t capacity = kDefaultCapacity,
                                   bool keep_trajectories = false);

// Correction-independent conditional phase from four two-qubit-sector runs.
double conditional_phase_from_runs(double phi_gg, double phi_ga, double phi_ag,
                                   double phi_aa);

// Global-phase-invariant overlap |sum ideal* sim| / 2^N.
double gate_fidelity(const std::vector<Complex>& sim,
                     const std::vector<double>& ideal);

struct GateReport {
  GateSource source = GateSource::effective;
  double gate_time = 0.0;          // units 1/g
  double gate_time_seconds = 0.0;  // using the configured g in rad/s
  double fidelity = 0.0;
  std::vector<Complex> diag;
  std::vector<double> diag_phases;  // radians, in (-pi, pi]
  std::vector<double> raw_phases;   // unwrapped, before corrections
  std::vector<double> leakage;
  std::vector<Trajectory> trajectories;  // full source only, when requested
};

GateReport score_gate(const SystemConfig& cfg, GateSource source, double g_hz,
                      const PropagationSettings& settings = {},
                      int threads = 0, std::int64_t capacity = kDefaultCapacity,
                      bool keep_trajectories = false);

// Basis label like "gga": atom 1 first, letters a/g.
std::string basis_label(int n_sites, std::int64_t index);

}  // namespace ccring
