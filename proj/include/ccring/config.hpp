#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ccring {

// Physical parameters of the cavity ring and its drives. Every frequency is
// dimensionless in units of a reference coupling g (hbar = 1); times are in
// units of 1/g. Atom j couples to cavity j; atom 1 is the control and carries
// N-1 drives, atoms 2..N carry one drive each.
struct SystemConfig {
  int n_sites = 0;                 // N: cavities = atoms = modes
  double hop = 0.0;                // J_c, cavity-cavity hopping
  std::vector<double> g_atom;      // g_j, size N
  std::vector<double> delta_cav;   // Delta_j^(c), size N
  std::vector<double> rabi_ctrl;   // Omega_1^(m), m = 1..N-1
  std::vector<double> delta_ctrl;  // Delta_1^(m), m = 1..N-1
  std::vector<double> rabi_tgt;    // Omega_n, n = 2..N
  std::vector<double> delta_tgt;   // Delta_n, n = 2..N
  double gamma = 0.0;              // excited-state decay rate
  double kappa = 0.0;              // field decay rate
  int n_max = 1;                   // per-mode photon cutoff for full dynamics

  // 1-based accessors matching the physics labels above.
  double g_j(int j) const { return g_atom[j - 1]; }
  double delta_cav_j(int j) const { return delta_cav[j - 1]; }
  double rabi_ctrl_m(int m) const { return rabi_ctrl[m - 1]; }
  double delta_ctrl_m(int m) const { return delta_ctrl[m - 1]; }
  double rabi_tgt_n(int n) const { return rabi_tgt[n - 2]; }
  double delta_tgt_n(int n) const { return delta_tgt[n - 2]; }
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every SystemConfig invariant; violations are data, not exceptions.
ValidationResult validate_config(const SystemConfig& cfg);

using IndexPair = std::pair<int, int>;

// Signed residuals and separations of the detuning combinations
// Delta_n^(c) - Delta_1^(c) - Delta_n + Delta_1^(m). The resonant pairs
// (m = n-1) must sit at zero; every other combination wants to be far from it.
struct ResonanceReport {
  std::map<IndexPair, double> pair_residuals;      // keys (m, n) with m = n-1
  std::map<IndexPair, double> cross_separations;   // keys (m, n), m != n-1
  std::map<IndexPair, double> target_separations;  // keys (p, q), p != q in 2..N
};

ResonanceReport resonance_pairing(const SystemConfig& cfg);

}  // namespace ccring
