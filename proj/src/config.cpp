#include "ccring/config.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace ccring {

namespace {

void check_length(const std::vector<double>& v, std::size_t want,
                  const char* name, const char* what,
                  std::vector<std::string>& out) {
  if (v.size() != want) {
    out.push_back(std::string(name) + ": length must be " + what);
  }
}

void check_nonneg(const std::vector<double>& v, const char* name,
                  std::vector<std::string>& out) {
  for (double x : v) {
    if (!(x >= 0.0)) {
      out.push_back(std::string(name) + ": entries must be >= 0");
      return;
    }
  }
}

void check_nonzero(const std::vector<double>& v, const char* name,
                   std::vector<std::string>& out) {
  for (double x : v) {
    if (x == 0.0 || !std::isfinite(x)) {
      out.push_back(std::string(name) + ": entries must be nonzero");
      return;
    }
  }
}

}  // namespace

ValidationResult validate_config(const SystemConfig& cfg) {
  ValidationResult r;
  if (cfg.n_sites < 2) r.violations.push_back("n_sites: must be >= 2");
  const auto n = static_cast<std::size_t>(cfg.n_sites < 0 ? 0 : cfg.n_sites);
  check_length(cfg.g_atom, n, "g_atom", "N", r.violations);
  check_length(cfg.delta_cav, n, "delta_cav", "N", r.violations);
  const std::size_t nm1 = n == 0 ? 0 : n - 1;
  check_length(cfg.rabi_ctrl, nm1, "rabi_ctrl", "N-1", r.violations);
  check_length(cfg.delta_ctrl, nm1, "delta_ctrl", "N-1", r.violations);
  check_length(cfg.rabi_tgt, nm1, "rabi_tgt", "N-1", r.violations);
  check_length(cfg.delta_tgt, nm1, "delta_tgt", "N-1", r.violations);

  if (!(cfg.hop >= 0.0)) r.violations.push_back("hop: must be >= 0");
  check_nonneg(cfg.g_atom, "g_atom", r.violations);
  check_nonneg(cfg.rabi_ctrl, "rabi_ctrl", r.violations);
  check_nonneg(cfg.rabi_tgt, "rabi_tgt", r.violations);
  check_nonzero(cfg.delta_cav, "delta_cav", r.violations);
  check_nonzero(cfg.delta_ctrl, "delta_ctrl", r.violations);
  check_nonzero(cfg.delta_tgt, "delta_tgt", r.violations);
  if (!(cfg.gamma >= 0.0)) r.violations.push_back("gamma: must be >= 0");
  if (!(cfg.kappa >= 0.0)) r.violations.push_back("kappa: must be >= 0");
  if (cfg.n_max < 0) r.violations.push_back("n_max: must be >= 0");
  return r;
}

ResonanceReport resonance_pairing(const SystemConfig& cfg) {
  ResonanceReport rep;
  const int n_sites = cfg.n_sites;
  for (int m = 1; m <= n_sites - 1; ++m) {
    for (int n = 2; n <= n_sites; ++n) {
      const double combo = cfg.delta_cav_j(n) - cfg.delta_cav_j(1) -
                           cfg.delta_tgt_n(n) + cfg.delta_ctrl_m(m);
      if (m == n - 1) {
        rep.pair_residuals[{m, n}] = combo;
      } else {
        rep.cross_separations[{m, n}] = std::abs(combo);
      }
    }
  }
  for (int p = 2; p <= n_sites; ++p) {
    for (int q = 2; q <= n_sites; ++q) {
      if (p == q) continue;
      rep.target_separations[{p, q}] =
          std::abs(cfg.delta_cav_j(p) - cfg.delta_cav_j(q) -
                   cfg.delta_tgt_n(p) + cfg.delta_tgt_n(q));
    }
  }
  return rep;
}

}  // namespace ccring
