#include "ccring/couplings.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "ccring/errors.hpp"
#include "ccring/numerics.hpp"

namespace ccring {

namespace {

constexpr double kSingularTol = 1e-12;

void require_denominator(double value, const std::string& label) {
  if (std::abs(value) < kSingularTol) {
    throw singular_parameter_error("singular denominator " + label + " = " +
                                   std::to_string(value));
  }
}

std::string idx2(const char* name, int a, int b) {
  return std::string(name) + "(" + std::to_string(a) + "," + std::to_string(b) +
         ")";
}

}  // namespace

ModeSpectrum mode_frequencies(int n_sites, double hop) {
  if (n_sites < 2) {
    throw precondition_error("mode_frequencies: n_sites must be >= 2");
  }
  ModeSpectrum spec;
  spec.omega.resize(static_cast<std::size_t>(n_sites));
  for (int k = 1; k <= n_sites; ++k) {
    spec.omega[k - 1] = 2.0 * hop * std::cos(kTwoPi * k / n_sites);
  }
  return spec;
}

RamanCoefficients raman_coefficients(const SystemConfig& cfg) {
  const int n_sites = cfg.n_sites;
  const auto omega = mode_frequencies(n_sites, cfg.hop).omega;
  const double root_n = std::sqrt(static_cast<double>(n_sites));

  RamanCoefficients rc;
  rc.eta.resize(n_sites - 1);
  rc.mu.resize(n_sites - 1);
  rc.chi.resize(n_sites, n_sites);
  rc.xi.resize(n_sites - 1, n_sites);
  rc.zeta.resize(n_sites - 1, n_sites);

  for (int m = 1; m <= n_sites - 1; ++m) {
    require_denominator(cfg.delta_ctrl_m(m), idx2("Delta_ctrl", 1, m));
    rc.eta[m - 1] =
        cfg.rabi_ctrl_m(m) * cfg.rabi_ctrl_m(m) / cfg.delta_ctrl_m(m);
  }
  for (int n = 2; n <= n_sites; ++n) {
    require_denominator(cfg.delta_tgt_n(n), idx2("Delta_tgt", n, n));
    rc.mu[n - 2] = cfg.rabi_tgt_n(n) * cfg.rabi_tgt_n(n) / cfg.delta_tgt_n(n);
  }
  for (int l = 1; l <= n_sites; ++l) {
    for (int k = 1; k <= n_sites; ++k) {
      const double det = cfg.delta_cav_j(l) - omega[k - 1];
      require_denominator(det, idx2("Delta_cav-omega", l, k));
      rc.chi(l - 1, k - 1) = cfg.g_j(l) * cfg.g_j(l) / (n_sites * det);
    }
  }
  for (int m = 1; m <= n_sites - 1; ++m) {
    for (int k = 1; k <= n_sites; ++k) {
      const double det = cfg.delta_cav_j(1) - omega[k - 1];
      rc.xi(m - 1, k - 1) = cfg.g_j(1) * cfg.rabi_ctrl_m(m) / (2.0 * root_n) *
                            (1.0 / det + 1.0 / cfg.delta_ctrl_m(m));
    }
  }
  for (int n = 2; n <= n_sites; ++n) {
    for (int k = 1; k <= n_sites; ++k) {
      const double det = cfg.delta_cav_j(n) - omega[k - 1];
      rc.zeta(n - 2, k - 1) = cfg.g_j(n) * cfg.rabi_tgt_n(n) / (2.0 * root_n) *
                              (1.0 / det + 1.0 / cfg.delta_tgt_n(n));
    }
  }
  return rc;
}

namespace {

// Dispersive denominators: ctrl(m,k) = Delta_1^(c) - omega_k - Delta_1^(m),
// tgt(n,k) = Delta_n^(c) - omega_k - Delta_n.
double ctrl_denom(const SystemConfig& cfg, const std::vector<double>& omega,
                  int m, int k) {
  return cfg.delta_cav_j(1) - omega[k - 1] - cfg.delta_ctrl_m(m);
}

double tgt_denom(const SystemConfig& cfg, const std::vector<double>& omega,
                 int n, int k) {
  return cfg.delta_cav_j(n) - omega[k - 1] - cfg.delta_tgt_n(n);
}

}  // namespace

SecondOrderCoefficients second_order_coefficients(const SystemConfig& cfg) {
  const int n_sites = cfg.n_sites;
  const auto omega = mode_frequencies(n_sites, cfg.hop).omega;
  const RamanCoefficients rc = raman_coefficients(cfg);

  SecondOrderCoefficients so;
  so.theta.resize(n_sites - 1, n_sites);
  so.vartheta.resize(n_sites - 1, n_sites);

  for (int m = 1; m <= n_sites - 1; ++m) {
    for (int k = 1; k <= n_sites; ++k) {
      const double den = ctrl_denom(cfg, omega, m, k);
      require_denominator(den, idx2("ctrl dispersive", m, k));
      const double x = rc.xi(m - 1, k - 1);
      so.theta(m - 1, k - 1) = x * x / den;
    }
  }
  for (int n = 2; n <= n_sites; ++n) {
    for (int k = 1; k <= n_sites; ++k) {
      const double den = tgt_denom(cfg, omega, n, k);
      require_denominator(den, idx2("tgt dispersive", n, k));
      const double z = rc.zeta(n - 2, k - 1);
      so.vartheta(n - 2, k - 1) = z * z / den;
    }
  }
  for (int p = 2; p <= n_sites; ++p) {
    for (int q = 2; q <= n_sites; ++q) {
      if (p == q) continue;
      for (int k = 1; k <= n_sites; ++k) {
        const std::complex<double> phase =
            std::polar(1.0, -kTwoPi * (p - q) * k / n_sites);
        so.gamma_cross[{p, q, k}] =
            rc.zeta(p - 2, k - 1) * rc.zeta(q - 2, k - 1) * phase / 2.0 *
            (1.0 / tgt_denom(cfg, omega, p, k) +
             1.0 / tgt_denom(cfg, omega, q, k));
      }
    }
  }
  for (int m = 1; m <= n_sites - 1; ++m) {
    for (int n = 2; n <= n_sites; ++n) {
      for (int k = 1; k <= n_sites; ++k) {
        const std::complex<double> phase =
            std::polar(1.0, -kTwoPi * (n - 1) * k / n_sites);
        so.lambda_cross[{m, n, k}] =
            rc.xi(m - 1, k - 1) * rc.zeta(n - 2, k - 1) * phase / 2.0 *
            (1.0 / ctrl_denom(cfg, omega, m, k) +
             1.0 / tgt_denom(cfg, omega, n, k));
      }
    }
  }
  return so;
}

double lambda_prime_pair(const SystemConfig& cfg, int j) {
  const int n_sites = cfg.n_sites;
  const auto omega = mode_frequencies(n_sites, cfg.hop).omega;
  const double root_n = std::sqrt(static_cast<double>(n_sites));
  const int m = j - 1;

  require_denominator(cfg.delta_ctrl_m(m), idx2("Delta_ctrl", 1, m));
  require_denominator(cfg.delta_tgt_n(j), idx2("Delta_tgt", j, j));

  KahanSum<double> sum;
  for (int k = 1; k <= n_sites; ++k) {
    const double det1 = cfg.delta_cav_j(1) - omega[k - 1];
    const double detj = cfg.delta_cav_j(j) - omega[k - 1];
    require_denominator(det1, idx2("Delta_cav-omega", 1, k));
    require_denominator(detj, idx2("Delta_cav-omega", j, k));
    const double den_c = ctrl_denom(cfg, omega, m, k);
    const double den_t = tgt_denom(cfg, omega, j, k);
    require_denominator(den_c, idx2("ctrl dispersive", m, k));
    require_denominator(den_t, idx2("tgt dispersive", j, k));
    const double xi = cfg.g_j(1) * cfg.rabi_ctrl_m(m) / (2.0 * root_n) *
                      (1.0 / det1 + 1.0 / cfg.delta_ctrl_m(m));
    const double zeta = cfg.g_j(j) * cfg.rabi_tgt_n(j) / (2.0 * root_n) *
                        (1.0 / detj + 1.0 / cfg.delta_tgt_n(j));
    sum.add(xi * zeta * std::cos(kTwoPi * (j - 1) * k / n_sites) *
            (1.0 / den_c + 1.0 / den_t));
  }
  return sum.value();
}

EffectiveCouplings reduced_couplings(const SystemConfig& cfg) {
  constexpr double kResidualTol = 1e-9;
  const ResonanceReport res = resonance_pairing(cfg);
  for (const auto& [key, residual] : res.pair_residuals) {
    if (std::abs(residual) > kResidualTol) {
      throw precondition_error(
          "reduced_couplings: resonant pair (" + std::to_string(key.first) +
          "," + std::to_string(key.second) + ") has residual " +
          std::to_string(residual) + "; the reduced model needs exact resonance");
    }
  }

  const int n_sites = cfg.n_sites;
  const auto omega = mode_frequencies(n_sites, cfg.hop).omega;
  const RamanCoefficients rc = raman_coefficients(cfg);

  // Only the diagonal-shift families are needed here; the cross-coupling
  // maps would cost O(N^3) storage at large N.
  EffectiveCouplings out;
  out.zeta_prime.resize(n_sites - 1);
  out.xi_prime.resize(n_sites - 1);
  out.lambda_prime.resize(n_sites - 1);
  for (int j = 2; j <= n_sites; ++j) {
    KahanSum<double> zs;
    for (int k = 1; k <= n_sites; ++k) {
      const double den = ctrl_denom(cfg, omega, j - 1, k);
      require_denominator(den, idx2("ctrl dispersive", j - 1, k));
      const double x = rc.xi(j - 2, k - 1);
      zs.add(x * x / den);
    }
    out.zeta_prime[j - 2] = zs.value() - rc.eta[j - 2];

    KahanSum<double> xs;
    for (int k = 1; k <= n_sites; ++k) {
      const double den = tgt_denom(cfg, omega, j, k);
      require_denominator(den, idx2("tgt dispersive", j, k));
      const double z = rc.zeta(j - 2, k - 1);
      xs.add(z * z / den);
    }
    out.xi_prime[j - 2] = xs.value() - rc.mu[j - 2];

    out.lambda_prime[j - 2] = lambda_prime_pair(cfg, j);
  }
  return out;
}

namespace {

std::map<IndexPair, std::complex<double>> cross_sums_impl(
    const SystemConfig& cfg, bool control_target) {
  const int n_sites = cfg.n_sites;
  const auto omega = mode_frequencies(n_sites, cfg.hop).omega;
  const RamanCoefficients rc = raman_coefficients(cfg);

  std::map<IndexPair, std::complex<double>> sums;
  if (control_target) {
    for (int m = 1; m <= n_sites - 1; ++m) {
      for (int n = 2; n <= n_sites; ++n) {
        KahanSum<double> re, im;
        for (int k = 1; k <= n_sites; ++k) {
          const std::complex<double> phase =
              std::polar(1.0, -kTwoPi * (n - 1) * k / n_sites);
          const std::complex<double> term =
              rc.xi(m - 1, k - 1) * rc.zeta(n - 2, k - 1) * phase / 2.0 *
              (1.0 / ctrl_denom(cfg, omega, m, k) +
               1.0 / tgt_denom(cfg, omega, n, k));
          re.add(term.real());
          im.add(term.imag());
        }
        sums[{m, n}] = {re.value(), im.value()};
      }
    }
  } else {
    for (int p = 2; p <= n_sites; ++p) {
      for (int q = 2; q <= n_sites; ++q) {
        if (p == q) continue;
        KahanSum<double> re, im;
        for (int k = 1; k <= n_sites; ++k) {
          const std::complex<double> phase =
              std::polar(1.0, -kTwoPi * (p - q) * k / n_sites);
          const std::complex<double> term =
              rc.zeta(p - 2, k - 1) * rc.zeta(q - 2, k - 1) * phase / 2.0 *
              (1.0 / tgt_denom(cfg, omega, p, k) +
               1.0 / tgt_denom(cfg, omega, q, k));
          re.add(term.real());
          im.add(term.imag());
        }
        sums[{p, q}] = {re.value(), im.value()};
      }
    }
  }
  return sums;
}

}  // namespace

std::map<IndexPair, std::complex<double>> lambda_cross_sums(
    const SystemConfig& cfg) {
  return cross_sums_impl(cfg, true);
}

std::map<IndexPair, std::complex<double>> gamma_cross_sums(
    const SystemConfig& cfg) {
  return cross_sums_impl(cfg, false);
}

ConditionReport condition_ratios(const SystemConfig& cfg,
                                 const ConditionThresholds& thresholds) {
  const int n_sites = cfg.n_sites;
  const auto omega = mode_frequencies(n_sites, cfg.hop).omega;
  const RamanCoefficients rc = raman_coefficients(cfg);
  const double inf = std::numeric_limits<double>::infinity();
  const double root_n = std::sqrt(static_cast<double>(n_sites));

  ConditionReport rep;
  rep.thresholds = thresholds;

  rep.adiabatic_cavity = inf;
  for (int j = 1; j <= n_sites; ++j) {
    if (cfg.g_j(j) == 0.0) continue;
    for (int k = 1; k <= n_sites; ++k) {
      rep.adiabatic_cavity =
          std::min(rep.adiabatic_cavity,
                   std::abs(cfg.delta_cav_j(j) - omega[k - 1]) * root_n /
                       cfg.g_j(j));
    }
  }

  rep.adiabatic_ctrl = inf;
  for (int m = 1; m <= n_sites - 1; ++m) {
    if (cfg.rabi_ctrl_m(m) == 0.0) continue;
    rep.adiabatic_ctrl = std::min(
        rep.adiabatic_ctrl, std::abs(cfg.delta_ctrl_m(m)) / cfg.rabi_ctrl_m(m));
  }
  rep.adiabatic_tgt = inf;
  for (int n = 2; n <= n_sites; ++n) {
    if (cfg.rabi_tgt_n(n) == 0.0) continue;
    rep.adiabatic_tgt = std::min(
        rep.adiabatic_tgt, std::abs(cfg.delta_tgt_n(n)) / cfg.rabi_tgt_n(n));
  }

  rep.dispersive_ctrl = inf;
  for (int m = 1; m <= n_sites - 1; ++m) {
    for (int k = 1; k <= n_sites; ++k) {
      const double x = std::abs(rc.xi(m - 1, k - 1));
      if (x == 0.0) continue;
      rep.dispersive_ctrl = std::min(
          rep.dispersive_ctrl, std::abs(ctrl_denom(cfg, omega, m, k)) / x);
    }
  }
  rep.dispersive_tgt = inf;
  for (int n = 2; n <= n_sites; ++n) {
    for (int k = 1; k <= n_sites; ++k) {
      const double z = std::abs(rc.zeta(n - 2, k - 1));
      if (z == 0.0) continue;
      rep.dispersive_tgt = std::min(
          rep.dispersive_tgt, std::abs(tgt_denom(cfg, omega, n, k)) / z);
    }
  }

  const ResonanceReport res = resonance_pairing(cfg);
  rep.cross_ratio = inf;
  {
    const auto sums = lambda_cross_sums(cfg);
    for (const auto& [key, sep] : res.cross_separations) {
      const double mag = std::abs(sums.at(key));
      rep.cross_ratio =
          std::min(rep.cross_ratio, mag == 0.0 ? inf : sep / mag);
    }
  }
  rep.target_ratio = inf;
  {
    const auto sums = gamma_cross_sums(cfg);
    for (const auto& [key, sep] : res.target_separations) {
      const double mag = std::abs(sums.at(key));
      rep.target_ratio =
          std::min(rep.target_ratio, mag == 0.0 ? inf : sep / mag);
    }
  }

  rep.passed = rep.adiabatic_cavity >= thresholds.adiabatic &&
               rep.adiabatic_ctrl >= thresholds.adiabatic &&
               rep.adiabatic_tgt >= thresholds.adiabatic &&
               rep.dispersive_ctrl >= thresholds.dispersive &&
               rep.dispersive_tgt >= thresholds.dispersive &&
               rep.cross_ratio >= thresholds.cross &&
               rep.target_ratio >= thresholds.target;
  return rep;
}

}  // namespace ccring
