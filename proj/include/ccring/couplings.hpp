#pragma once

#include <complex>
#include <map>
#include <tuple>
#include <vector>

#include <Eigen/Core>

#include "ccring/config.hpp"

namespace ccring {

// Normal-mode frequencies of the photon ring, omega_k = 2 J_c cos(2 pi k / N),
// k = 1..N (stored at k-1).
struct ModeSpectrum {
  std::vector<double> omega;
};

ModeSpectrum mode_frequencies(int n_sites, double hop);

// First adiabatic-elimination stage: Stark shifts (eta, mu, chi) and the
// drive-assisted atom-mode couplings (xi, zeta). Matrix rows follow the drive
// label: xi(m-1, k-1) for m = 1..N-1, zeta(n-2, k-1) for n = 2..N,
// chi(l-1, k-1) for l = 1..N.
struct RamanCoefficients {
  std::vector<double> eta;  // (Omega_1^(m))^2 / Delta_1^(m)
  std::vector<double> mu;   // Omega_n^2 / Delta_n
  Eigen::MatrixXd chi;
  Eigen::MatrixXd xi;
  Eigen::MatrixXd zeta;
};

RamanCoefficients raman_coefficients(const SystemConfig& cfg);

// Second elimination stage: mode-induced shifts theta/vartheta and the
// cross-atom couplings Gamma (target-target) and Lambda (control-target),
// keyed (p, q, k) and (m, n, k) with k = 1..N.
struct SecondOrderCoefficients {
  Eigen::MatrixXd theta;     // theta(m-1, k-1)
  Eigen::MatrixXd vartheta;  // vartheta(n-2, k-1)
  std::map<std::tuple<int, int, int>, std::complex<double>> gamma_cross;
  std::map<std::tuple<int, int, int>, std::complex<double>> lambda_cross;
};

SecondOrderCoefficients second_order_coefficients(const SystemConfig& cfg);

// Couplings of the reduced diagonal model, indexed j = 2..N (stored at j-2):
// zeta_prime = control Stark shift per pair, xi_prime = target Stark shift,
// lambda_prime = conditional coupling strength.
struct EffectiveCouplings {
  std::vector<double> zeta_prime;
  std::vector<double> xi_prime;
  std::vector<double> lambda_prime;
};

// Requires every resonant pair residual to vanish (|residual| <= 1e-9).
EffectiveCouplings reduced_couplings(const SystemConfig& cfg);

// Conditional coupling Lambda'_{1,j} alone. Depends only on the shared ring
// parameters and the pair (Delta_1^(j-1), Delta_j), so it can be evaluated at
// trial detunings without touching the other pairs.
double lambda_prime_pair(const SystemConfig& cfg, int j);

struct ConditionThresholds {
  double adiabatic = 10.0;
  double dispersive = 10.0;
  double cross = 100.0;
  double target = 100.0;
};

// Quantitative margins for every scale-separation assumption behind the
// reduced model. Ratios are magnitudes; an empty index set yields +inf.
struct ConditionReport {
  double adiabatic_cavity = 0.0;  // min |Delta_j^(c) - omega_k| sqrt(N) / g_j
  double adiabatic_ctrl = 0.0;    // min |Delta_1^(m)| / Omega_1^(m)
  double adiabatic_tgt = 0.0;     // min |Delta_n| / Omega_n
  double dispersive_ctrl = 0.0;   // min |Delta_1^(c)-omega_k-Delta_1^(m)| / |xi|
  double dispersive_tgt = 0.0;    // min |Delta_n^(c)-omega_k-Delta_n| / |zeta|
  double cross_ratio = 0.0;       // min separation / |sum_k Lambda_{m,n,k}|
  double target_ratio = 0.0;      // min separation / |sum_k Gamma_{p,q,k}|
  ConditionThresholds thresholds;
  bool passed = false;
};

ConditionReport condition_ratios(const SystemConfig& cfg,
                                 const ConditionThresholds& thresholds = {});

// Off-resonant coupling sums entering the cross/target ratios, keyed like the
// per-k maps but already summed over k in ascending order.
std::map<IndexPair, std::complex<double>> lambda_cross_sums(
    const SystemConfig& cfg);
std::map<IndexPair, std::complex<double>> gamma_cross_sums(
    const SystemConfig& cfg);

}  // namespace ccring
