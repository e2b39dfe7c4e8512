// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any of them fail. The full-dynamics
// criterion propagates all 2^3 basis states to the gate time and is the only
// long-running entry (a few minutes on one core, parallel across states when
// cores are available).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ccring/couplings.hpp"
#include "ccring/designer.hpp"
#include "ccring/dynamics.hpp"
#include "ccring/error_budget.hpp"
#include "ccring/gate.hpp"
#include "ccring/numerics.hpp"
#include "ccring/scenario.hpp"

using namespace ccring;

namespace {

int g_failures = 0;

void criterion(const std::string& name,
               const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::string detail = body();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("PASS  %-38s %s  [%.2fs]\n", name.c_str(), detail.c_str(),
                secs);
  } catch (const std::exception& e) {
    ++g_failures;
    std::printf("FAIL  %-38s %s\n", name.c_str(), e.what());
  }
  std::fflush(stdout);
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(8);
  out << v;
  return out.str();
}

}  // namespace

int main() {
  const SystemConfig n3 = paper_n3_config();
  const SystemConfig n4 = paper_n4_config();

  criterion("1. n3 effective coupling", [&] {
    const EffectiveCouplings coup = reduced_couplings(n3);
    for (double lp : coup.lambda_prime) {
      expect(std::abs(lp - 1.225e-3) <= 1e-6,
             "lambda_prime " + fmt(lp) + " misses 1.225e-3 by more than 1e-6");
    }
    return "lambda' = " + fmt(coup.lambda_prime[0]) + ", " +
           fmt(coup.lambda_prime[1]) + " (target 1.225e-3 +- 1e-6)";
  });

  criterion("2. gate times and seconds", [&] {
    const double t3 = gate_time(reduced_couplings(n3));
    const double t4 = gate_time(reduced_couplings(n4));
    expect(std::abs(t3 - 2.56457e3) <= 1.0, "t3 = " + fmt(t3));
    expect(std::abs(t4 - 3.0815e3) <= 1.0, "t4 = " + fmt(t4));
    const double t3s = t3 / kDefaultGHz;
    const double t4s = t4 / kDefaultGHz;
    expect(std::abs(t3s - 1.20048e-5) <= 1e-8, "t3_sec = " + fmt(t3s));
    expect(std::abs(t4s - 1.44246e-5) <= 1e-8, "t4_sec = " + fmt(t4s));
    return "t3 = " + fmt(t3) + " (" + fmt(t3s) + " s), t4 = " + fmt(t4) +
           " (" + fmt(t4s) + " s)";
  });

  criterion("3. n4 effective coupling", [&] {
    const EffectiveCouplings coup = reduced_couplings(n4);
    for (double lp : coup.lambda_prime) {
      expect(std::abs(lp - 1.0195e-3) <= 2e-6,
             "lambda_prime " + fmt(lp) + " misses 1.0195e-3 by more than 2e-6");
    }
    return "lambda' = " + fmt(coup.lambda_prime[0]) + ".." +
           fmt(coup.lambda_prime[2]) + " (target 1.0195e-3 +- 2e-6)";
  });

  criterion("4. n200 anchor coupling", [&] {
    const SystemConfig n200 = paper_n200_config();
    const EffectiveCouplings coup = reduced_couplings(n200);
    const double lp = coup.lambda_prime[0];
    expect(std::abs(lp - 9.45658e-4) <= 1e-7, "lambda'_200 = " + fmt(lp));
    const double t200s = kPi / lp / kDefaultGHz;
    expect(std::abs(t200s - 1.5551e-5) <= 1e-8, "t200_sec = " + fmt(t200s));
    return "lambda'_200 = " + fmt(lp) + ", t200 = " + fmt(t200s) + " s";
  });

  criterion("5. error budget", [&] {
    const double p_e = atomic_excitation_probability(n3);
    expect(p_e == 7.0 / 6400.0, "p_e = " + fmt(p_e) + " != 7/6400 exactly");
    const double p_c = photonic_excitation_probability(n3);
    expect(std::abs(p_c - 5.98033e-3) <= 1e-7, "p_c = " + fmt(p_c));
    const double t3 = gate_time(reduced_couplings(n3));
    const double f = fidelity_estimate(n3, p_e, p_c, t3);
    expect(f >= 0.940 && f <= 0.955, "fidelity estimate = " + fmt(f));
    return "p_e = 7/6400, p_c = " + fmt(p_c) + ", F = " + fmt(f);
  });

  criterion("6. designer recovery", [&] {
    const DesignResult r3 = equalize_couplings(make_design_problem(n3));
    expect(std::abs(r3.pairs[0].delta - 21.2842) <= 5e-4,
           "n3 delta = " + fmt(r3.pairs[0].delta));
    bool rejected_18 = false;
    for (const auto& rej : r3.pairs[0].rejected) {
      if (std::abs(rej.x - 18.0) < 1e-3 &&
          rej.reason.find("separation") != std::string::npos) {
        rejected_18 = true;
      }
    }
    expect(rejected_18, "degenerate root at 18 was not rejected by separation");

    const DesignResult r4 = equalize_couplings(make_design_problem(n4));
    expect(std::abs(r4.pairs[0].delta - 18.34) <= 5e-3,
           "n4 delta_3 = " + fmt(r4.pairs[0].delta));
    expect(std::abs(r4.pairs[1].delta - 21.7492) <= 5e-4,
           "n4 delta_4 = " + fmt(r4.pairs[1].delta));
    return "n3: " + fmt(r3.pairs[0].delta) + " (18 rejected); n4: " +
           fmt(r4.pairs[0].delta) + ", " + fmt(r4.pairs[1].delta);
  });

  // Criterion 7 shares one heavy simulation: all 8 basis states to the gate
  // time under the full Hamiltonian.
  GateDiagResult full_runs;
  bool full_runs_ok = false;

  criterion("7a. full propagation, norm drift", [&] {
    const double t3 = gate_time(reduced_couplings(n3));
    const PropagationSettings settings{1e-3, 200, 1e-8};
    full_runs = simulated_gate_diag(n3, t3, GateSource::full, settings, 0,
                                    kDefaultCapacity, true);
    full_runs_ok = true;
    double worst_norm = 0.0;
    for (const auto& traj : full_runs.trajectories) {
      for (const auto& s : traj.samples) {
        worst_norm = std::max(worst_norm, std::abs(s.norm - 1.0));
      }
    }
    expect(worst_norm < 1e-8, "norm drift " + fmt(worst_norm));
    return "8 states to t3, worst |norm - 1| = " + fmt(worst_norm);
  });

  criterion("7b. conditional phase at t3", [&] {
    expect(full_runs_ok, "no propagation data (7a failed)");
    const double cond = conditional_phase_from_runs(
        full_runs.raw_phases[6], full_runs.raw_phases[4],
        full_runs.raw_phases[2], full_runs.raw_phases[0]);
    const double dev = (cond - kPi) / kPi;
    expect(std::abs(cond - kPi) <= 0.1 * kPi,
           "phi_12 = " + fmt(cond) + " rad, " + fmt(100.0 * dev) +
               "% from pi, outside the 10% band: the third-order "
               "photon-Stark dressing suppresses this pair's conditional "
               "coupling by ~10.0%, right at the stated tolerance");
    return "phi_12 = " + fmt(cond) + " (" + fmt(100.0 * dev) + "% from pi)";
  });

  criterion("7c. short-run phases vs effective", [&] {
    const PropagationSettings settings{1e-3, 200, 1e-8};
    const GateDiagResult short_full =
        simulated_gate_diag(n3, 100.0, GateSource::full, settings);
    const GateDiagResult short_eff =
        simulated_gate_diag(n3, 100.0, GateSource::effective);
    double worst = 0.0;
    for (int s = 0; s < 8; ++s) {
      const double want = short_eff.raw_phases[s];
      const double got = short_full.raw_phases[s];
      if (want == 0.0) {
        expect(std::abs(got) < 1e-9, "dark state drifted");
      } else {
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
        expect(std::abs(got - want) <= 0.05 * std::abs(want),
               "phase of state " + std::to_string(s) + ": " + fmt(got) +
                   " vs " + fmt(want));
      }
    }
    return "t=100 phases within " + fmt(100.0 * worst) + "% of effective (5% allowed)";
  });

  criterion("8a. fourier unitarity", [&] {
    double worst = 0.0;
    for (int n : {2, 3, 4, 5, 8, 16}) {
      const Eigen::MatrixXcd f = fourier_mode_map(n);
      worst = std::max(worst, (f * f.adjoint() -
                               Eigen::MatrixXcd::Identity(n, n))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    expect(worst <= 1e-12, "unitarity defect " + fmt(worst));
    return "max |F F^dag - I| = " + fmt(worst);
  });

  criterion("8b. hamiltonian hermiticity", [&] {
    const SpaceDescriptor space = build_space(3, 1);
    const HamiltonianGenerator gen = build_full_hamiltonian(n3, space);
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 2564.55);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      worst = std::max(worst, hermiticity_error(gen.materialize(uni(rng))));
    }
    expect(worst <= 1e-12, "hermiticity defect " + fmt(worst));
    return "max |H - H^dag| over 100 samples = " + fmt(worst);
  });

  criterion("8c. excitation conservation", [&] {
    SystemConfig undriven = n3;
    undriven.rabi_ctrl = {0.0, 0.0};
    undriven.rabi_tgt = {0.0, 0.0};
    const SpaceDescriptor space = build_space(3, 1);
    const HamiltonianGenerator gen = build_full_hamiltonian(undriven, space);
    const SparseOp number = excitation_number_operator(space);
    double worst = 0.0;
    for (double t : {0.0, 1.7, 42.0, 777.0}) {
      const SparseOp h = gen.materialize(t);
      const SparseOp comm = SparseOp(number * h) - SparseOp(h * number);
      for (int col = 0; col < comm.outerSize(); ++col) {
        for (SparseOp::InnerIterator it(comm, col); it; ++it) {
          worst = std::max(worst, std::abs(it.value()));
        }
      }
    }
    expect(worst <= 1e-12, "commutator norm " + fmt(worst));
    return "max |[E, H(t)]| with drives off = " + fmt(worst);
  });

  criterion("8d. integrator convergence order", [&] {
    HamiltonianGenerator gen;
    gen.dim = 2;
    gen.static_part = SparseOp(2, 2);
    std::vector<Eigen::Triplet<Complex>> trip{{0, 0, 2.0}};
    gen.static_part.setFromTriplets(trip.begin(), trip.end());
    StateVector psi0 = StateVector::Zero(2);
    psi0[0] = 1.0;
    std::vector<double> errors;
    for (double dt : {0.16, 0.08, 0.04, 0.02}) {
      const PropagationResult res =
          propagate(psi0, gen, 10.0, {dt, 1, 1e-2});
      errors.push_back(std::abs(extract_phase(res.trajectory) - 20.0));
    }
    std::string detail = "ratios";
    for (std::size_t i = 1; i < errors.size(); ++i) {
      const double ratio = errors[i - 1] / errors[i];
      expect(ratio >= 13.0 && ratio <= 19.0,
             "halving ratio " + fmt(ratio) + " outside 16 +- 3");
      detail += " " + fmt(ratio);
    }
    return detail;
  });

  criterion("8e. scaling covariance", [&] {
    SystemConfig scaled = n3;
    scaled.hop *= 2.0;
    for (auto* seq : {&scaled.g_atom, &scaled.delta_cav, &scaled.rabi_ctrl,
                      &scaled.delta_ctrl, &scaled.rabi_tgt, &scaled.delta_tgt}) {
      for (auto& v : *seq) v *= 2.0;
    }
    const RamanCoefficients a = raman_coefficients(n3);
    const RamanCoefficients b = raman_coefficients(scaled);
    double worst = 0.0;
    auto rel = [&](double x, double y) {
      const double err =
          std::abs(y - 2.0 * x) / std::max(std::abs(2.0 * x), 1e-300);
      worst = std::max(worst, err);
    };
    for (int m = 0; m < 2; ++m) {
      rel(a.eta[m], b.eta[m]);
      rel(a.mu[m], b.mu[m]);
      for (int k = 0; k < 3; ++k) {
        rel(a.xi(m, k), b.xi(m, k));
        rel(a.zeta(m, k), b.zeta(m, k));
      }
    }
    for (int l = 0; l < 3; ++l) {
      for (int k = 0; k < 3; ++k) rel(a.chi(l, k), b.chi(l, k));
    }
    const SecondOrderCoefficients sa = second_order_coefficients(n3);
    const SecondOrderCoefficients sb = second_order_coefficients(scaled);
    for (int m = 0; m < 2; ++m) {
      for (int k = 0; k < 3; ++k) {
        rel(sa.theta(m, k), sb.theta(m, k));
        rel(sa.vartheta(m, k), sb.vartheta(m, k));
      }
    }
    for (const auto& [key, value] : sa.lambda_cross) {
      rel(std::abs(value), std::abs(sb.lambda_cross.at(key)));
    }
    for (const auto& [key, value] : sa.gamma_cross) {
      rel(std::abs(value), std::abs(sb.gamma_cross.at(key)));
    }
    const EffectiveCouplings ca = reduced_couplings(n3);
    const EffectiveCouplings cb = reduced_couplings(scaled);
    for (int i = 0; i < 2; ++i) {
      rel(ca.zeta_prime[i], cb.zeta_prime[i]);
      rel(ca.xi_prime[i], cb.xi_prime[i]);
      rel(ca.lambda_prime[i], cb.lambda_prime[i]);
    }
    expect(worst <= 1e-12, "covariance defect " + fmt(worst));
    return "max relative defect under s = 2: " + fmt(worst);
  });

  criterion("8f. effective gate fidelity", [&] {
    const GateReport report =
        score_gate(n3, GateSource::effective, kDefaultGHz);
    expect(std::abs(report.fidelity - 1.0) <= 1e-9,
           "fidelity = " + fmt(report.fidelity));
    return "fidelity = " + fmt(report.fidelity);
  });

  if (g_failures != 0) {
    std::printf("\n%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("\nall acceptance criteria passed\n");
  return 0;
}
