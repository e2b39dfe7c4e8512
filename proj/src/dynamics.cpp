#include "ccring/dynamics.hpp"

#include <cmath>
#include <string>

#include "ccring/errors.hpp"
#include "ccring/numerics.hpp"

namespace ccring {

namespace {

TrajectorySample make_sample(double t, const StateVector& psi0,
                             const StateVector& psi,
                             const Eigen::VectorXd* excited_w,
                             const Eigen::VectorXd* photon_w) {
  TrajectorySample s;
  s.t = t;
  s.overlap = psi0.dot(psi);
  s.norm = psi.norm();
  if (excited_w != nullptr) {
    const Eigen::VectorXd prob = psi.cwiseAbs2();
    s.excited_pop = excited_w->dot(prob);
    s.photon_num = photon_w->dot(prob);
  }
  return s;
}

}  // namespace

PropagationResult propagate(const StateVector& initial,
                            const HamiltonianGenerator& gen, double t_final,
                            const PropagationSettings& settings,
                            const SpaceDescriptor* space) {
  if (!(t_final >= 0.0)) {
    throw settings_error("propagate: t_final must be >= 0");
  }
  if (!(settings.dt > 0.0) || settings.sample_stride < 1) {
    throw settings_error("propagate: dt must be > 0 and sample_stride >= 1");
  }
  if (gen.max_frequency > 0.0) {
    const double dt_max = kTwoPi / (20.0 * gen.max_frequency);
    if (settings.dt > dt_max * (1.0 + 1e-12)) {
      throw settings_error("propagate: dt = " + std::to_string(settings.dt) +
                           " exceeds sampling bound " + std::to_string(dt_max));
    }
  }
  if (std::abs(initial.norm() - 1.0) > 1e-8) {
    throw precondition_error("propagate: initial state is not normalized");
  }

  Eigen::VectorXd excited_w, photon_w;
  const Eigen::VectorXd* ew = nullptr;
  const Eigen::VectorXd* pw = nullptr;
  if (space != nullptr) {
    excited_w = excited_population_weights(*space);
    photon_w = photon_number_weights(*space);
    ew = &excited_w;
    pw = &photon_w;
  }

  const auto n_steps =
      t_final == 0.0
          ? std::int64_t{0}
          : static_cast<std::int64_t>(std::ceil(t_final / settings.dt - 1e-9));
  const double h = n_steps == 0 ? 0.0 : t_final / static_cast<double>(n_steps);

  PropagationResult result;
  StateVector psi = initial;
  result.trajectory.samples.push_back(
      make_sample(0.0, initial, psi, ew, pw));

  const Complex minus_i(0.0, -1.0);
  StateVector k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size());
  StateVector scratch(psi.size()), stage(psi.size());

  for (std::int64_t step = 0; step < n_steps; ++step) {
    const double t = h * static_cast<double>(step);

    gen.apply(t, psi, scratch);
    k1 = minus_i * scratch;
    stage = psi + (0.5 * h) * k1;
    gen.apply(t + 0.5 * h, stage, scratch);
    k2 = minus_i * scratch;
    stage = psi + (0.5 * h) * k2;
    gen.apply(t + 0.5 * h, stage, scratch);
    k3 = minus_i * scratch;
    stage = psi + h * k3;
    gen.apply(t + h, stage, scratch);
    k4 = minus_i * scratch;
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const bool at_end = step + 1 == n_steps;
    if ((step + 1) % settings.sample_stride == 0 || at_end) {
      const double t_now = at_end ? t_final : h * static_cast<double>(step + 1);
      TrajectorySample sample = make_sample(t_now, initial, psi, ew, pw);
      if (std::abs(sample.norm - 1.0) > settings.norm_tol) {
        throw norm_drift_error(
            "propagate: norm drift " + std::to_string(sample.norm - 1.0) +
            " at step " + std::to_string(step + 1) + " (t = " +
            std::to_string(t_now) + ")");
      }
      result.trajectory.samples.push_back(std::move(sample));
    }
  }

  result.final_state = std::move(psi);
  return result;
}

double extract_phase(const Trajectory& traj) {
  if (traj.samples.empty()) {
    throw sampling_error("extract_phase: empty trajectory");
  }
  // Margin against the +-pi ambiguity of the wrapped difference.
  constexpr double kJumpLimit = kPi * (1.0 - 1e-9);
  double phase = -std::arg(traj.samples.front().overlap);
  double prev_raw = phase;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const double raw = -std::arg(traj.samples[i].overlap);
    const double delta = wrap_angle(raw - prev_raw);
    if (std::abs(delta) >= kJumpLimit) {
      throw sampling_error(
          "extract_phase: phase jump of " + std::to_string(delta) +
          " rad between samples at t = " + std::to_string(traj.samples[i].t) +
          "; sample more densely");
    }
    phase += delta;
    prev_raw = raw;
  }
  return phase;
}

}  // namespace ccring
