#pragma once

#include <vector>

#include "ccring/hilbert.hpp"

namespace ccring {

// Fixed-step 4th-order integration of i dpsi/dt = H(t) psi. The step must
// resolve the fastest phase in the generator: dt <= 2 pi / (20 max_frequency).
struct PropagationSettings {
  double dt = 1e-3;        // step, units 1/g
  int sample_stride = 100; // record a sample every this many steps
  double norm_tol = 1e-8;  // abort when |norm - 1| exceeds this
};

struct TrajectorySample {
  double t = 0.0;
  Complex overlap;          // <psi(0)|psi(t)>
  double norm = 0.0;
  double excited_pop = 0.0; // sum of atomic |e> populations
  double photon_num = 0.0;  // total photon number expectation
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
};

struct PropagationResult {
  Trajectory trajectory;
  StateVector final_state;
};

// Populations are recorded only when `space` is given (the effective model has
// no excited or photonic sector to report).
PropagationResult propagate(const StateVector& initial,
                            const HamiltonianGenerator& gen, double t_final,
                            const PropagationSettings& settings,
                            const SpaceDescriptor* space = nullptr);

// Accumulated phase phi with <psi(0)|psi(t)> = |o| exp(-i phi), unwrapped
// across samples; a diagonal energy E yields phi = E t.
double extract_phase(const Trajectory& traj);

}  // namespace ccring
