#pragma once

#include <string>
#include <vector>

#include "ccring/config.hpp"
#include "ccring/couplings.hpp"

namespace ccring {

// Root-finding problem: given the shared ring parameters and the anchor pair
// (Delta_1^(1), Delta_2), choose each remaining resonant pair
// Delta_1^(j-1) = Delta_j = x so that every Lambda'_{1,j} matches the anchor's
// Lambda'_{1,2}, while staying min_separation away from every other detuning.
struct DesignProblem {
  SystemConfig base;  // anchor pair set; pair entries for j >= 3 are ignored
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double min_separation = 0.1;     // units g
  double grid_step = 0.01;         // scan resolution
  double bisect_tol = 1e-6;        // root refinement in x
  double root_residual_tol = 1e-7; // rejects pole crossings masquerading as roots
  ConditionThresholds thresholds;
};

// Brackets default to anchor +- 8.
DesignProblem make_design_problem(const SystemConfig& base);

// Lambda'_{1,j}(x) - Lambda'_{1,2}(anchor), with pair j forced on resonance at
// trial detuning x.
double coupling_mismatch(const DesignProblem& problem, int j, double x);

struct RejectedRoot {
  double x = 0.0;
  std::string reason;
};

struct SolvedPair {
  int j = 0;
  double delta = 0.0;
  double mismatch_residual = 0.0;
  double min_separation_achieved = 0.0;
  std::vector<RejectedRoot> rejected;
};

struct DesignResult {
  std::vector<SolvedPair> pairs;  // j = 3..N in order
  SystemConfig solved_config;
  ConditionReport conditions;
};

// Scans each unknown's bracket for sign changes, refines by bisection,
// discards roots too close to existing detunings, and keeps the surviving
// root with the largest minimum separation. Deterministic by construction.
DesignResult equalize_couplings(const DesignProblem& problem);

}  // namespace ccring
