#pragma once

#include <stdexcept>
#include <string>

namespace ccring {

// Base class for everything this library throws on its own behalf.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A coefficient denominator is (numerically) zero; message names the index.
class singular_parameter_error : public error {
 public:
  using error::error;
};

// Requested state space exceeds the configured dimension cap.
class capacity_error : public error {
 public:
  using error::error;
};

// An operation's precondition does not hold for the given inputs.
class precondition_error : public error {
 public:
  using error::error;
};

// Integrator settings violate the sampling contract.
class settings_error : public error {
 public:
  using error::error;
};

// State norm drifted beyond tolerance during propagation.
class norm_drift_error : public error {
 public:
  using error::error;
};

// Phase samples are too far apart to unwrap unambiguously.
class sampling_error : public error {
 public:
  using error::error;
};

// Couplings are not equalized; the gate cannot complete simultaneously.
class design_error : public error {
 public:
  using error::error;
};

// The root search found no admissible detuning in the bracket.
class design_infeasible_error : public error {
 public:
  using error::error;
};

}  // namespace ccring
