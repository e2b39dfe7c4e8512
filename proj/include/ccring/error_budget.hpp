#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccring/config.hpp"

namespace ccring {

// Exact rational on int64 with __int128 intermediates. Conversion from double
// succeeds only for values that are small dyadic rationals; arithmetic returns
// nullopt on overflow so callers can fall back to floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d);
  static std::optional<Rational> from_double(double x);
  std::optional<Rational> add(const Rational& o) const;
  std::optional<Rational> mul(const Rational& o) const;
  std::optional<Rational> div(const Rational& o) const;
  double to_double() const;
};

// Averaging weights of the excitation estimates: [prefactor, w_ctrl,
// w_2, ..., w_N]. The prefactor applies to the atomic estimate only.
std::vector<double> paper_n3_budget_weights();

// Probability that an atom is (virtually) promoted to the excited state,
// evaluated with exact rational weight algebra when the inputs allow it.
// Weights default to the N=3 values; any other N requires them explicitly.
double atomic_excitation_probability(const SystemConfig& cfg,
                                     std::span<const double> weights = {});

// Probability that a field mode is (virtually) excited.
double photonic_excitation_probability(const SystemConfig& cfg,
                                       std::span<const double> weights = {});

// F = 1 - (p_e gamma + p_c kappa) t.
double fidelity_estimate(const SystemConfig& cfg, double p_e, double p_c,
                         double t);

struct ErrorBudget {
  double p_e = 0.0;
  double p_c = 0.0;
  double gamma_e = 0.0;  // p_e * gamma
  double kappa_c = 0.0;  // p_c * kappa
  double fidelity_estimate = 0.0;
};

ErrorBudget error_budget(const SystemConfig& cfg, double t,
                         std::span<const double> weights = {});

}  // namespace ccring
