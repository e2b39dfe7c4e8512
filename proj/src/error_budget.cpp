#include "ccring/error_budget.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ccring/couplings.hpp"
#include "ccring/errors.hpp"
#include "ccring/numerics.hpp"

namespace ccring {

namespace {

using Int128 = __int128;

Int128 gcd128(Int128 a, Int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

constexpr std::int64_t kMaxComponent = std::int64_t{1} << 62;

std::optional<Rational> reduce128(Int128 num, Int128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMaxComponent || num < -kMaxComponent || den > kMaxComponent) {
    return std::nullopt;
  }
  return Rational{static_cast<std::int64_t>(num),
                  static_cast<std::int64_t>(den)};
}

}  // namespace

Rational Rational::make(std::int64_t n, std::int64_t d) {
  auto r = reduce128(n, d);
  if (!r) throw precondition_error("Rational: zero denominator");
  return *r;
}

std::optional<Rational> Rational::from_double(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == 0.0) return Rational{0, 1};
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  while (scaled % 2 == 0 && exp < 0) {
    scaled /= 2;
    ++exp;
  }
  if (exp >= 0) {
    if (exp > 9) return std::nullopt;  // keeps components comfortably small
    return reduce128(Int128{scaled} << exp, 1);
  }
  if (exp < -62) return std::nullopt;
  return reduce128(scaled, Int128{1} << -exp);
}

std::optional<Rational> Rational::add(const Rational& o) const {
  return reduce128(Int128{num} * o.den + Int128{o.num} * den,
                   Int128{den} * o.den);
}

std::optional<Rational> Rational::mul(const Rational& o) const {
  return reduce128(Int128{num} * o.num, Int128{den} * o.den);
}

std::optional<Rational> Rational::div(const Rational& o) const {
  if (o.num == 0) return std::nullopt;
  return reduce128(Int128{num} * o.den, Int128{den} * o.num);
}

double Rational::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<double> paper_n3_budget_weights() {
  return {1.0 / 8.0, 3.0 / 4.0, 13.0 / 8.0, 3.0 / 8.0};
}

namespace {

std::vector<double> resolve_weights(const SystemConfig& cfg,
                                    std::span<const double> weights) {
  const std::size_t want = static_cast<std::size_t>(cfg.n_sites) + 1;
  if (weights.empty()) {
    if (cfg.n_sites == 3) return paper_n3_budget_weights();
    throw precondition_error(
        "excitation weights are only known for N = 3; supply " +
        std::to_string(want) + " weights explicitly for N = " +
        std::to_string(cfg.n_sites));
  }
  if (weights.size() != want) {
    throw precondition_error("weight count mismatch: got " +
                             std::to_string(weights.size()) + ", need " +
                             std::to_string(want) +
                             " (prefactor, ctrl, one per target)");
  }
  return {weights.begin(), weights.end()};
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw precondition_error(std::string(name) +
                             " fell outside [0,1]; check weights");
  }
}

// Exact-rational evaluation; nullopt when any input is not a small rational.
std::optional<double> atomic_probability_exact(
    const SystemConfig& cfg, const std::vector<double>& w) {
  std::vector<Rational> wr(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto r = Rational::from_double(w[i]);
    if (!r) return std::nullopt;
    wr[i] = *r;
  }

  Rational ctrl_sq{0, 1};
  for (int m = 1; m <= cfg.n_sites - 1; ++m) {
    auto om = Rational::from_double(cfg.rabi_ctrl_m(m));
    if (!om) return std::nullopt;
    auto sq = om->mul(*om);
    if (!sq) return std::nullopt;
    auto acc = ctrl_sq.add(*sq);
    if (!acc) return std::nullopt;
    ctrl_sq = *acc;
  }
  auto dc1 = Rational::from_double(cfg.delta_cav_j(1));
  if (!dc1) return std::nullopt;
  auto dc1_sq = dc1->mul(*dc1);
  if (!dc1_sq) return std::nullopt;
  auto ctrl_ratio = ctrl_sq.div(*dc1_sq);
  if (!ctrl_ratio) return std::nullopt;
  auto sum = wr[1].mul(*ctrl_ratio);
  if (!sum) return std::nullopt;

  for (int n = 2; n <= cfg.n_sites; ++n) {
    auto om = Rational::from_double(cfg.rabi_tgt_n(n));
    auto dc = Rational::from_double(cfg.delta_cav_j(n));
    if (!om || !dc) return std::nullopt;
    auto om_sq = om->mul(*om);
    auto dc_sq = dc->mul(*dc);
    if (!om_sq || !dc_sq) return std::nullopt;
    auto ratio = om_sq->div(*dc_sq);
    if (!ratio) return std::nullopt;
    auto term = wr[n].mul(*ratio);
    if (!term) return std::nullopt;
    auto acc = sum->add(*term);
    if (!acc) return std::nullopt;
    sum = acc;
  }
  auto total = wr[0].mul(*sum);
  if (!total) return std::nullopt;
  return total->to_double();
}

double atomic_probability_double(const SystemConfig& cfg,
                                 const std::vector<double>& w) {
  double ctrl_sq = 0.0;
  for (int m = 1; m <= cfg.n_sites - 1; ++m) {
    ctrl_sq += cfg.rabi_ctrl_m(m) * cfg.rabi_ctrl_m(m);
  }
  double sum =
      w[1] * ctrl_sq / (cfg.delta_cav_j(1) * cfg.delta_cav_j(1));
  for (int n = 2; n <= cfg.n_sites; ++n) {
    sum += w[n] * cfg.rabi_tgt_n(n) * cfg.rabi_tgt_n(n) /
           (cfg.delta_cav_j(n) * cfg.delta_cav_j(n));
  }
  return w[0] * sum;
}

}  // namespace

double atomic_excitation_probability(const SystemConfig& cfg,
                                     std::span<const double> weights) {
  const std::vector<double> w = resolve_weights(cfg, weights);
  double p;
  if (auto exact = atomic_probability_exact(cfg, w)) {
    p = *exact;
  } else {
    p = atomic_probability_double(cfg, w);
  }
  check_probability(p, "p_e");
  return p;
}

double photonic_excitation_probability(const SystemConfig& cfg,
                                       std::span<const double> weights) {
  const std::vector<double> w = resolve_weights(cfg, weights);
  const int n_sites = cfg.n_sites;
  const auto omega = mode_frequencies(n_sites, cfg.hop).omega;
  const RamanCoefficients rc = raman_coefficients(cfg);

  KahanSum<double> ctrl_sum;
  for (int m = 1; m <= n_sites - 1; ++m) {
    for (int k = 1; k <= n_sites; ++k) {
      const double den =
          cfg.delta_cav_j(1) - omega[k - 1] - cfg.delta_ctrl_m(m);
      const double ratio = rc.xi(m - 1, k - 1) / den;
      ctrl_sum.add(ratio * ratio);
    }
  }
  double p = w[1] * ctrl_sum.value();
  for (int n = 2; n <= n_sites; ++n) {
    KahanSum<double> tgt_sum;
    for (int k = 1; k <= n_sites; ++k) {
      const double den =
          cfg.delta_cav_j(n) - omega[k - 1] - cfg.delta_tgt_n(n);
      const double ratio = rc.zeta(n - 2, k - 1) / den;
      tgt_sum.add(ratio * ratio);
    }
    p += w[n] * tgt_sum.value();
  }
  check_probability(p, "p_c");
  return p;
}

double fidelity_estimate(const SystemConfig& cfg, double p_e, double p_c,
                         double t) {
  if (!(t >= 0.0)) throw precondition_error("fidelity_estimate: t must be >= 0");
  return 1.0 - (p_e * cfg.gamma + p_c * cfg.kappa) * t;
}

ErrorBudget error_budget(const SystemConfig& cfg, double t,
                         std::span<const double> weights) {
  ErrorBudget budget;
  budget.p_e = atomic_excitation_probability(cfg, weights);
  budget.p_c = photonic_excitation_probability(cfg, weights);
  budget.gamma_e = budget.p_e * cfg.gamma;
  budget.kappa_c = budget.p_c * cfg.kappa;
  budget.fidelity_estimate = fidelity_estimate(cfg, budget.p_e, budget.p_c, t);
  return budget;
}

}  // namespace ccring
