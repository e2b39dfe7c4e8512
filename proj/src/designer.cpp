#include "ccring/designer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "ccring/errors.hpp"
#include "ccring/numerics.hpp"

namespace ccring {

namespace {

SystemConfig with_pair(const SystemConfig& cfg, int j, double x) {
  SystemConfig out = cfg;
  out.delta_ctrl[j - 2] = x;  // Delta_1^(j-1)
  out.delta_tgt[j - 2] = x;   // Delta_j
  return out;
}

// Trial detunings must stay clear of the dispersive poles and of zero.
bool scan_point_admissible(const SystemConfig& cfg,
                           const std::vector<double>& omega, int j, double x) {
  constexpr double kGuard = 1e-6;
  if (std::abs(x) < kGuard) return false;
  for (double w : omega) {
    if (std::abs(cfg.delta_cav_j(1) - w - x) < kGuard) return false;
    if (std::abs(cfg.delta_cav_j(j) - w - x) < kGuard) return false;
  }
  return true;
}

struct FixedPair {
  int j;         // 2 for the anchor, then solved js
  double value;  // shared detuning of the resonant pair
};

// Smallest off-resonance combination the trial pair j = x forms with the
// already-fixed pairs, plus its plain distance to the cavity detunings.
double min_separation_achieved(const SystemConfig& cfg, int j, double x,
                               const std::vector<FixedPair>& fixed) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& other : fixed) {
    const int p = other.j;
    const double v = other.value;
    // cross combination with m = j-1, n = p and with m = p-1, n = j
    best = std::min(best, std::abs(cfg.delta_cav_j(p) - cfg.delta_cav_j(1) -
                                   v + x));
    best = std::min(best, std::abs(cfg.delta_cav_j(j) - cfg.delta_cav_j(1) -
                                   x + v));
    // target-target combination between pairs p and j
    best = std::min(best, std::abs(cfg.delta_cav_j(p) - cfg.delta_cav_j(j) -
                                   v + x));
  }
  for (double dc : cfg.delta_cav) best = std::min(best, std::abs(x - dc));
  return best;
}

}  // namespace

DesignProblem make_design_problem(const SystemConfig& base) {
  const ValidationResult vr = validate_config(base);
  if (!vr.ok()) {
    std::ostringstream msg;
    msg << "make_design_problem: invalid base config:";
    for (const auto& v : vr.violations) msg << " [" << v << "]";
    throw precondition_error(msg.str());
  }
  DesignProblem p;
  p.base = base;
  const double anchor = base.delta_ctrl_m(1);
  p.bracket_lo = anchor - 8.0;
  p.bracket_hi = anchor + 8.0;
  return p;
}

double coupling_mismatch(const DesignProblem& problem, int j, double x) {
  if (j < 3 || j > problem.base.n_sites) {
    throw precondition_error("coupling_mismatch: j must be in 3..N");
  }
  const double anchor = lambda_prime_pair(problem.base, 2);
  return lambda_prime_pair(with_pair(problem.base, j, x), j) - anchor;
}

DesignResult equalize_couplings(const DesignProblem& problem) {
  const SystemConfig& base = problem.base;
  const int n_sites = base.n_sites;
  if (!(problem.bracket_lo < problem.bracket_hi)) {
    throw precondition_error("equalize_couplings: empty bracket");
  }

  const auto omega = mode_frequencies(n_sites, base.hop).omega;
  const double anchor_lambda = lambda_prime_pair(base, 2);

  DesignResult result;
  result.solved_config = base;
  std::vector<FixedPair> fixed{{2, base.delta_ctrl_m(1)}};

  for (int j = 3; j <= n_sites; ++j) {
    auto mismatch = [&](double x) {
      return lambda_prime_pair(with_pair(result.solved_config, j, x), j) -
             anchor_lambda;
    };
    auto mismatch_guarded = [&](double x) -> double {
      try {
        return mismatch(x);
      } catch (const singular_parameter_error&) {
        return mismatch(x + problem.bisect_tol * 1e-2);
      }
    };

    // Grid scan for sign changes, ascending x.
    std::vector<std::pair<double, double>> intervals;
    std::vector<double> exact_hits;
    const auto n_points = static_cast<std::int64_t>(
        std::floor((problem.bracket_hi - problem.bracket_lo) /
                   problem.grid_step) +
        1e-9);
    std::optional<std::pair<double, double>> prev;
    for (std::int64_t i = 0; i <= n_points; ++i) {
      const double x = problem.bracket_lo + i * problem.grid_step;
      if (!scan_point_admissible(result.solved_config, omega, j, x)) {
        prev.reset();
        continue;
      }
      const double f = mismatch(x);
      if (f == 0.0) {
        exact_hits.push_back(x);
        prev.reset();
        continue;
      }
      if (prev && std::signbit(f) != std::signbit(prev->second)) {
        intervals.emplace_back(prev->first, x);
      }
      prev = {x, f};
    }

    // Refine each sign change by bisection.
    std::vector<double> candidates = exact_hits;
    for (auto [a, b] : intervals) {
      double fa = mismatch_guarded(a);
      while (b - a > problem.bisect_tol) {
        const double mid = 0.5 * (a + b);
        const double fm = mismatch_guarded(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      candidates.push_back(0.5 * (a + b));
    }

    SolvedPair solved;
    solved.j = j;
    double best_metric = -1.0;
    bool found = false;
    for (double root : candidates) {
      const double residual = mismatch_guarded(root);
      if (std::abs(residual) > problem.root_residual_tol) {
        solved.rejected.push_back(
            {root, "residual " + std::to_string(residual) +
                       " above tolerance (pole crossing)"});
        continue;
      }
      const double sep =
          min_separation_achieved(result.solved_config, j, root, fixed);
      if (sep < problem.min_separation) {
        solved.rejected.push_back(
            {root, "separation " + std::to_string(sep) +
                       " below min_separation " +
                       std::to_string(problem.min_separation)});
        continue;
      }
      if (sep > best_metric) {
        best_metric = sep;
        solved.delta = root;
        solved.mismatch_residual = residual;
        solved.min_separation_achieved = sep;
        found = true;
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "equalize_couplings: no admissible root for pair j = " << j
          << " in [" << problem.bracket_lo << ", " << problem.bracket_hi
          << "]";
      if (solved.rejected.empty()) {
        msg << " (no sign change found)";
      } else {
        msg << "; rejected:";
        for (const auto& r : solved.rejected) {
          msg << " x=" << r.x << " (" << r.reason << ")";
        }
      }
      throw design_infeasible_error(msg.str());
    }

    result.solved_config = with_pair(result.solved_config, j, solved.delta);
    fixed.push_back({j, solved.delta});
    result.pairs.push_back(std::move(solved));
  }

  result.conditions =
      condition_ratios(result.solved_config, problem.thresholds);
  if (!result.conditions.passed) {
    throw design_infeasible_error(
        "equalize_couplings: solved detunings fail the validity conditions");
  }
  return result;
}

}  // namespace ccring
