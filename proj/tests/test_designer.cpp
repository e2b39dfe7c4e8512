#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ccring/designer.hpp"
#include "ccring/errors.hpp"
#include "ccring/scenario.hpp"

using namespace ccring;

TEST_CASE("mismatch vanishes at the paper detunings") {
  const DesignProblem n3 = make_design_problem(paper_n3_config());
  CHECK(std::abs(coupling_mismatch(n3, 3, 21.2842)) < 1e-7);
  // the same cosine multiset makes 18 an exact degenerate root
  CHECK(std::abs(coupling_mismatch(n3, 3, 18.0)) < 1e-12);

  const DesignProblem n4 = make_design_problem(paper_n4_config());
  CHECK(std::abs(coupling_mismatch(n4, 3, 18.34)) < 2e-6);
  CHECK(std::abs(coupling_mismatch(n4, 4, 21.7492)) < 1e-7);
}

TEST_CASE("mismatch carries a sign change through the paper root") {
  const DesignProblem n3 = make_design_problem(paper_n3_config());
  CHECK(coupling_mismatch(n3, 3, 21.25) > 0.0);
  CHECK(coupling_mismatch(n3, 3, 21.32) < 0.0);
}

TEST_CASE("singular trial detunings are reported") {
  const DesignProblem n3 = make_design_problem(paper_n3_config());
  // 20 - omega_3 - 19 = 0
  CHECK_THROWS_AS(coupling_mismatch(n3, 3, 19.0), singular_parameter_error);
}

TEST_CASE("n3 design recovers the paper pair and rejects the degenerate root") {
  const DesignProblem problem = make_design_problem(paper_n3_config());
  const DesignResult result = equalize_couplings(problem);
  REQUIRE(result.pairs.size() == 1);
  const SolvedPair& pair = result.pairs[0];
  CHECK(pair.j == 3);
  CHECK(std::abs(pair.delta - 21.2842) < 5e-4);
  CHECK(std::abs(pair.mismatch_residual) < 1e-7);
  CHECK(pair.min_separation_achieved > 1.0);

  bool rejected_18 = false;
  for (const auto& r : pair.rejected) {
    if (std::abs(r.x - 18.0) < 1e-3 &&
        r.reason.find("separation") != std::string::npos) {
      rejected_18 = true;
    }
  }
  CHECK(rejected_18);
  CHECK(result.conditions.passed);

  // solved config carries the pair on both sides of the resonance
  CHECK(result.solved_config.delta_ctrl[1] == pair.delta);
  CHECK(result.solved_config.delta_tgt[1] == pair.delta);
}

TEST_CASE("n4 design recovers both remaining pairs") {
  const DesignProblem problem = make_design_problem(paper_n4_config());
  const DesignResult result = equalize_couplings(problem);
  REQUIRE(result.pairs.size() == 2);
  CHECK(std::abs(result.pairs[0].delta - 18.34) < 5e-3);
  CHECK(std::abs(result.pairs[1].delta - 21.7492) < 5e-4);
  CHECK(result.conditions.passed);

  // post-solve couplings are equalized well below the designer's own spread
  const EffectiveCouplings coup = reduced_couplings(result.solved_config);
  double lo = coup.lambda_prime[0], hi = coup.lambda_prime[0];
  for (double v : coup.lambda_prime) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK((hi - lo) / hi < 1e-5);
}

TEST_CASE("designer is deterministic bit for bit") {
  const DesignProblem problem = make_design_problem(paper_n4_config());
  const DesignResult a = equalize_couplings(problem);
  const DesignResult b = equalize_couplings(problem);
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    CHECK(a.pairs[i].delta == b.pairs[i].delta);
    CHECK(a.pairs[i].mismatch_residual == b.pairs[i].mismatch_residual);
  }
}

TEST_CASE("a bracket without roots is infeasible") {
  DesignProblem problem = make_design_problem(paper_n3_config());
  problem.bracket_lo = 30.0;
  problem.bracket_hi = 35.0;
  CHECK_THROWS_AS(equalize_couplings(problem), design_infeasible_error);
}

TEST_CASE("invalid base configs are rejected up front") {
  SystemConfig bad = paper_n3_config();
  bad.rabi_tgt[0] = -2.0;
  CHECK_THROWS_AS(make_design_problem(bad), precondition_error);
}

TEST_CASE("coupling_mismatch guards its pair index") {
  const DesignProblem problem = make_design_problem(paper_n3_config());
  CHECK_THROWS_AS(coupling_mismatch(problem, 2, 20.0), precondition_error);
  CHECK_THROWS_AS(coupling_mismatch(problem, 4, 20.0), precondition_error);
}
