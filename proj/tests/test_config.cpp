#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ccring/config.hpp"
#include "ccring/scenario.hpp"

using namespace ccring;

TEST_CASE("paper n3 config validates clean") {
  const ValidationResult r = validate_config(paper_n3_config());
  CHECK(r.ok());
}

TEST_CASE("n_sites below 2 is a violation") {
  SystemConfig cfg = paper_n3_config();
  cfg.n_sites = 1;
  const ValidationResult r = validate_config(cfg);
  CHECK_FALSE(r.ok());
  const bool found = std::any_of(
      r.violations.begin(), r.violations.end(),
      [](const std::string& v) { return v.find("n_sites") != std::string::npos; });
  CHECK(found);
}

TEST_CASE("sequence length mismatch is reported with the field name") {
  SystemConfig cfg = paper_n3_config();
  cfg.rabi_ctrl = {1.0, 1.0, 1.0};  // length 3 with N = 3
  const ValidationResult r = validate_config(cfg);
  REQUIRE_FALSE(r.ok());
  const bool found = std::any_of(
      r.violations.begin(), r.violations.end(), [](const std::string& v) {
        return v.find("rabi_ctrl") != std::string::npos &&
               v.find("N-1") != std::string::npos;
      });
  CHECK(found);
}

TEST_CASE("negative rabi and zero detuning are violations") {
  SystemConfig cfg = paper_n3_config();
  cfg.rabi_tgt[0] = -1.0;
  cfg.delta_ctrl[1] = 0.0;
  const ValidationResult r = validate_config(cfg);
  CHECK(r.violations.size() == 2);
}

TEST_CASE("paper n3 resonant pairs sit exactly at zero") {
  const ResonanceReport rep = resonance_pairing(paper_n3_config());
  REQUIRE(rep.pair_residuals.size() == 2);
  CHECK(rep.pair_residuals.at({1, 2}) == 0.0);
  CHECK(rep.pair_residuals.at({2, 3}) == 0.0);
}

TEST_CASE("residual follows the combination sign") {
  // Raising the pair's control-side detuning by 0.1 raises the residual by 0.1;
  // raising the target-side detuning lowers it.
  SystemConfig cfg = paper_n3_config();
  cfg.delta_ctrl[1] = 21.3842;
  CHECK(resonance_pairing(cfg).pair_residuals.at({2, 3}) ==
        doctest::Approx(0.1).epsilon(1e-12));
  cfg = paper_n3_config();
  cfg.delta_tgt[1] = 21.3842;
  CHECK(resonance_pairing(cfg).pair_residuals.at({2, 3}) ==
        doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("cross separation of the paper n3 off pair") {
  const ResonanceReport rep = resonance_pairing(paper_n3_config());
  // |20 - 20 - 21.2842 + 18| for (m=1, n=3)
  CHECK(rep.cross_separations.at({1, 3}) ==
        doctest::Approx(3.2842).epsilon(1e-12));
  CHECK(rep.cross_separations.at({2, 2}) ==
        doctest::Approx(3.2842).epsilon(1e-12));
}

TEST_CASE("report keys cover exactly the declared index sets") {
  const SystemConfig cfg = paper_n4_config();
  const ResonanceReport rep = resonance_pairing(cfg);
  CHECK(rep.pair_residuals.size() == 3);    // n = 2..4
  CHECK(rep.cross_separations.size() == 6); // 3x3 minus the resonant diagonal
  CHECK(rep.target_separations.size() == 6);
  for (const auto& [key, sep] : rep.cross_separations) {
    CHECK(key.first != key.second - 1);
    CHECK(sep >= 0.0);
  }
  for (const auto& [key, sep] : rep.target_separations) {
    CHECK(key.first != key.second);
    CHECK(sep >= 0.0);
  }
}

TEST_CASE("equal detunings on resonance give all-zero residuals") {
  SystemConfig cfg = paper_n4_config();
  // any pairing with Delta_1^(m) = Delta_{m+1} and equal cavity detunings
  cfg.delta_ctrl = {17.0, 19.5, 23.0};
  cfg.delta_tgt = {17.0, 19.5, 23.0};
  for (const auto& [key, residual] : resonance_pairing(cfg).pair_residuals) {
    CHECK(residual == 0.0);
  }
}

TEST_CASE("swapping two target atoms permutes the report consistently") {
  const SystemConfig cfg = paper_n3_config();
  SystemConfig swapped = cfg;
  std::swap(swapped.rabi_tgt[0], swapped.rabi_tgt[1]);
  std::swap(swapped.delta_tgt[0], swapped.delta_tgt[1]);
  const ResonanceReport a = resonance_pairing(cfg);
  const ResonanceReport b = resonance_pairing(swapped);
  // target pair (2,3) of the original appears as (3,2) of the swapped config
  CHECK(a.target_separations.at({2, 3}) == b.target_separations.at({3, 2}));
  // the combination (m=1, n=3) lands on the slot (m=1, n=2), which the fixed
  // index classification now files under pair_residuals
  CHECK(a.cross_separations.at({1, 3}) ==
        std::abs(b.pair_residuals.at({1, 2})));
  CHECK(a.cross_separations.at({2, 2}) ==
        std::abs(b.pair_residuals.at({2, 3})));
}
