#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "leaguerank/model.hpp"
#include "leaguerank/rng.hpp"

using namespace leaguerank;

TEST_SUITE("model") {
  TEST_CASE("equal fitness without home advantage is a fair coin") {
    CHECK(win_probability(0.5, 0.5, 0.0, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(win_probability(0.123, 0.123, 0.0, 1.7) == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("frozen logistic values") {
    // z = (f_home - f_away + H) / delta = 2
    CHECK(win_probability(0.875, 0.375, 0.0, 0.25) ==
          doctest::Approx(0.8807970779778823).epsilon(1e-14));
    // z = 0.32: pure home advantage
    CHECK(win_probability(0.5, 0.5, 0.08, 0.25) ==
          doctest::Approx(0.5793242521487495).epsilon(1e-14));
    // z = 2.32: strength and home advantage combine
    CHECK(win_probability(0.75, 0.25, 0.08, 0.25) ==
          doctest::Approx(0.9105199406664386).epsilon(1e-14));
  }

  TEST_CASE("huge delta flattens every game toward a coin flip") {
    CHECK(win_probability(0.875, 0.125, 0.0, 1e9) ==
          doctest::Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("tiny delta saturates without overflowing") {
    const double p = win_probability(0.875, 0.125, 0.0, 1e-300);
    CHECK(p == 1.0);
    const double q = win_probability(0.125, 0.875, 0.0, 1e-300);
    CHECK(q == 0.0);
    CHECK(std::isfinite(p));
    CHECK(std::isfinite(q));
  }

  TEST_CASE("swapping sides with negated home advantage is complementary") {
    std::mt19937_64 rng = make_engine(11);
    for (int trial = 0; trial < 200; ++trial) {
      const double fh = uniform01(rng);
      const double fa = uniform01(rng);
      const double h = uniform01(rng) - 0.5;
      const double delta = 0.01 + uniform01(rng);
      const double p = win_probability(fh, fa, h, delta);
      const double q = win_probability(fa, fh, -h, delta);
      CHECK(p + q == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("probability depends only on differences and ratios") {
    std::mt19937_64 rng = make_engine(12);
    for (int trial = 0; trial < 200; ++trial) {
      const double fh = uniform01(rng);
      const double fa = uniform01(rng);
      const double h = uniform01(rng) - 0.5;
      const double delta = 0.01 + uniform01(rng);
      const double shift = 3.0 * (uniform01(rng) - 0.5);
      const double scale = 0.1 + 3.0 * uniform01(rng);
      const double p = win_probability(fh, fa, h, delta);
      CHECK(win_probability(fh + shift, fa + shift, h, delta) ==
            doctest::Approx(p).epsilon(1e-13));
      CHECK(win_probability(scale * fh, scale * fa, scale * h,
                            scale * delta) == doctest::Approx(p).epsilon(1e-13));
    }
  }

  TEST_CASE("exponential-ratio route agrees with the logistic route") {
    std::mt19937_64 rng = make_engine(13);
    for (int trial = 0; trial < 500; ++trial) {
      const double fh = uniform01(rng);
      const double fa = uniform01(rng);
      const double delta = 0.01 + 2.0 * uniform01(rng);
      CHECK(bradley_terry_probability(fh, fa, delta) ==
            doctest::Approx(win_probability(fh, fa, 0.0, delta))
                .epsilon(1e-14));
    }
  }

  TEST_CASE("bad parameters are rejected") {
    CHECK_THROWS_AS(win_probability(0.5, 0.5, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(win_probability(0.5, 0.5, 0.0, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(win_probability(std::nan(""), 0.5, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(bradley_terry_probability(0.5, 0.5, 0.0),
                    std::invalid_argument);
  }

  TEST_CASE("league config validation") {
    LeagueConfig ok;
    CHECK_NOTHROW(validate(ok));

    LeagueConfig bad = ok;
    bad.n_teams = 1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.delta = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.frac_played = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.frac_played = 1.5;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.shape_alpha = -2.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.shape_beta = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.shape_beta = 1.2;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.home_adv = std::nan("");
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  }
}
