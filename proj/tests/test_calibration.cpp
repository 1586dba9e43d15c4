#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "leaguerank/calibration.hpp"
#include "leaguerank/metrics.hpp"
#include "leaguerank/model.hpp"
#include "leaguerank/rankers.hpp"
#include "leaguerank/rng.hpp"
#include "leaguerank/synth.hpp"

namespace lr = leaguerank;

namespace {

lr::ResultSet make_results(int n_teams,
                           std::vector<lr::GameRecord> games) {
  lr::ResultSet rs;
  rs.n_teams = n_teams;
  rs.games = std::move(games);
  return rs;
}

// One season with a solid signal: strong fitness spread, mild home advantage,
// every pair playing once. Used by the recovery-style tests below.
lr::SeasonSample recovery_sample() {
  lr::LeagueConfig cfg;
  cfg.n_teams = 30;
  cfg.delta = 0.25;
  cfg.home_adv = 0.08;
  cfg.frac_played = 1.0;
  cfg.seed = 20260814;
  return lr::simulate_season(cfg);
}

}  // namespace

TEST_SUITE("calibration") {

TEST_CASE("log likelihood matches hand-computed probabilities") {
  // fitness difference log(7/3) with delta 1 gives a home-win probability of
  // exactly 0.7, so the likelihood bypasses the model code under test.
  lr::FitnessVector f{{0.0, std::log(7.0 / 3.0)}};
  const auto win = make_results(2, {{1, 0, true, 0}});
  CHECK(lr::log_likelihood(win, f, 0.0, 1.0) ==
        doctest::Approx(-0.35667494393873245).epsilon(1e-13));

  const auto win_and_loss =
      make_results(2, {{1, 0, true, 0}, {1, 0, false, 1}});
  CHECK(lr::log_likelihood(win_and_loss, f, 0.0, 1.0) ==
        doctest::Approx(std::log(0.7) + std::log(0.3)).epsilon(1e-13));
}

TEST_CASE("log likelihood clamps vanishing probabilities") {
  lr::FitnessVector f{{0.0, 80.0}};
  // Home side is a near-certain winner; the losing game's probability
  // underflows past the clamp at 1e-15.
  const auto upset = make_results(2, {{1, 0, false, 0}});
  CHECK(lr::log_likelihood(upset, f, 0.0, 1.0) ==
        doctest::Approx(std::log(1e-15)).epsilon(1e-13));
  const auto expected = make_results(2, {{1, 0, true, 0}});
  CHECK(lr::log_likelihood(expected, f, 0.0, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("log likelihood is empty-safe and flat for huge delta") {
  CHECK(lr::log_likelihood(make_results(3, {}), lr::FitnessVector{{0.2, 0.5, 0.9}},
                           0.1, 0.3) == 0.0);

  lr::LeagueConfig cfg;
  cfg.n_teams = 6;
  cfg.seed = 5;
  const auto sample = lr::simulate_season(cfg);
  const double ll =
      lr::log_likelihood(sample.results, sample.fitness, 0.0, 1e12);
  CHECK(ll == doctest::Approx(static_cast<double>(sample.results.games.size()) *
                              std::log(0.5))
                  .epsilon(1e-10));
}

TEST_CASE("log likelihood is invariant under the model's gauge freedom") {
  lr::LeagueConfig cfg;
  cfg.n_teams = 8;
  cfg.delta = 0.3;
  cfg.home_adv = 0.12;
  cfg.seed = 42;
  const auto sample = lr::simulate_season(cfg);

  const double base =
      lr::log_likelihood(sample.results, sample.fitness, 0.12, 0.3);

  // Shifting every fitness by a constant leaves all differences unchanged.
  lr::FitnessVector shifted = sample.fitness;
  for (double& v : shifted.values) v -= 0.35;
  CHECK(lr::log_likelihood(sample.results, shifted, 0.12, 0.3) ==
        doctest::Approx(base).epsilon(1e-12));

  // Scaling the spread together with home advantage and delta is a pure
  // reparameterization.
  const double s = 2.7;
  lr::FitnessVector scaled = sample.fitness;
  for (double& v : scaled.values) v = 0.5 + s * (v - 0.5);
  CHECK(lr::log_likelihood(sample.results, scaled, s * 0.12, s * 0.3) ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("dw samples project games onto win-ratio differences") {
  const auto rs = make_results(
      3, {{0, 1, true, 0}, {1, 2, false, 1}, {0, 2, true, 2}});
  // Win ratios: team 0 -> 1.0 (2-0), team 1 -> 0.0 (0-2), team 2 -> 0.5 (1-1).
  const auto samples = lr::dw_samples(rs);
  REQUIRE(samples.size() == 3);
  CHECK(samples[0].dw == doctest::Approx(1.0));
  CHECK(samples[0].home_won);
  CHECK(samples[1].dw == doctest::Approx(-0.5));
  CHECK_FALSE(samples[1].home_won);
  CHECK(samples[2].dw == doctest::Approx(0.5));
  CHECK(samples[2].home_won);
}

TEST_CASE("simplified fit rejects degenerate inputs") {
  CHECK_THROWS_AS((void)lr::fit_simplified(make_results(2, {{0, 1, true, 0}})),
                  std::invalid_argument);
  // Both teams end 1-1, so every game pairs equal win ratios and the scale
  // parameter has nothing to bite on.
  CHECK_THROWS_AS((void)lr::fit_simplified(
                      make_results(2, {{0, 1, true, 0}, {0, 1, false, 1}})),
                  std::invalid_argument);
}

TEST_CASE("simplified fit finds zero home advantage on mirrored data") {
  lr::LeagueConfig cfg;
  cfg.n_teams = 20;
  cfg.delta = 0.25;
  cfg.home_adv = 0.3;
  cfg.seed = 77;
  const auto sample = lr::simulate_season(cfg);

  // Append every game with the venues swapped and the outcome flag flipped
  // (same winner, opposite ground). The likelihood becomes an even function
  // of the home parameter, so its maximum sits at exactly zero.
  lr::ResultSet mirrored = sample.results;
  int order = static_cast<int>(mirrored.games.size());
  for (const lr::GameRecord& g : sample.results.games) {
    mirrored.games.push_back({g.away, g.home, !g.home_won, order++});
  }

  const auto fit = lr::fit_simplified(mirrored);
  CHECK(std::abs(fit.home_hat) < 1e-3);
  CHECK(fit.delta_hat > 0.0);
  CHECK(fit.model == "simplified");
  CHECK(fit.n_params == 2);
  CHECK(fit.n_teams == 20);
  CHECK(fit.n_games == static_cast<int>(mirrored.games.size()));
}

TEST_CASE("simplified fit recovers the generating home advantage") {
  const auto sample = recovery_sample();
  const auto fit = lr::fit_simplified(sample.results);

  CHECK(fit.home_hat > 0.02);
  CHECK(fit.home_hat < 0.14);
  // The fitted scale lives on the win-ratio axis. Win ratios compress the
  // underlying strength spread (a mid-table team beats a slightly weaker one
  // only somewhat more often than not), so the recovered delta sits below the
  // generator's 0.25 by roughly the same compression factor.
  CHECK(fit.delta_hat > 0.13);
  CHECK(fit.delta_hat < 0.23);
  CHECK_FALSE(fit.boundary_warning);
  CHECK(fit.aic == doctest::Approx(4.0 - 2.0 * fit.log_likelihood));

  // The reported likelihood must reproduce exactly from the reported
  // parameters with fitness pinned to the win ratios.
  lr::FitnessVector wr;
  wr.values = lr::win_ratio(sample.results).scores;
  const double replay =
      lr::log_likelihood(sample.results, wr, fit.home_hat, fit.delta_hat);
  CHECK(replay == doctest::Approx(fit.log_likelihood).epsilon(1e-9));
}

TEST_CASE("independent optimizer starts agree on the simplified optimum") {
  const auto sample = recovery_sample();
  const auto optima =
      lr::detail::optimize_home_delta(lr::dw_samples(sample.results));
  REQUIRE(optima.size() >= 2);
  for (std::size_t i = 1; i < optima.size(); ++i) {
    CHECK(std::abs(optima[i].home - optima[0].home) < 1e-4);
    CHECK(std::abs(optima[i].delta - optima[0].delta) /
              std::max(1.0, optima[0].delta) <
          1e-4);
  }
  // Best optimum listed first.
  for (std::size_t i = 1; i < optima.size(); ++i) {
    CHECK(optima[0].log_likelihood >= optima[i].log_likelihood - 1e-12);
  }
}

TEST_CASE("simplified fit flags perfectly separable data") {
  // Every game is a home win while the win ratios still differ, so the
  // likelihood saturates along a ridge instead of at an interior optimum.
  const auto rs = make_results(3, {{0, 1, true, 0},
                                   {2, 1, true, 1},
                                   {0, 2, true, 2},
                                   {2, 0, true, 3}});
  const auto fit = lr::fit_simplified(rs);
  CHECK(fit.boundary_warning);
  CHECK(fit.log_likelihood > -1e-3);
}

TEST_CASE("full fit nests the simplified fit and recovers the ordering") {
  const auto sample = recovery_sample();
  const auto simple = lr::fit_simplified(sample.results);
  const auto full = lr::fit_full(sample.results);

  CHECK(full.model == "full");
  CHECK(full.n_params == 32);
  CHECK(full.n_teams == 30);
  REQUIRE(full.fitness_hat.size() == 30);

  // Freeing the per-team strengths can only raise the maximized likelihood.
  CHECK(full.log_likelihood >= simple.log_likelihood - 1e-9);

  double mean = 0.0;
  for (double v : full.fitness_hat) mean += v;
  mean /= static_cast<double>(full.fitness_hat.size());
  CHECK(mean == doctest::Approx(0.5).epsilon(1e-9));

  // The reported (fitness_hat, home_hat, delta_hat) triple must reproduce the
  // reported likelihood: the gauge chosen for presentation cannot change it.
  lr::FitnessVector fhat;
  fhat.values = full.fitness_hat;
  const double replay =
      lr::log_likelihood(sample.results, fhat, full.home_hat, full.delta_hat);
  CHECK(replay == doctest::Approx(full.log_likelihood).epsilon(1e-9));

  // Fitted strengths should broadly sort the teams like the generator did
  // (true fitness increases with team id).
  std::vector<int> best_first(30);
  for (int i = 0; i < 30; ++i) best_first[static_cast<std::size_t>(i)] = 29 - i;
  const auto truth = lr::make_ground_truth(best_first, 5);
  lr::ScoreVector fitted_scores;
  fitted_scores.scores = full.fitness_hat;
  CHECK(lr::kendall_tau(fitted_scores, truth) > 0.8);

  CHECK(full.aic == doctest::Approx(2.0 * 32 - 2.0 * full.log_likelihood));
  CHECK_FALSE(full.gauge_note.empty());
}

TEST_CASE("full fit requires every team to have played") {
  const auto rs = make_results(3, {{0, 1, true, 0}, {0, 1, false, 1}});
  CHECK_THROWS_AS((void)lr::fit_full(rs), std::invalid_argument);
}

TEST_CASE("model selection prefers the smaller AIC and breaks ties simply") {
  const auto sample = recovery_sample();
  const auto simple = lr::fit_simplified(sample.results);
  const auto full = lr::fit_full(sample.results);
  // One season of 435 games cannot justify 30 extra parameters.
  CHECK(lr::select_model(simple, full) == "simplified");

  lr::CalibrationFit a;
  a.model = "simplified";
  a.aic = 10.0;
  a.n_teams = 4;
  a.n_games = 6;
  lr::CalibrationFit b;
  b.model = "full";
  b.aic = 10.0;
  b.n_teams = 4;
  b.n_games = 6;
  CHECK(lr::select_model(a, b) == "simplified");
  b.aic = 9.5;
  CHECK(lr::select_model(a, b) == "full");

  // Swapped or mismatched arguments are caller bugs.
  CHECK_THROWS_AS((void)lr::select_model(b, a), std::invalid_argument);
  b.model = "full";
  a.model = "simplified";
  b.n_games = 7;
  CHECK_THROWS_AS((void)lr::select_model(a, b), std::invalid_argument);
}

TEST_CASE("empirical curve bins land on exact short-decimal centers") {
  std::vector<lr::DwSample> samples{
      {0.73, true}, {-0.97, false}, {0.0, true}};
  const auto bins = lr::empirical_curve_from_samples(samples, 1, 0.1);
  REQUIRE(bins.size() == 3);
  CHECK(bins[0].dw_center == -0.95);
  CHECK(bins[1].dw_center == 0.05);  // dw = 0 falls in the right-of-zero bin
  CHECK(bins[2].dw_center == 0.75);
  CHECK(bins[0].rate == 0.0);
  CHECK(bins[1].rate == 1.0);
  CHECK(bins[2].count == 1);
  CHECK(bins[2].sem == 0.0);  // single-game bins report no spread
}

TEST_CASE("empirical curve rates and errors follow the bin tallies") {
  std::vector<lr::DwSample> samples{
      {0.11, true}, {0.12, true}, {0.13, true}, {0.14, false},  // 3/4 wins
      {-0.5, true}, {-0.48, true}, {-0.46, true},               // dropped
  };
  const auto bins = lr::empirical_curve_from_samples(samples, 4, 0.1);
  REQUIRE(bins.size() == 1);
  CHECK(bins[0].dw_center == 0.15);
  CHECK(bins[0].count == 4);
  CHECK(bins[0].rate == doctest::Approx(0.75));
  CHECK(bins[0].sem == doctest::Approx(std::sqrt(0.75 * 0.25 / 3.0)));

  const auto kept = lr::empirical_curve_from_samples(samples, 3, 0.1);
  CHECK(kept.size() == 2);
}

TEST_CASE("empirical curve validates its parameters") {
  std::vector<lr::DwSample> samples{{0.1, true}};
  CHECK_THROWS_AS(
      (void)lr::empirical_curve_from_samples(samples, 1, 0.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)lr::empirical_curve_from_samples(samples, 1, 2.5),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)lr::empirical_curve_from_samples(samples, 0, 0.1),
      std::invalid_argument);
}

TEST_CASE("empirical curve is mirror-symmetric in the venue convention") {
  auto rng = lr::make_engine(123);
  std::vector<lr::DwSample> orig;
  std::vector<lr::DwSample> flipped;
  for (int i = 0; i < 4000; ++i) {
    const double dw = 2.0 * lr::uniform01(rng) - 1.0;
    const bool won = lr::uniform01(rng) < 0.5 + 0.3 * dw;
    orig.push_back({dw, won});
    flipped.push_back({-dw, !won});
  }
  const auto a = lr::empirical_curve_from_samples(orig, 1, 0.1);
  const auto b = lr::empirical_curve_from_samples(flipped, 1, 0.1);
  REQUIRE(a.size() == b.size());

  std::map<long long, const lr::CurveBin*> by_center;
  for (const auto& bin : b) {
    by_center[std::llround(bin.dw_center * 20.0)] = &bin;
  }
  for (const auto& bin : a) {
    const auto it = by_center.find(std::llround(-bin.dw_center * 20.0));
    REQUIRE(it != by_center.end());
    CHECK(it->second->count == bin.count);
    CHECK(it->second->rate == doctest::Approx(1.0 - bin.rate).epsilon(1e-12));
  }
}

TEST_CASE("binned outcome rates track the fitted logistic curve") {
  // Pool several seasons from one league so every bin is well populated, fit
  // the two-parameter model, and check the observed rates against it.
  lr::ResultSet pooled;
  pooled.n_teams = 30;
  for (int k = 0; k < 8; ++k) {
    lr::LeagueConfig cfg;
    cfg.n_teams = 30;
    cfg.delta = 0.25;
    cfg.home_adv = 0.08;
    cfg.seed = 9000 + static_cast<std::uint64_t>(k);
    const auto sample = lr::simulate_season(cfg);
    for (const auto& g : sample.results.games) pooled.games.push_back(g);
  }

  const auto fit = lr::fit_simplified(pooled);
  const auto bins = lr::empirical_curve(pooled, 30, 0.1);
  REQUIRE(bins.size() >= 8);

  int within_two_se = 0;
  for (const auto& bin : bins) {
    const double model_rate = lr::win_probability(
        0.5 + bin.dw_center, 0.5, fit.home_hat, fit.delta_hat);
    const double err = std::abs(bin.rate - model_rate);
    CHECK(err <= std::max(3.5 * bin.sem, 0.025));
    if (err <= 2.0 * bin.sem + 1e-12) ++within_two_se;
  }
  CHECK(within_two_se >= static_cast<int>(bins.size() * 6) / 10);
}

TEST_CASE("shape fit recovers exact power-law profiles") {
  std::vector<double> linear;
  for (int i = 0; i < 10; ++i) linear.push_back((i + 0.5) / 10.0);
  // Present the values out of order; the fit sorts internally.
  std::swap(linear[0], linear[7]);
  const auto lin = lr::fit_shape_from_ratios(linear);
  CHECK(std::abs(lin.shape_alpha_hat - 1.0) < 1e-6);
  CHECK(std::abs(lin.shape_beta_hat - 1.0) < 1e-6);
  CHECK(std::abs(lin.gamma_hat) < 1e-8);
  CHECK(lin.sse < 1e-15);

  std::vector<double> curved;
  for (int i = 0; i < 12; ++i) {
    const double x = (i + 0.5) / 12.0;
    curved.push_back(0.5 * x * x + 0.25);
  }
  const auto quad = lr::fit_shape_from_ratios(curved);
  CHECK(std::abs(quad.shape_alpha_hat - 2.0) < 1e-6);
  CHECK(std::abs(quad.shape_beta_hat - 0.5) < 1e-6);
  CHECK(std::abs(quad.gamma_hat - 0.25) < 1e-8);
  CHECK(quad.sse < 1e-15);
}

TEST_CASE("shape fit rejects underdetermined inputs") {
  CHECK_THROWS_AS((void)lr::fit_shape_from_ratios({0.4, 0.6}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)lr::fit_shape_from_ratios({0.5, 0.5, 0.5, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("shape fit runs on simulated seasons") {
  const auto sample = recovery_sample();
  const auto fit = lr::fit_shape(sample.results);
  CHECK(fit.shape_alpha_hat > 1e-3);
  CHECK(fit.shape_alpha_hat < 100.0);
  CHECK(fit.shape_beta_hat > 0.0);
  CHECK(fit.sse >= 0.0);
}

TEST_CASE("fit report serializes with all headline fields") {
  const auto sample = recovery_sample();
  const auto j = lr::to_json(lr::fit_full(sample.results));
  CHECK(j.at("model") == "full");
  CHECK(j.at("n_params") == 32);
  CHECK(j.contains("delta_hat"));
  CHECK(j.contains("home_hat"));
  CHECK(j.contains("log_likelihood"));
  CHECK(j.contains("aic"));
  CHECK(j.at("fitness_hat").size() == 30);
  CHECK(j.contains("gauge_note"));
  CHECK(j.contains("boundary_warning"));
}

}  // TEST_SUITE
