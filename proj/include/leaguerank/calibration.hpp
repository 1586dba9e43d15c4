#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "leaguerank/synth.hpp"

namespace leaguerank {

// Result of fitting the outcome model to one season of games.
struct CalibrationFit {
  std::string model;          // "simplified" or "full"
  double delta_hat = 0.0;
  double home_hat = 0.0;
  double log_likelihood = 0.0;
  int n_params = 0;
  double aic = 0.0;
  // Full model only: per-team fitted fitness (mean 1/2) and how the gauge
  // freedom was resolved.
  std::vector<double> fitness_hat;
  std::string gauge_note;
  bool boundary_warning = false;
  // Identity of the fitted dataset, used by select_model.
  int n_teams = 0;
  int n_games = 0;
};

// Sum of log outcome probabilities under win_probability, with each
// probability clamped to [1e-15, 1 - 1e-15] before the log. Empty result
// sets give 0.
double log_likelihood(const ResultSet& results, const FitnessVector& fitness,
                      double home_adv, double delta);

// Two-parameter fit in which each team's fitness is pinned to its win ratio
// and only (home_adv, delta) are free. Multi-start Nelder-Mead over
// (home_adv, log delta) seeded from a coarse grid; n_params = 2. Throws
// std::invalid_argument when fewer than two games are present or every game
// pairs teams with identical win ratios (delta unidentifiable).
CalibrationFit fit_simplified(const ResultSet& results);

// (N + 2)-parameter fit with free per-team fitness. The likelihood only
// determines fitness up to an affine change absorbed by (home_adv, delta), so
// the optimization runs in reduced variables g_i = (f_i - 1/2) / delta
// (mean-zero) and h = home_adv / delta; the reported delta_hat then matches
// the fitted spread to the win-ratio range and home_hat = delta_hat * h.
// Requires every team to have played at least once.
CalibrationFit fit_full(const ResultSet& results);

// AIC comparison; returns the `model` label of the winner, the simplified
// model on ties. Throws std::invalid_argument when the two fits describe
// different datasets.
std::string select_model(const CalibrationFit& simplified,
                         const CalibrationFit& full);

// One game projected onto the win-ratio axis.
struct DwSample {
  double dw = 0.0;  // win ratio of home minus win ratio of away
  bool home_won = false;
};

std::vector<DwSample> dw_samples(const ResultSet& results);

// Home-win rate per win-ratio-difference bin (the observed outcome curve).
struct CurveBin {
  double dw_center = 0.0;
  double rate = 0.0;
  double sem = 0.0;
  int count = 0;
};

// Bins [-1, 1] into width-sized half-open cells, drops bins with fewer than
// min_count games, and reports the home-win rate with its binomial standard
// error sqrt(r(1-r)/(n-1)).
std::vector<CurveBin> empirical_curve_from_samples(
    const std::vector<DwSample>& samples, int min_count = 4,
    double bin_width = 0.1);

std::vector<CurveBin> empirical_curve(const ResultSet& results,
                                      int min_count = 4,
                                      double bin_width = 0.1);

// Least-squares fit of the fitness profile shape to the sorted win ratios:
// w_r ~ shape_beta * ((r + 0.5) / N)^shape_alpha + gamma. shape_beta and
// gamma are profiled out analytically for each shape_alpha, so the search is
// one-dimensional.
struct ShapeFit {
  double shape_alpha_hat = 0.0;
  double shape_beta_hat = 0.0;
  double gamma_hat = 0.0;
  double sse = 0.0;
};

// Fit from raw per-team values (sorted internally). Throws
// std::invalid_argument with fewer than three teams or fewer than three
// distinct values (the three shape parameters would be underdetermined).
ShapeFit fit_shape_from_ratios(std::vector<double> win_ratios);

ShapeFit fit_shape(const ResultSet& results);

nlohmann::json to_json(const CalibrationFit& fit);

namespace detail {

// One refined optimum of the simplified model's likelihood.
struct HomeDeltaOptimum {
  double home = 0.0;
  double delta = 0.0;
  double log_likelihood = 0.0;
};

// Multi-start optimizer behind fit_simplified, exposed so tests can verify
// that independent starts agree.
std::vector<HomeDeltaOptimum> optimize_home_delta(
    const std::vector<DwSample>& samples);

}  // namespace detail

}  // namespace leaguerank
