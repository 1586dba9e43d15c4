#include "leaguerank/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace leaguerank {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void validate(const LeagueConfig& config) {
  require(config.n_teams >= 2, "n_teams must be at least 2");
  require(std::isfinite(config.delta) && config.delta > 0.0,
          "delta must be finite and positive");
  require(std::isfinite(config.home_adv), "home_adv must be finite");
  require(std::isfinite(config.frac_played) && config.frac_played > 0.0 &&
              config.frac_played <= 1.0,
          "frac_played must lie in (0, 1]");
  require(std::isfinite(config.shape_alpha) && config.shape_alpha > 0.0,
          "shape_alpha must be finite and positive");
  require(std::isfinite(config.shape_beta) && config.shape_beta > 0.0 &&
              config.shape_beta <= 1.0,
          "shape_beta must lie in (0, 1]");
}

double win_probability(double f_home, double f_away, double home_adv,
                       double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("win_probability: delta must be positive");
  }
  if (!std::isfinite(f_home) || !std::isfinite(f_away) ||
      !std::isfinite(home_adv)) {
    throw std::invalid_argument("win_probability: inputs must be finite");
  }
  const double z = (f_home - f_away + home_adv) / delta;
  // Branch on sign so exp() never overflows; both branches agree analytically.
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double bradley_terry_probability(double f_home, double f_away, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument(
        "bradley_terry_probability: delta must be positive");
  }
  if (!std::isfinite(f_home) || !std::isfinite(f_away)) {
    throw std::invalid_argument(
        "bradley_terry_probability: inputs must be finite");
  }
  const double m = std::max(f_home, f_away) / delta;
  const double eh = std::exp(f_home / delta - m);
  const double ea = std::exp(f_away / delta - m);
  return eh / (eh + ea);
}

}  // namespace leaguerank
