#pragma once

#include <random>
#include <utility>
#include <vector>

#include "leaguerank/model.hpp"

namespace leaguerank {

// One decisive game. `order` is the chronological position within the season.
struct GameRecord {
  int home = 0;
  int away = 0;
  bool home_won = false;
  int order = 0;
};

struct ResultSet {
  int n_teams = 0;
  std::vector<GameRecord> games;
};

// Fitness profile f_i = shape_beta * ((i + 0.5) / N)^shape_alpha + gamma with
// gamma chosen so the mean is exactly 1/2. Teams are indexed worst to best;
// values are strictly increasing.
FitnessVector make_fitness(int n_teams, double shape_alpha, double shape_beta);

// Near-regular random simple schedule: G = round(frac_played * N(N-1)/2)
// distinct pairings, every team playing floor or ceil of frac_played*(N-1)
// games. Home side per game is a fair coin. Throws std::invalid_argument for
// parameters whose game count leaves some team with no games, and
// std::runtime_error if no simple graph realizes the degree plan.
std::vector<GameRecord> make_schedule(int n_teams, double frac_played,
                                      std::mt19937_64& rng);

struct SeasonSample {
  FitnessVector fitness;
  ResultSet results;
};

// Full season draw: fitness profile, schedule, and outcomes sampled from
// win_probability. Deterministic in config.seed.
SeasonSample simulate_season(const LeagueConfig& config);

enum class PerturbMode { kRemove, kRevert };

// A game is "unexpected" when the winner has strictly lower fitness than the
// loser. Perturbation draws round(eta * U) of the U unexpected games uniformly
// without replacement and either deletes them (kRemove) or flips their
// outcome (kRevert). The same engine state yields nested selections across
// increasing eta. eta outside [0, 1] throws std::invalid_argument.
ResultSet perturb_unexpected(const ResultSet& results,
                             const FitnessVector& fitness, double eta,
                             PerturbMode mode, std::mt19937_64& rng);

}  // namespace leaguerank
