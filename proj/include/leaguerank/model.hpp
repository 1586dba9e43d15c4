#pragma once

#include <cstdint>
#include <vector>

namespace leaguerank {

// Parameters of one synthetic league.
//   n_teams      number of teams N
//   delta        outcome noise scale; small delta -> the better team almost
//                always wins, large delta -> coin flips
//   home_adv     additive advantage H for the home side, in fitness units
//   frac_played  fraction P of the N(N-1)/2 distinct pairings that appear in
//                the schedule
//   shape_alpha  exponent of the fitness profile
//   shape_beta   range of the fitness profile
struct LeagueConfig {
  int n_teams = 30;
  double delta = 0.25;
  double home_adv = 0.0;
  double frac_played = 1.0;
  double shape_alpha = 1.0;
  double shape_beta = 1.0;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument when a field is outside its domain
// (n_teams >= 2, delta > 0, frac_played in (0, 1], shape_alpha > 0,
// shape_beta in (0, 1], all finite).
void validate(const LeagueConfig& config);

// Team strengths indexed by team id; ascending by construction, mean 1/2.
struct FitnessVector {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

// Probability that the home side wins:
//   P = 1 / (1 + exp(-(f_home - f_away + home_adv) / delta))
// Evaluated overflow-safe; throws std::invalid_argument for delta <= 0 or
// non-finite inputs.
double win_probability(double f_home, double f_away, double home_adv,
                       double delta);

// Exponential-strength ratio form without a home term:
//   P = e^{f_home/delta} / (e^{f_home/delta} + e^{f_away/delta})
// Equals win_probability(f_home, f_away, 0, delta) analytically; kept as an
// independent implementation route for cross-checking.
double bradley_terry_probability(double f_home, double f_away, double delta);

}  // namespace leaguerank
