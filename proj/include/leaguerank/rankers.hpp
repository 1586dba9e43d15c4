#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leaguerank/synth.hpp"

namespace leaguerank {

// Scores closer than this are treated as tied by to_ranking and by the
// rank-correlation metrics.
inline constexpr double kTieTolerance = 1e-10;

// Default PageRank teleportation probability.
inline constexpr double kDefaultTeleport = 0.15;

enum class Method { kWinRatio, kPageRank, kBiPageRank };

const std::string& method_name(Method method);          // "WinRatio" etc.
Method method_from_name(const std::string& name);       // case-insensitive

// Directed win-loss multigraph. wins[loser][winner] counts how many times
// `winner` beat `loser`, i.e. edges point loser -> winner and out-strength is
// the number of losses.
struct WinLossNetwork {
  int n_teams = 0;
  std::vector<std::int64_t> wins;  // row-major [loser * n_teams + winner]

  static WinLossNetwork zero(int n_teams);

  std::int64_t at(int loser, int winner) const {
    return wins[static_cast<std::size_t>(loser) * n_teams + winner];
  }
  std::int64_t& at(int loser, int winner) {
    return wins[static_cast<std::size_t>(loser) * n_teams + winner];
  }

  std::int64_t total_games() const;
  std::vector<std::int64_t> out_strengths() const;  // losses per team
  std::vector<std::int64_t> in_strengths() const;   // wins per team
  WinLossNetwork reversed() const;                  // transposed win counts
};

WinLossNetwork build_network(const ResultSet& results);

struct ScoreVector {
  Method method = Method::kWinRatio;
  std::vector<double> scores;  // indexed by team id

  int size() const { return static_cast<int>(scores.size()); }
};

// Wins / games played; teams with no games score 0.
ScoreVector win_ratio(const ResultSet& results);

// Stationary scores of the random surfer on the loser->winner graph:
//   P_i = (1-a)/N * sum over dangling j of P_j
//       + (1-a) * sum_j P_j w_ji / s_j
//       + a/N
// where a is the teleportation probability, s_j the out-strength of j, and
// dangling teams (no losses) spread their mass uniformly. Power iteration
// from the uniform vector, L1 tolerance 1e-12, at most 10000 sweeps; throws
// std::runtime_error with the residual if it fails to converge.
ScoreVector pagerank(const WinLossNetwork& network,
                     double teleport = kDefaultTeleport);

// Difference between prestige earned by winning and "negative prestige"
// accumulated by losing: S_i = P_i - Q_i where Q is pagerank on the reversed
// network. Sums to 0 and is antisymmetric under network reversal.
ScoreVector bipagerank(const WinLossNetwork& network,
                       double teleport = kDefaultTeleport);

// Descending fractional ranks: rank 1 is the best team and score groups
// closer than kTieTolerance (chained pairwise) share the mean of the ranks
// they occupy.
std::vector<double> to_ranking(const ScoreVector& scores);

}  // namespace leaguerank
