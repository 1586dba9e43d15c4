#include "leaguerank/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace leaguerank {

const std::string& method_name(Method method) {
  static const std::string names[] = {"WinRatio", "PageRank", "BiPageRank"};
  return names[static_cast<int>(method)];
}

Method method_from_name(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "winratio") return Method::kWinRatio;
  if (lower == "pagerank") return Method::kPageRank;
  if (lower == "bipagerank") return Method::kBiPageRank;
  throw std::invalid_argument("unknown ranking method: " + name);
}

WinLossNetwork WinLossNetwork::zero(int n_teams) {
  if (n_teams < 1) {
    throw std::invalid_argument("WinLossNetwork: n_teams must be positive");
  }
  WinLossNetwork net;
  net.n_teams = n_teams;
  net.wins.assign(
      static_cast<std::size_t>(n_teams) * static_cast<std::size_t>(n_teams), 0);
  return net;
}

std::int64_t WinLossNetwork::total_games() const {
  return std::accumulate(wins.begin(), wins.end(), std::int64_t{0});
}

std::vector<std::int64_t> WinLossNetwork::out_strengths() const {
  std::vector<std::int64_t> s(static_cast<std::size_t>(n_teams), 0);
  for (int j = 0; j < n_teams; ++j) {
    for (int i = 0; i < n_teams; ++i) {
      s[static_cast<std::size_t>(j)] += at(j, i);
    }
  }
  return s;
}

std::vector<std::int64_t> WinLossNetwork::in_strengths() const {
  std::vector<std::int64_t> s(static_cast<std::size_t>(n_teams), 0);
  for (int j = 0; j < n_teams; ++j) {
    for (int i = 0; i < n_teams; ++i) {
      s[static_cast<std::size_t>(i)] += at(j, i);
    }
  }
  return s;
}

WinLossNetwork WinLossNetwork::reversed() const {
  WinLossNetwork out = zero(n_teams);
  for (int j = 0; j < n_teams; ++j) {
    for (int i = 0; i < n_teams; ++i) {
      out.at(i, j) = at(j, i);
    }
  }
  return out;
}

WinLossNetwork build_network(const ResultSet& results) {
  WinLossNetwork net = WinLossNetwork::zero(results.n_teams);
  for (const GameRecord& g : results.games) {
    if (g.home < 0 || g.home >= results.n_teams || g.away < 0 ||
        g.away >= results.n_teams || g.home == g.away) {
      throw std::invalid_argument("build_network: game with bad team ids");
    }
    const int winner = g.home_won ? g.home : g.away;
    const int loser = g.home_won ? g.away : g.home;
    net.at(loser, winner) += 1;
  }
  return net;
}

ScoreVector win_ratio(const ResultSet& results) {
  if (results.n_teams < 1) {
    throw std::invalid_argument("win_ratio: n_teams must be positive");
  }
  std::vector<std::int64_t> wins(static_cast<std::size_t>(results.n_teams), 0);
  std::vector<std::int64_t> played(static_cast<std::size_t>(results.n_teams),
                                   0);
  for (const GameRecord& g : results.games) {
    if (g.home < 0 || g.home >= results.n_teams || g.away < 0 ||
        g.away >= results.n_teams || g.home == g.away) {
      throw std::invalid_argument("win_ratio: game with bad team ids");
    }
    played[static_cast<std::size_t>(g.home)] += 1;
    played[static_cast<std::size_t>(g.away)] += 1;
    wins[static_cast<std::size_t>(g.home_won ? g.home : g.away)] += 1;
  }
  ScoreVector out;
  out.method = Method::kWinRatio;
  out.scores.resize(static_cast<std::size_t>(results.n_teams));
  for (int i = 0; i < results.n_teams; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.scores[k] =
        played[k] == 0
            ? 0.0
            : static_cast<double>(wins[k]) / static_cast<double>(played[k]);
  }
  return out;
}

namespace {

constexpr double kPageRankTolerance = 1e-12;
constexpr int kPageRankMaxSweeps = 10000;

std::vector<double> pagerank_scores(const WinLossNetwork& network,
                                    double teleport) {
  if (!(teleport > 0.0) || !(teleport < 1.0)) {
    throw std::invalid_argument("pagerank: teleport must lie in (0, 1)");
  }
  const int n = network.n_teams;
  const std::vector<std::int64_t> out = network.out_strengths();
  std::vector<double> p(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<double> next(static_cast<std::size_t>(n));
  const double keep = 1.0 - teleport;

  for (int sweep = 0; sweep < kPageRankMaxSweeps; ++sweep) {
    double dangling = 0.0;
    for (int j = 0; j < n; ++j) {
      if (out[static_cast<std::size_t>(j)] == 0) {
        dangling += p[static_cast<std::size_t>(j)];
      }
    }
    const double base = teleport / n + keep * dangling / n;
    std::fill(next.begin(), next.end(), base);
    for (int j = 0; j < n; ++j) {
      const std::int64_t s = out[static_cast<std::size_t>(j)];
      if (s == 0) continue;
      const double share = keep * p[static_cast<std::size_t>(j)] /
                           static_cast<double>(s);
      for (int i = 0; i < n; ++i) {
        const std::int64_t w = network.at(j, i);
        if (w != 0) next[static_cast<std::size_t>(i)] += share * w;
      }
    }
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
      residual += std::abs(next[static_cast<std::size_t>(i)] -
                           p[static_cast<std::size_t>(i)]);
    }
    p.swap(next);
    if (residual < kPageRankTolerance) return p;
  }
  double residual = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    residual += std::abs(p[i] - next[i]);
  }
  throw std::runtime_error(
      "pagerank: power iteration did not converge after " +
      std::to_string(kPageRankMaxSweeps) +
      " sweeps (L1 residual " + std::to_string(residual) + ")");
}

}  // namespace

ScoreVector pagerank(const WinLossNetwork& network, double teleport) {
  ScoreVector out;
  out.method = Method::kPageRank;
  out.scores = pagerank_scores(network, teleport);
  return out;
}

ScoreVector bipagerank(const WinLossNetwork& network, double teleport) {
  const std::vector<double> won = pagerank_scores(network, teleport);
  const std::vector<double> lost =
      pagerank_scores(network.reversed(), teleport);
  ScoreVector out;
  out.method = Method::kBiPageRank;
  out.scores.resize(won.size());
  for (std::size_t i = 0; i < won.size(); ++i) {
    out.scores[i] = won[i] - lost[i];
  }
  return out;
}

std::vector<double> to_ranking(const ScoreVector& scores) {
  const int n = scores.size();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = scores.scores[static_cast<std::size_t>(a)];
    const double sb = scores.scores[static_cast<std::size_t>(b)];
    return sa != sb ? sa > sb : a < b;
  });
  std::vector<double> ranks(static_cast<std::size_t>(n), 0.0);
  int start = 0;
  while (start < n) {
    // Grow the tie group by chaining adjacent near-equal scores.
    int stop = start + 1;
    while (stop < n &&
           std::abs(scores.scores[static_cast<std::size_t>(order[
               static_cast<std::size_t>(stop)])] -
                    scores.scores[static_cast<std::size_t>(order[
                        static_cast<std::size_t>(stop - 1)])]) <=
               kTieTolerance) {
      ++stop;
    }
    // Ranks are 1-based positions; tied teams share the group mean.
    const double mean_rank = (start + 1 + stop) / 2.0;
    for (int k = start; k < stop; ++k) {
      ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
          mean_rank;
    }
    start = stop;
  }
  return ranks;
}

}  // namespace leaguerank
