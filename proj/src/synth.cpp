#include "leaguerank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "leaguerank/rng.hpp"

namespace leaguerank {

namespace {

// Erdos-Gallai test for a non-increasing degree sequence with even sum.
bool is_graphical(std::vector<int> degrees) {
  std::sort(degrees.begin(), degrees.end(), std::greater<int>());
  const int n = static_cast<int>(degrees.size());
  std::int64_t sum = std::accumulate(degrees.begin(), degrees.end(),
                                     std::int64_t{0});
  if (sum % 2 != 0) return false;
  std::int64_t left = 0;
  for (int k = 1; k <= n; ++k) {
    left += degrees[static_cast<std::size_t>(k - 1)];
    std::int64_t right = static_cast<std::int64_t>(k) * (k - 1);
    for (int i = k; i < n; ++i) {
      right += std::min(degrees[static_cast<std::size_t>(i)], k);
    }
    if (left > right) return false;
  }
  return true;
}

// Havel-Hakimi construction; the caller has already verified graphicality.
std::vector<std::pair<int, int>> havel_hakimi(const std::vector<int>& degrees) {
  const int n = static_cast<int>(degrees.size());
  std::vector<std::pair<int, int>> remaining;  // (residual degree, node)
  remaining.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    remaining.emplace_back(degrees[static_cast<std::size_t>(i)], i);
  }
  std::vector<std::pair<int, int>> edges;
  for (;;) {
    std::sort(remaining.begin(), remaining.end(), [](auto a, auto b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    if (remaining.front().first == 0) break;
    auto [d, v] = remaining.front();
    remaining.front().first = 0;
    if (d >= static_cast<int>(remaining.size())) {
      throw std::runtime_error("degree plan is not graphical");
    }
    for (int j = 1; j <= d; ++j) {
      auto& other = remaining[static_cast<std::size_t>(j)];
      if (other.first == 0) {
        throw std::runtime_error("degree plan is not graphical");
      }
      other.first -= 1;
      edges.emplace_back(std::min(v, other.second), std::max(v, other.second));
    }
  }
  return edges;
}

// Degree-preserving double-edge swaps to decorrelate the deterministic
// Havel-Hakimi output. Attempt-capped: dense graphs (a complete graph in the
// extreme) admit few or no legal swaps, so we stop after the cap instead of
// insisting on the target count.
void randomize_edges(std::vector<std::pair<int, int>>& edges, int n_teams,
                     std::mt19937_64& rng) {
  const std::size_t n_edges = edges.size();
  if (n_edges < 2) return;
  std::vector<char> adjacent(
      static_cast<std::size_t>(n_teams) * static_cast<std::size_t>(n_teams), 0);
  auto adj = [&](int a, int b) -> char& {
    return adjacent[static_cast<std::size_t>(a) * n_teams + b];
  };
  for (auto [a, b] : edges) {
    adj(a, b) = adj(b, a) = 1;
  }
  const std::uint64_t target_swaps = 10 * static_cast<std::uint64_t>(n_edges);
  const std::uint64_t max_attempts = 200 * static_cast<std::uint64_t>(n_edges);
  std::uint64_t done = 0;
  for (std::uint64_t attempt = 0; attempt < max_attempts && done < target_swaps;
       ++attempt) {
    const std::size_t e1 = uniform_below(rng, n_edges);
    const std::size_t e2 = uniform_below(rng, n_edges);
    if (e1 == e2) continue;
    auto [a, b] = edges[e1];
    auto [c, d] = edges[e2];
    // Randomize which endpoints pair up; both rewirings preserve degrees.
    if (uniform_below(rng, 2) == 1) std::swap(c, d);
    if (a == c || a == d || b == c || b == d) continue;
    if (adj(a, c) || adj(b, d)) continue;
    adj(a, b) = adj(b, a) = 0;
    adj(c, d) = adj(d, c) = 0;
    adj(a, c) = adj(c, a) = 1;
    adj(b, d) = adj(d, b) = 1;
    edges[e1] = {std::min(a, c), std::max(a, c)};
    edges[e2] = {std::min(b, d), std::max(b, d)};
    ++done;
  }
}

}  // namespace

FitnessVector make_fitness(int n_teams, double shape_alpha, double shape_beta) {
  if (n_teams < 1) {
    throw std::invalid_argument("make_fitness: n_teams must be positive");
  }
  if (!(shape_alpha > 0.0) || !std::isfinite(shape_alpha)) {
    throw std::invalid_argument("make_fitness: shape_alpha must be positive");
  }
  if (!(shape_beta > 0.0) || shape_beta > 1.0) {
    throw std::invalid_argument("make_fitness: shape_beta must lie in (0, 1]");
  }
  std::vector<double> values(static_cast<std::size_t>(n_teams));
  double sum = 0.0;
  for (int i = 0; i < n_teams; ++i) {
    const double x = (i + 0.5) / n_teams;
    values[static_cast<std::size_t>(i)] = shape_beta * std::pow(x, shape_alpha);
    sum += values[static_cast<std::size_t>(i)];
  }
  const double gamma = 0.5 - sum / n_teams;
  for (double& v : values) v += gamma;
  return FitnessVector{std::move(values)};
}

std::vector<GameRecord> make_schedule(int n_teams, double frac_played,
                                      std::mt19937_64& rng) {
  if (n_teams < 2) {
    throw std::invalid_argument("make_schedule: n_teams must be at least 2");
  }
  if (!(frac_played > 0.0) || frac_played > 1.0) {
    throw std::invalid_argument(
        "make_schedule: frac_played must lie in (0, 1]");
  }
  const std::int64_t all_pairs =
      static_cast<std::int64_t>(n_teams) * (n_teams - 1) / 2;
  const std::int64_t n_games =
      std::llround(frac_played * static_cast<double>(all_pairs));
  // Tiny nudge so frac_played values that make P*(N-1) mathematically integer
  // are not floored one step down by floating-point error.
  const int deg_low =
      static_cast<int>(std::floor(frac_played * (n_teams - 1) + 1e-9));
  const std::int64_t n_bumped = 2 * n_games - static_cast<std::int64_t>(n_teams) * deg_low;
  if (n_games < 1 || (deg_low == 0 && n_bumped < n_teams)) {
    throw std::invalid_argument(
        "make_schedule: frac_played leaves some team with no games");
  }
  if (n_bumped < 0 || n_bumped > n_teams) {
    throw std::runtime_error("make_schedule: inconsistent degree plan");
  }

  std::vector<int> degrees(static_cast<std::size_t>(n_teams), deg_low);
  if (n_bumped > 0 && n_bumped < n_teams) {
    std::vector<int> order(static_cast<std::size_t>(n_teams));
    std::iota(order.begin(), order.end(), 0);
    fisher_yates_shuffle(order, rng);
    for (std::int64_t i = 0; i < n_bumped; ++i) {
      degrees[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] += 1;
    }
  } else if (n_bumped == n_teams) {
    for (int& d : degrees) d += 1;
  }
  if (!is_graphical(degrees)) {
    throw std::runtime_error("make_schedule: degree plan is not graphical");
  }

  auto edges = havel_hakimi(degrees);
  randomize_edges(edges, n_teams, rng);
  fisher_yates_shuffle(edges, rng);

  std::vector<GameRecord> games;
  games.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    if (uniform_below(rng, 2) == 1) std::swap(a, b);
    games.push_back(GameRecord{a, b, false, static_cast<int>(i)});
  }
  return games;
}

SeasonSample simulate_season(const LeagueConfig& config) {
  validate(config);
  FitnessVector fitness =
      make_fitness(config.n_teams, config.shape_alpha, config.shape_beta);
  std::mt19937_64 rng = make_engine(config.seed);
  std::vector<GameRecord> games =
      make_schedule(config.n_teams, config.frac_played, rng);
  for (GameRecord& game : games) {
    const double p = win_probability(fitness[game.home], fitness[game.away],
                                     config.home_adv, config.delta);
    game.home_won = uniform01(rng) < p;
  }
  return SeasonSample{std::move(fitness),
                      ResultSet{config.n_teams, std::move(games)}};
}

ResultSet perturb_unexpected(const ResultSet& results,
                             const FitnessVector& fitness, double eta,
                             PerturbMode mode, std::mt19937_64& rng) {
  if (!(eta >= 0.0) || eta > 1.0) {
    throw std::invalid_argument("perturb_unexpected: eta must lie in [0, 1]");
  }
  if (fitness.size() != results.n_teams) {
    throw std::invalid_argument(
        "perturb_unexpected: fitness length does not match n_teams");
  }
  std::vector<std::size_t> unexpected;
  for (std::size_t i = 0; i < results.games.size(); ++i) {
    const GameRecord& g = results.games[i];
    const int winner = g.home_won ? g.home : g.away;
    const int loser = g.home_won ? g.away : g.home;
    if (fitness[winner] < fitness[loser]) unexpected.push_back(i);
  }
  // One shuffle per call: the selected set is the permutation's prefix, so a
  // fixed engine state gives nested selections as eta grows.
  fisher_yates_shuffle(unexpected, rng);
  const std::size_t n_selected = static_cast<std::size_t>(
      std::llround(eta * static_cast<double>(unexpected.size())));

  std::vector<char> selected(results.games.size(), 0);
  for (std::size_t i = 0; i < n_selected; ++i) {
    selected[unexpected[i]] = 1;
  }

  ResultSet out;
  out.n_teams = results.n_teams;
  out.games.reserve(results.games.size());
  for (std::size_t i = 0; i < results.games.size(); ++i) {
    GameRecord g = results.games[i];
    if (selected[i]) {
      if (mode == PerturbMode::kRemove) continue;
      g.home_won = !g.home_won;
    }
    out.games.push_back(g);
  }
  return out;
}

}  // namespace leaguerank
