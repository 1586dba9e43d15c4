#include "leaguerank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leaguerank/rng.hpp"

namespace leaguerank {

namespace {

// Positions of each team in the reference order (0 = best).
std::vector<int> truth_positions(const GroundTruth& truth) {
  const int n = truth.size();
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int r = 0; r < n; ++r) {
    pos[static_cast<std::size_t>(truth.ordering[static_cast<std::size_t>(r)])] =
        r;
  }
  return pos;
}

void check_sizes(const ScoreVector& scores, const GroundTruth& truth) {
  if (scores.size() != truth.size()) {
    throw std::invalid_argument(
        "metric: scores and ground truth have different lengths");
  }
  if (truth.size() < 2) {
    throw std::invalid_argument("metric: need at least two teams");
  }
}

}  // namespace

GroundTruth make_ground_truth(std::vector<int> ordering, int top_k) {
  const int n = static_cast<int>(ordering.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int t : ordering) {
    if (t < 0 || t >= n || seen[static_cast<std::size_t>(t)]) {
      throw std::invalid_argument(
          "make_ground_truth: ordering is not a permutation of 0..N-1");
    }
    seen[static_cast<std::size_t>(t)] = 1;
  }
  if (top_k < 1 || top_k > n) {
    throw std::invalid_argument("make_ground_truth: top_k must lie in [1, N]");
  }
  return GroundTruth{std::move(ordering), top_k};
}

double kendall_tau(const ScoreVector& scores, const GroundTruth& truth) {
  check_sizes(scores, truth);
  const int n = scores.size();
  const std::vector<int> pos = truth_positions(truth);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double si = scores.scores[static_cast<std::size_t>(i)];
      const double sj = scores.scores[static_cast<std::size_t>(j)];
      if (std::abs(si - sj) <= kTieTolerance) continue;  // contributes 0
      const bool score_says_i_better = si > sj;
      const bool truth_says_i_better = pos[static_cast<std::size_t>(i)] <
                                       pos[static_cast<std::size_t>(j)];
      sum += score_says_i_better == truth_says_i_better ? 1.0 : -1.0;
    }
  }
  return sum / (static_cast<double>(n) * (n - 1) / 2.0);
}

double avg_top_rank(const ScoreVector& scores, const GroundTruth& truth) {
  check_sizes(scores, truth);
  if (truth.top_k > truth.size()) {
    throw std::invalid_argument("avg_top_rank: top_k exceeds N");
  }
  const std::vector<double> ranks = to_ranking(scores);
  double sum = 0.0;
  for (int r = 0; r < truth.top_k; ++r) {
    sum += ranks[static_cast<std::size_t>(
        truth.ordering[static_cast<std::size_t>(r)])];
  }
  return sum / truth.top_k;
}

double auc_top(const ScoreVector& scores, const GroundTruth& truth) {
  check_sizes(scores, truth);
  const int n = truth.size();
  const int k = truth.top_k;
  if (k >= n) {
    throw std::invalid_argument("auc_top: top_k must be smaller than N");
  }
  double correct = 0.0;
  for (int a = 0; a < k; ++a) {
    const int top_team = truth.ordering[static_cast<std::size_t>(a)];
    const double st = scores.scores[static_cast<std::size_t>(top_team)];
    for (int b = k; b < n; ++b) {
      const int ordinary_team = truth.ordering[static_cast<std::size_t>(b)];
      const double so = scores.scores[static_cast<std::size_t>(ordinary_team)];
      if (std::abs(st - so) <= kTieTolerance) {
        correct += 0.5;
      } else if (st > so) {
        correct += 1.0;
      }
    }
  }
  return correct / (static_cast<double>(k) * (n - k));
}

double auc_top_sampled(const ScoreVector& scores, const GroundTruth& truth,
                       int n_samples, std::mt19937_64& rng) {
  check_sizes(scores, truth);
  const int n = truth.size();
  const int k = truth.top_k;
  if (k >= n) {
    throw std::invalid_argument("auc_top_sampled: top_k must be smaller than N");
  }
  if (n_samples < 1) {
    throw std::invalid_argument("auc_top_sampled: n_samples must be positive");
  }
  double correct = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const int a = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k)));
    const int b = k + static_cast<int>(
                          uniform_below(rng, static_cast<std::uint64_t>(n - k)));
    const double st = scores.scores[static_cast<std::size_t>(
        truth.ordering[static_cast<std::size_t>(a)])];
    const double so = scores.scores[static_cast<std::size_t>(
        truth.ordering[static_cast<std::size_t>(b)])];
    if (std::abs(st - so) <= kTieTolerance) {
      correct += 0.5;
    } else if (st > so) {
      correct += 1.0;
    }
  }
  return correct / n_samples;
}

}  // namespace leaguerank
