#pragma once

#include <random>
#include <vector>

#include "leaguerank/rankers.hpp"

namespace leaguerank {

// Reference ordering of the teams, best first, plus the size of the "top"
// group used by the top-focused metrics.
struct GroundTruth {
  std::vector<int> ordering;
  int top_k = 5;

  int size() const { return static_cast<int>(ordering.size()); }
};

// Validates that `ordering` is a permutation of 0..N-1 and 1 <= top_k <= N;
// throws std::invalid_argument otherwise.
GroundTruth make_ground_truth(std::vector<int> ordering, int top_k = 5);

// Kendall rank correlation between the scores and the reference order over
// all N(N-1)/2 team pairs. A pair counts +1 when the score order matches the
// reference, -1 when it is inverted, and 0 when the scores are tied (within
// kTieTolerance). Range [-1, 1].
double kendall_tau(const ScoreVector& scores, const GroundTruth& truth);

// Mean fractional rank (from to_ranking) assigned to the reference top-k
// teams; top_k <= N required. Lower is better; perfect identification gives
// (top_k + 1) / 2.
double avg_top_rank(const ScoreVector& scores, const GroundTruth& truth);

// Probability that a uniformly drawn (top, ordinary) team pair is ordered
// correctly by the scores, ties counting half. Exact over all
// top_k * (N - top_k) pairs; requires top_k < N.
double auc_top(const ScoreVector& scores, const GroundTruth& truth);

// Monte Carlo estimate of auc_top from n_samples uniform pairs.
double auc_top_sampled(const ScoreVector& scores, const GroundTruth& truth,
                       int n_samples, std::mt19937_64& rng);

}  // namespace leaguerank
