#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "leaguerank/metrics.hpp"
#include "leaguerank/rng.hpp"

using namespace leaguerank;

namespace {

ScoreVector scores_of(std::vector<double> values) {
  ScoreVector sv;
  sv.scores = std::move(values);
  return sv;
}

GroundTruth descending_truth(int n, int top_k) {
  std::vector<int> ordering(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ordering[static_cast<std::size_t>(i)] = n - 1 - i;
  }
  return make_ground_truth(std::move(ordering), top_k);
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("ground truth validation") {
    CHECK_NOTHROW(make_ground_truth({2, 0, 1}, 2));
    CHECK_THROWS_AS(make_ground_truth({0, 0, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_ground_truth({0, 1, 3}, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_ground_truth({0, 1, 2}, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_ground_truth({0, 1, 2}, 4), std::invalid_argument);
  }

  TEST_CASE("kendall tau endpoints") {
    const GroundTruth truth = descending_truth(5, 2);
    CHECK(kendall_tau(scores_of({0.1, 0.2, 0.3, 0.4, 0.5}), truth) ==
          doctest::Approx(1.0));
    CHECK(kendall_tau(scores_of({0.5, 0.4, 0.3, 0.2, 0.1}), truth) ==
          doctest::Approx(-1.0));
    CHECK(kendall_tau(scores_of({0.7, 0.7, 0.7, 0.7, 0.7}), truth) ==
          doctest::Approx(0.0));
  }

  TEST_CASE("kendall tau counts inversions and ties") {
    // Truth order 3 > 2 > 1 > 0; the scores invert (2,1) and (2,0),
    // leaving 4 concordant of 6 pairs: tau = 1/3.
    const GroundTruth truth = make_ground_truth({3, 2, 1, 0}, 2);
    CHECK(kendall_tau(scores_of({0.5, 0.6, 0.4, 0.9}), truth) ==
          doctest::Approx(1.0 / 3.0));
    // One tied pair contributes 0 with the full denominator kept: tau = 2/3.
    const GroundTruth truth3 = make_ground_truth({2, 1, 0}, 1);
    CHECK(kendall_tau(scores_of({0.2, 0.2, 0.9}), truth3) ==
          doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("kendall tau is invariant under monotone score transforms") {
    std::mt19937_64 rng = make_engine(31);
    const GroundTruth truth = descending_truth(12, 5);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> values(12);
      for (double& v : values) v = uniform01(rng);
      const double tau = kendall_tau(scores_of(values), truth);
      std::vector<double> mapped(12);
      for (int i = 0; i < 12; ++i) {
        mapped[static_cast<std::size_t>(i)] =
            std::exp(3.0 * values[static_cast<std::size_t>(i)]) + 2.0;
      }
      CHECK(kendall_tau(scores_of(mapped), truth) == doctest::Approx(tau));
      // Negating the scores flips the sign when no pair is tied.
      std::vector<double> negated(12);
      for (int i = 0; i < 12; ++i) {
        negated[static_cast<std::size_t>(i)] =
            -values[static_cast<std::size_t>(i)];
      }
      CHECK(kendall_tau(scores_of(negated), truth) == doctest::Approx(-tau));
    }
  }

  TEST_CASE("average rank of the true top teams") {
    const GroundTruth truth = descending_truth(30, 5);
    std::vector<double> ascending(30);
    std::iota(ascending.begin(), ascending.end(), 1.0);
    // Perfect scores put the top five at ranks 1..5.
    CHECK(avg_top_rank(scores_of(ascending), truth) == doctest::Approx(3.0));
    // Reversed scores put them at ranks 26..30.
    std::vector<double> reversed(ascending.rbegin(), ascending.rend());
    CHECK(avg_top_rank(scores_of(reversed), truth) == doctest::Approx(28.0));
    // All tied: every team shares the mean rank (N+1)/2 = 15.5.
    CHECK(avg_top_rank(scores_of(std::vector<double>(30, 0.5)), truth) ==
          doctest::Approx(15.5));
  }

  TEST_CASE("top-group auc endpoints and a mixed case") {
    const GroundTruth truth = make_ground_truth({3, 2, 1, 0}, 2);
    CHECK(auc_top(scores_of({0.1, 0.2, 0.3, 0.4}), truth) ==
          doctest::Approx(1.0));
    CHECK(auc_top(scores_of({0.4, 0.3, 0.2, 0.1}), truth) ==
          doctest::Approx(0.0));
    CHECK(auc_top(scores_of({0.5, 0.5, 0.5, 0.5}), truth) ==
          doctest::Approx(0.5));
    // Team 2 falls below team 1: 3 of 4 (top, ordinary) pairs correct.
    CHECK(auc_top(scores_of({0.1, 0.6, 0.4, 0.9}), truth) ==
          doctest::Approx(0.75));
    // A tie across the top boundary counts half: 3 correct pairs plus one
    // tied pair gives (3 + 0.5) / 4.
    CHECK(auc_top(scores_of({0.1, 0.4, 0.4, 0.9}), truth) ==
          doctest::Approx(0.875));
  }

  TEST_CASE("sampled auc approaches the exact value") {
    std::mt19937_64 rng = make_engine(32);
    const GroundTruth truth = descending_truth(30, 5);
    std::vector<double> values(30);
    for (double& v : values) v = uniform01(rng);
    const ScoreVector sv = scores_of(values);
    const double exact = auc_top(sv, truth);
    const double sampled = auc_top_sampled(sv, truth, 200000, rng);
    CHECK(sampled == doctest::Approx(exact).epsilon(0.01));
  }

  TEST_CASE("metrics validate their inputs") {
    const GroundTruth truth = descending_truth(4, 2);
    CHECK_THROWS_AS(kendall_tau(scores_of({0.1, 0.2}), truth),
                    std::invalid_argument);
    const GroundTruth full_top = make_ground_truth({0, 1, 2, 3}, 4);
    CHECK_THROWS_AS(auc_top(scores_of({0.1, 0.2, 0.3, 0.4}), full_top),
                    std::invalid_argument);
    CHECK_NOTHROW(avg_top_rank(scores_of({0.1, 0.2, 0.3, 0.4}), full_top));
    std::mt19937_64 rng = make_engine(33);
    CHECK_THROWS_AS(
        auc_top_sampled(scores_of({0.1, 0.2, 0.3, 0.4}), truth, 0, rng),
        std::invalid_argument);
  }
}
