#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "leaguerank/dataio.hpp"
#include "leaguerank/model.hpp"
#include "leaguerank/rankers.hpp"
#include "leaguerank/synth.hpp"

namespace leaguerank {

// Which LeagueConfig field (or the perturbation fraction) an axis varies.
enum class SweepParameter {
  kDelta,
  kHomeAdv,
  kFracPlayed,
  kShapeAlpha,
  kShapeBeta,
  kEta
};

const std::string& sweep_parameter_name(SweepParameter p);
SweepParameter sweep_parameter_from_name(const std::string& name);

struct SweepAxis {
  SweepParameter param = SweepParameter::kDelta;
  std::vector<double> values;  // sorted ascending, duplicates removed
};

enum class MetricKind { kKendall, kAuc, kAvgTopRank };

const std::string& metric_name(MetricKind m);
MetricKind metric_from_name(const std::string& name);

// Grid experiment: for every combination of axis values, `realizations`
// independent seasons are simulated and each ranking method is scored against
// the planted fitness order. Seeds are derived per (grid point, realization)
// from base_seed, so results do not depend on thread count or on which other
// axis values appear in the spec.
struct SweepSpec {
  LeagueConfig base;  // base.seed is ignored; base_seed below is used
  std::vector<SweepAxis> axes;
  int realizations = 100;
  std::vector<Method> algorithms{Method::kWinRatio, Method::kPageRank,
                                 Method::kBiPageRank};
  std::vector<MetricKind> metrics{MetricKind::kKendall};
  std::uint64_t base_seed = 0;
  double teleport = kDefaultTeleport;
  int top_k = 5;
  PerturbMode mode = PerturbMode::kRevert;  // applies to the eta axis
  int threads = 1;
};

struct SweepCell {
  double mean = 0.0;
  double sem = 0.0;  // sample standard deviation / sqrt(n)
  int n = 0;
};

struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<Method> algorithms;
  std::vector<MetricKind> metrics;
  // Indexed by flattened grid point (first axis outermost), then algorithm,
  // then metric.
  std::vector<SweepCell> cells;

  const SweepCell& cell(std::size_t grid_index, std::size_t algorithm_index,
                        std::size_t metric_index) const;
  std::size_t grid_size() const;
  // Axis values of one flattened grid point, in axis order.
  std::vector<double> grid_values(std::size_t grid_index) const;
};

// Plain parameter sweep; rejects an eta axis (std::invalid_argument).
SweepResult run_sweep(const SweepSpec& spec);

// Perturbation sweep: requires exactly one eta axis. Each realization
// simulates one season and evaluates every eta on it, with the perturbation
// draw independent of eta so selections nest (eta = 0 reproduces the
// unperturbed sweep exactly).
SweepResult run_perturbation_study(const SweepSpec& spec);

// CSV: one row per (grid point, algorithm, metric):
// <axis names...>,algorithm,metric,mean,sem,n
void write_sweep_csv(std::ostream& out, const SweepResult& result);

// Plain key = value spec file (see README for the schema) -> SweepSpec.
SweepSpec parse_sweep_spec(std::istream& in, const std::string& name);
SweepSpec parse_sweep_spec_file(const std::string& path);

// Real-data protocol: rank each season from its first floor(P * N_S) games
// and compare against the end-of-season win-count order.
struct RealEvalSpec {
  std::vector<double> p_axis;
  std::vector<Method> algorithms{Method::kWinRatio, Method::kPageRank,
                                 Method::kBiPageRank};
  int last_k_seasons = 10;  // 0 keeps every season
  double teleport = kDefaultTeleport;
};

struct RealEvalCell {
  double tau_mean = 0.0;
  int n_seasons = 0;
};

struct RealEvalResult {
  std::vector<double> p_axis;
  std::vector<Method> algorithms;
  std::vector<RealEvalCell> cells;  // indexed by p, then algorithm
  // Largest P at which BiPageRank beats WinRatio on mean tau; present only
  // when both methods were evaluated and such a P exists.
  std::optional<double> crossover_p;
  // Seasons whose final win counts contain ties (broken by team id).
  std::vector<std::string> tied_truth_seasons;
};

RealEvalResult run_real_eval(const std::vector<SeasonData>& seasons,
                             const RealEvalSpec& spec);

// CSV: league,P,algorithm,tau_mean,n_seasons
void write_real_eval_csv(std::ostream& out, const RealEvalResult& result,
                         const std::string& league);

}  // namespace leaguerank
