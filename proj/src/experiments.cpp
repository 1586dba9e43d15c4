#include "leaguerank/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "leaguerank/metrics.hpp"
#include "leaguerank/rng.hpp"

namespace leaguerank {

namespace {

// Stream tag separating the perturbation draw from the season simulation.
constexpr std::uint64_t kPerturbStream = 0x70657274757262ULL;

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names{
      "delta", "home_adv", "frac", "shape_alpha", "shape_beta", "eta"};
  return names;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names{"kendall", "auc",
                                               "avg_top_rank"};
  return names;
}

}  // namespace

const std::string& sweep_parameter_name(SweepParameter p) {
  return parameter_names()[static_cast<std::size_t>(p)];
}

SweepParameter sweep_parameter_from_name(const std::string& name) {
  const auto& names = parameter_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<SweepParameter>(i);
  }
  throw std::invalid_argument("unknown sweep parameter: " + name);
}

const std::string& metric_name(MetricKind m) {
  return metric_names()[static_cast<std::size_t>(m)];
}

MetricKind metric_from_name(const std::string& name) {
  const auto& names = metric_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<MetricKind>(i);
  }
  throw std::invalid_argument("unknown metric: " + name);
}

const SweepCell& SweepResult::cell(std::size_t grid_index,
                                   std::size_t algorithm_index,
                                   std::size_t metric_index) const {
  return cells[(grid_index * algorithms.size() + algorithm_index) *
                   metrics.size() +
               metric_index];
}

std::size_t SweepResult::grid_size() const {
  std::size_t size = 1;
  for (const SweepAxis& axis : axes) size *= axis.values.size();
  return size;
}

std::vector<double> SweepResult::grid_values(std::size_t grid_index) const {
  std::vector<double> values(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    const std::size_t size = axes[k].values.size();
    values[k] = axes[k].values[grid_index % size];
    grid_index /= size;
  }
  return values;
}

namespace {

void apply_parameter(LeagueConfig* config, SweepParameter param,
                     double value) {
  switch (param) {
    case SweepParameter::kDelta:
      config->delta = value;
      return;
    case SweepParameter::kHomeAdv:
      config->home_adv = value;
      return;
    case SweepParameter::kFracPlayed:
      config->frac_played = value;
      return;
    case SweepParameter::kShapeAlpha:
      config->shape_alpha = value;
      return;
    case SweepParameter::kShapeBeta:
      config->shape_beta = value;
      return;
    case SweepParameter::kEta:
      throw std::logic_error("eta is not a LeagueConfig field");
  }
  throw std::logic_error("unreachable");
}

SweepSpec normalized_spec(const SweepSpec& raw) {
  SweepSpec spec = raw;
  if (spec.realizations < 1) {
    throw std::invalid_argument("sweep: realizations must be positive");
  }
  if (spec.threads < 1) {
    throw std::invalid_argument("sweep: threads must be positive");
  }
  if (spec.algorithms.empty()) {
    throw std::invalid_argument("sweep: no algorithms selected");
  }
  if (spec.metrics.empty()) {
    throw std::invalid_argument("sweep: no metrics selected");
  }
  std::set<Method> algs(spec.algorithms.begin(), spec.algorithms.end());
  if (algs.size() != spec.algorithms.size()) {
    throw std::invalid_argument("sweep: duplicate algorithm");
  }
  std::set<MetricKind> mets(spec.metrics.begin(), spec.metrics.end());
  if (mets.size() != spec.metrics.size()) {
    throw std::invalid_argument("sweep: duplicate metric");
  }
  std::set<SweepParameter> params;
  for (SweepAxis& axis : spec.axes) {
    if (!params.insert(axis.param).second) {
      throw std::invalid_argument("sweep: duplicate axis " +
                                  sweep_parameter_name(axis.param));
    }
    std::sort(axis.values.begin(), axis.values.end());
    axis.values.erase(std::unique(axis.values.begin(), axis.values.end()),
                      axis.values.end());
    if (axis.values.empty()) {
      throw std::invalid_argument("sweep: axis " +
                                  sweep_parameter_name(axis.param) +
                                  " has no values");
    }
  }
  return spec;
}

// Shared implementation of run_sweep and run_perturbation_study. Work is
// split into units of one simulated season; with an eta axis present, every
// eta value is evaluated on that same season.
SweepResult run_grid(const SweepSpec& spec_in) {
  const SweepSpec spec = normalized_spec(spec_in);
  const std::size_t n_axes = spec.axes.size();
  const std::size_t n_algorithms = spec.algorithms.size();
  const std::size_t n_metrics = spec.metrics.size();
  const std::size_t n_realizations = static_cast<std::size_t>(spec.realizations);

  // Axis strides for the flattened grid (first axis outermost).
  std::vector<std::size_t> strides(n_axes, 1);
  for (std::size_t k = n_axes; k-- > 1;) {
    strides[k - 1] = strides[k] * spec.axes[k].values.size();
  }
  std::size_t grid_points = 1;
  for (const SweepAxis& axis : spec.axes) grid_points *= axis.values.size();

  // Separate the season-defining axes from the eta axis.
  std::vector<std::size_t> sim_axes;
  std::ptrdiff_t eta_axis = -1;
  for (std::size_t k = 0; k < n_axes; ++k) {
    if (spec.axes[k].param == SweepParameter::kEta) {
      eta_axis = static_cast<std::ptrdiff_t>(k);
    } else {
      sim_axes.push_back(k);
    }
  }
  std::size_t sim_points = 1;
  for (std::size_t k : sim_axes) sim_points *= spec.axes[k].values.size();
  const std::size_t n_eta =
      eta_axis >= 0 ? spec.axes[static_cast<std::size_t>(eta_axis)].values.size()
                    : 1;

  const std::size_t total_units = sim_points * n_realizations;
  // One slot per (grid point, algorithm, metric, realization); workers write
  // disjoint slots, so the reduction below is order-independent and the
  // output cannot depend on the thread count.
  std::vector<double> slots(grid_points * n_algorithms * n_metrics *
                            n_realizations);

  auto run_unit = [&](std::size_t unit) {
    const std::size_t sim_index = unit / n_realizations;
    const std::size_t realization = unit % n_realizations;

    // Decode the sim grid point (first sim axis outermost).
    std::vector<std::size_t> value_indices(sim_axes.size(), 0);
    std::size_t rest = sim_index;
    for (std::size_t pos = sim_axes.size(); pos-- > 0;) {
      const std::size_t size = spec.axes[sim_axes[pos]].values.size();
      value_indices[pos] = rest % size;
      rest /= size;
    }
    // The seed folds in each axis identity and value (but not eta or the
    // other grid values), so a (parameters, realization) pair reproduces the
    // same season no matter what else the spec sweeps over.
    LeagueConfig config = spec.base;
    std::uint64_t seed = splitmix64(spec.base_seed);
    std::size_t base_cell = 0;
    for (std::size_t pos = 0; pos < sim_axes.size(); ++pos) {
      const SweepAxis& axis = spec.axes[sim_axes[pos]];
      const double value = axis.values[value_indices[pos]];
      apply_parameter(&config, axis.param, value);
      base_cell += value_indices[pos] * strides[sim_axes[pos]];
      seed = mix_seed(seed, static_cast<std::uint64_t>(axis.param));
      seed = mix_seed(seed, value);
    }
    seed = mix_seed(seed, static_cast<std::uint64_t>(realization));
    config.seed = seed;

    const SeasonSample sample = simulate_season(config);
    std::vector<int> ordering(static_cast<std::size_t>(config.n_teams));
    for (int i = 0; i < config.n_teams; ++i) {
      ordering[static_cast<std::size_t>(i)] = config.n_teams - 1 - i;
    }
    const GroundTruth truth =
        make_ground_truth(std::move(ordering), spec.top_k);

    for (std::size_t e = 0; e < n_eta; ++e) {
      ResultSet evaluated;
      const ResultSet* results = &sample.results;
      std::size_t cell = base_cell;
      if (eta_axis >= 0) {
        const double eta =
            spec.axes[static_cast<std::size_t>(eta_axis)].values[e];
        // Fresh engine with an eta-independent seed: the same permutation
        // underlies every eta, so selections nest and eta = 0 is exactly the
        // unperturbed season.
        std::mt19937_64 perturb_rng =
            make_engine(mix_seed(seed, kPerturbStream));
        evaluated = perturb_unexpected(sample.results, sample.fitness, eta,
                                       spec.mode, perturb_rng);
        results = &evaluated;
        cell += e * strides[static_cast<std::size_t>(eta_axis)];
      }
      const WinLossNetwork network = build_network(*results);
      for (std::size_t a = 0; a < n_algorithms; ++a) {
        ScoreVector scores;
        switch (spec.algorithms[a]) {
          case Method::kWinRatio:
            scores = win_ratio(*results);
            break;
          case Method::kPageRank:
            scores = pagerank(network, spec.teleport);
            break;
          case Method::kBiPageRank:
            scores = bipagerank(network, spec.teleport);
            break;
        }
        for (std::size_t m = 0; m < n_metrics; ++m) {
          double value = 0.0;
          switch (spec.metrics[m]) {
            case MetricKind::kKendall:
              value = kendall_tau(scores, truth);
              break;
            case MetricKind::kAuc:
              value = auc_top(scores, truth);
              break;
            case MetricKind::kAvgTopRank:
              value = avg_top_rank(scores, truth);
              break;
          }
          slots[((cell * n_algorithms + a) * n_metrics + m) * n_realizations +
                realization] = value;
        }
      }
    }
  };

  if (spec.threads == 1 || total_units == 1) {
    for (std::size_t unit = 0; unit < total_units; ++unit) run_unit(unit);
  } else {
    std::atomic<std::size_t> next_unit{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        if (failed.load(std::memory_order_relaxed)) return;
        const std::size_t unit =
            next_unit.fetch_add(1, std::memory_order_relaxed);
        if (unit >= total_units) return;
        try {
          run_unit(unit);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    };
    const std::size_t n_workers = std::min<std::size_t>(
        static_cast<std::size_t>(spec.threads), total_units);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    // A failed realization aborts the whole sweep rather than skipping.
    if (first_error) std::rethrow_exception(first_error);
  }

  SweepResult result;
  result.axes = spec.axes;
  result.algorithms = spec.algorithms;
  result.metrics = spec.metrics;
  result.cells.resize(grid_points * n_algorithms * n_metrics);
  for (std::size_t c = 0; c < grid_points * n_algorithms * n_metrics; ++c) {
    const double* values = &slots[c * n_realizations];
    double mean = 0.0;
    for (std::size_t r = 0; r < n_realizations; ++r) mean += values[r];
    mean /= static_cast<double>(n_realizations);
    double variance = 0.0;
    for (std::size_t r = 0; r < n_realizations; ++r) {
      variance += (values[r] - mean) * (values[r] - mean);
    }
    double sem = 0.0;
    if (n_realizations > 1) {
      variance /= static_cast<double>(n_realizations - 1);
      sem = std::sqrt(variance / static_cast<double>(n_realizations));
    }
    result.cells[c] =
        SweepCell{mean, sem, static_cast<int>(n_realizations)};
  }
  return result;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  for (const SweepAxis& axis : spec.axes) {
    if (axis.param == SweepParameter::kEta) {
      throw std::invalid_argument(
          "run_sweep: eta axis requires run_perturbation_study");
    }
  }
  return run_grid(spec);
}

SweepResult run_perturbation_study(const SweepSpec& spec) {
  const auto n_eta_axes =
      std::count_if(spec.axes.begin(), spec.axes.end(), [](const SweepAxis& a) {
        return a.param == SweepParameter::kEta;
      });
  if (n_eta_axes != 1) {
    throw std::invalid_argument(
        "run_perturbation_study: exactly one eta axis is required");
  }
  for (const SweepAxis& axis : spec.axes) {
    if (axis.param == SweepParameter::kEta) {
      for (double v : axis.values) {
        if (!(v >= 0.0) || v > 1.0) {
          throw std::invalid_argument(
              "run_perturbation_study: eta values must lie in [0, 1]");
        }
      }
    }
  }
  return run_grid(spec);
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  for (const SweepAxis& axis : result.axes) {
    out << sweep_parameter_name(axis.param) << ',';
  }
  out << "algorithm,metric,mean,sem,n\n";
  const std::size_t grid_points = result.grid_size();
  for (std::size_t g = 0; g < grid_points; ++g) {
    const std::vector<double> values = result.grid_values(g);
    for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
      for (std::size_t m = 0; m < result.metrics.size(); ++m) {
        for (double v : values) out << format_double(v) << ',';
        const SweepCell& cell = result.cell(g, a, m);
        out << method_name(result.algorithms[a]) << ','
            << metric_name(result.metrics[m]) << ','
            << format_double(cell.mean) << ',' << format_double(cell.sem)
            << ',' << cell.n << '\n';
      }
    }
  }
}

namespace {

[[noreturn]] void spec_fail(const std::string& name, int line,
                            const std::string& message) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

double parse_spec_number(const std::string& token, const std::string& name,
                         int line) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    spec_fail(name, line, "bad number '" + token + "'");
  }
  return value;
}

std::string parse_spec_string(const std::string& token,
                              const std::string& name, int line) {
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
    return token.substr(1, token.size() - 2);
  }
  if (token.find('"') != std::string::npos) {
    spec_fail(name, line, "bad string '" + token + "'");
  }
  return token;
}

std::vector<std::string> parse_spec_array(const std::string& token,
                                          const std::string& name, int line) {
  if (token.size() < 2 || token.front() != '[' || token.back() != ']') {
    spec_fail(name, line, "expected an array [ ... ], found '" + token + "'");
  }
  std::vector<std::string> items;
  const std::string body = token.substr(1, token.size() - 2);
  std::string item;
  std::stringstream ss(body);
  while (std::getline(ss, item, ',')) {
    const std::string trimmed = trim(item);
    if (trimmed.empty()) spec_fail(name, line, "empty array element");
    items.push_back(trimmed);
  }
  if (items.empty()) spec_fail(name, line, "empty array");
  return items;
}

}  // namespace

SweepSpec parse_sweep_spec(std::istream& in, const std::string& name) {
  SweepSpec spec;
  spec.algorithms.clear();
  spec.metrics.clear();
  std::set<std::string> seen;
  std::set<std::string> fixed_fields;
  std::string line_text;
  int line_no = 0;
  while (std::getline(in, line_text)) {
    ++line_no;
    // Strip comments; quotes are only used around bare words here, so a '#'
    // inside a quoted string is not supported (and not needed).
    const auto hash = line_text.find('#');
    if (hash != std::string::npos) line_text.erase(hash);
    const std::string trimmed = trim(line_text);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      spec_fail(name, line_no, "expected 'key = value'");
    }
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = trim(trimmed.substr(eq + 1));
    if (key.empty() || value.empty()) {
      spec_fail(name, line_no, "expected 'key = value'");
    }
    if (!seen.insert(key).second) {
      spec_fail(name, line_no, "duplicate key '" + key + "'");
    }
    if (key == "teams") {
      spec.base.n_teams = static_cast<int>(parse_spec_number(value, name, line_no));
    } else if (key == "delta" || key == "home_adv" || key == "frac" ||
               key == "shape_alpha" || key == "shape_beta") {
      apply_parameter(&spec.base, sweep_parameter_from_name(key),
                      parse_spec_number(value, name, line_no));
      fixed_fields.insert(key);
    } else if (key == "realizations") {
      spec.realizations =
          static_cast<int>(parse_spec_number(value, name, line_no));
    } else if (key == "teleport_alpha") {
      spec.teleport = parse_spec_number(value, name, line_no);
    } else if (key == "top_k") {
      spec.top_k = static_cast<int>(parse_spec_number(value, name, line_no));
    } else if (key == "mode") {
      const std::string mode = parse_spec_string(value, name, line_no);
      if (mode == "remove") {
        spec.mode = PerturbMode::kRemove;
      } else if (mode == "revert") {
        spec.mode = PerturbMode::kRevert;
      } else {
        spec_fail(name, line_no,
                  "mode must be \"remove\" or \"revert\", found '" + mode +
                      "'");
      }
    } else if (key == "metrics") {
      for (const std::string& item : parse_spec_array(value, name, line_no)) {
        try {
          spec.metrics.push_back(
              metric_from_name(parse_spec_string(item, name, line_no)));
        } catch (const std::invalid_argument& e) {
          spec_fail(name, line_no, e.what());
        }
      }
    } else if (key == "algorithms") {
      for (const std::string& item : parse_spec_array(value, name, line_no)) {
        try {
          spec.algorithms.push_back(
              method_from_name(parse_spec_string(item, name, line_no)));
        } catch (const std::invalid_argument& e) {
          spec_fail(name, line_no, e.what());
        }
      }
    } else if (key.rfind("axis.", 0) == 0) {
      SweepAxis axis;
      try {
        axis.param = sweep_parameter_from_name(key.substr(5));
      } catch (const std::invalid_argument& e) {
        spec_fail(name, line_no, e.what());
      }
      for (const std::string& item : parse_spec_array(value, name, line_no)) {
        axis.values.push_back(parse_spec_number(item, name, line_no));
      }
      spec.axes.push_back(std::move(axis));
    } else {
      spec_fail(name, line_no, "unknown key '" + key + "'");
    }
  }
  for (const SweepAxis& axis : spec.axes) {
    if (fixed_fields.count(sweep_parameter_name(axis.param)) > 0) {
      throw std::runtime_error(
          name + ": '" + sweep_parameter_name(axis.param) +
          "' is both a fixed field and an axis");
    }
  }
  if (spec.algorithms.empty()) {
    spec.algorithms = {Method::kWinRatio, Method::kPageRank,
                       Method::kBiPageRank};
  }
  if (spec.metrics.empty()) {
    spec.metrics = {MetricKind::kKendall};
  }
  return spec;
}

SweepSpec parse_sweep_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_sweep_spec(in, path);
}

RealEvalResult run_real_eval(const std::vector<SeasonData>& seasons,
                             const RealEvalSpec& spec) {
  if (spec.p_axis.empty()) {
    throw std::invalid_argument("real_eval: p_axis is empty");
  }
  for (double p : spec.p_axis) {
    if (!(p > 0.0) || p > 1.0) {
      throw std::invalid_argument("real_eval: P values must lie in (0, 1]");
    }
  }
  if (spec.algorithms.empty()) {
    throw std::invalid_argument("real_eval: no algorithms selected");
  }
  if (spec.last_k_seasons < 0) {
    throw std::invalid_argument("real_eval: last_k_seasons must be >= 0");
  }

  RealEvalResult result;
  result.p_axis = spec.p_axis;
  std::sort(result.p_axis.begin(), result.p_axis.end());
  result.p_axis.erase(
      std::unique(result.p_axis.begin(), result.p_axis.end()),
      result.p_axis.end());
  result.algorithms = spec.algorithms;

  std::size_t first = 0;
  if (spec.last_k_seasons > 0 &&
      seasons.size() > static_cast<std::size_t>(spec.last_k_seasons)) {
    first = seasons.size() - static_cast<std::size_t>(spec.last_k_seasons);
  }

  const std::size_t n_p = result.p_axis.size();
  const std::size_t n_alg = result.algorithms.size();
  std::vector<double> sums(n_p * n_alg, 0.0);
  std::vector<int> counts(n_p * n_alg, 0);

  for (std::size_t s = first; s < seasons.size(); ++s) {
    const SeasonData& season = seasons[s];
    const int n = season.results.n_teams;
    if (n < 2) continue;
    // End-of-season standing: win counts over the full season, ties broken
    // by team id (and flagged).
    std::vector<std::int64_t> wins(static_cast<std::size_t>(n), 0);
    for (const GameRecord& g : season.results.games) {
      wins[static_cast<std::size_t>(g.home_won ? g.home : g.away)] += 1;
    }
    std::vector<int> ordering(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ordering[static_cast<std::size_t>(i)] = i;
    std::sort(ordering.begin(), ordering.end(), [&](int a, int b) {
      const auto wa = wins[static_cast<std::size_t>(a)];
      const auto wb = wins[static_cast<std::size_t>(b)];
      return wa != wb ? wa > wb : a < b;
    });
    bool tied = false;
    for (int i = 1; i < n; ++i) {
      if (wins[static_cast<std::size_t>(ordering[static_cast<std::size_t>(
              i)])] ==
          wins[static_cast<std::size_t>(ordering[static_cast<std::size_t>(
              i - 1)])]) {
        tied = true;
        break;
      }
    }
    if (tied) result.tied_truth_seasons.push_back(season.season);
    const GroundTruth truth =
        make_ground_truth(std::move(ordering), std::min(5, n));

    for (std::size_t pi = 0; pi < n_p; ++pi) {
      const ResultSet prefix = truncate_season(season, result.p_axis[pi]);
      if (prefix.games.empty()) continue;
      const WinLossNetwork network = build_network(prefix);
      for (std::size_t a = 0; a < n_alg; ++a) {
        ScoreVector scores;
        switch (result.algorithms[a]) {
          case Method::kWinRatio:
            scores = win_ratio(prefix);
            break;
          case Method::kPageRank:
            scores = pagerank(network, spec.teleport);
            break;
          case Method::kBiPageRank:
            scores = bipagerank(network, spec.teleport);
            break;
        }
        sums[pi * n_alg + a] += kendall_tau(scores, truth);
        counts[pi * n_alg + a] += 1;
      }
    }
  }

  result.cells.resize(n_p * n_alg);
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    result.cells[c] = RealEvalCell{
        counts[c] > 0 ? sums[c] / counts[c] : 0.0, counts[c]};
  }

  // Threshold: the largest P at which BiPageRank still beats WinRatio.
  std::ptrdiff_t wr = -1, bpr = -1;
  for (std::size_t a = 0; a < n_alg; ++a) {
    if (result.algorithms[a] == Method::kWinRatio) {
      wr = static_cast<std::ptrdiff_t>(a);
    }
    if (result.algorithms[a] == Method::kBiPageRank) {
      bpr = static_cast<std::ptrdiff_t>(a);
    }
  }
  if (wr >= 0 && bpr >= 0) {
    for (std::size_t pi = n_p; pi-- > 0;) {
      const RealEvalCell& cw = result.cells[pi * n_alg +
                                            static_cast<std::size_t>(wr)];
      const RealEvalCell& cb = result.cells[pi * n_alg +
                                            static_cast<std::size_t>(bpr)];
      if (cw.n_seasons > 0 && cb.n_seasons > 0 &&
          cb.tau_mean > cw.tau_mean) {
        result.crossover_p = result.p_axis[pi];
        break;
      }
    }
  }
  return result;
}

void write_real_eval_csv(std::ostream& out, const RealEvalResult& result,
                         const std::string& league) {
  out << "league,P,algorithm,tau_mean,n_seasons\n";
  for (std::size_t pi = 0; pi < result.p_axis.size(); ++pi) {
    for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
      const RealEvalCell& cell =
          result.cells[pi * result.algorithms.size() + a];
      out << league << ',' << format_double(result.p_axis[pi]) << ','
          << method_name(result.algorithms[a]) << ','
          << format_double(cell.tau_mean) << ',' << cell.n_seasons << '\n';
    }
  }
}

}  // namespace leaguerank
