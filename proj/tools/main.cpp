#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "leaguerank/calibration.hpp"
#include "leaguerank/dataio.hpp"
#include "leaguerank/experiments.hpp"
#include "leaguerank/metrics.hpp"
#include "leaguerank/model.hpp"
#include "leaguerank/rankers.hpp"
#include "leaguerank/synth.hpp"

namespace {

using namespace leaguerank;

// Writes to a file, or to stdout when the path is "-".
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) {
      throw std::runtime_error("write failed");
    }
  }

 private:
  std::ofstream file_;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<Method> parse_methods(const std::string& text) {
  if (text == "all") {
    return {Method::kWinRatio, Method::kPageRank, Method::kBiPageRank};
  }
  std::vector<Method> methods;
  for (const std::string& token : split_list(text)) {
    methods.push_back(method_from_name(token));
  }
  if (methods.empty()) throw std::runtime_error("no ranking method given");
  return methods;
}

std::vector<MetricKind> parse_metrics(const std::string& text) {
  if (text == "all") {
    return {MetricKind::kKendall, MetricKind::kAuc, MetricKind::kAvgTopRank};
  }
  std::vector<MetricKind> metrics;
  for (const std::string& token : split_list(text)) {
    metrics.push_back(metric_from_name(token));
  }
  if (metrics.empty()) throw std::runtime_error("no metric given");
  return metrics;
}

InputFormat parse_format(const std::string& text) {
  if (text == "auto") return InputFormat::kAuto;
  if (text == "csv") return InputFormat::kCsv;
  if (text == "jsonl") return InputFormat::kJsonLines;
  throw std::runtime_error("unknown input format '" + text +
                           "' (expected auto, csv, or jsonl)");
}

std::string default_fitness_path(const std::string& out) {
  if (out == "-") return "-";
  std::filesystem::path p(out);
  const std::string stem = p.stem().string();
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  p.replace_filename(stem + "_fitness" + ext);
  return p.string();
}

void print_warnings(const LoadReport& report) {
  for (const std::string& w : report.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
}

int cmd_generate(const std::string& out, const std::string& fitness_out,
                 const LeagueConfig& config) {
  const SeasonSample sample = simulate_season(config);
  OutputTarget results_target(out);
  write_result_set_csv(results_target.stream(), sample.results);
  results_target.finish();
  const std::string fitness_path =
      fitness_out.empty() ? default_fitness_path(out) : fitness_out;
  OutputTarget fitness_target(fitness_path);
  write_fitness_csv(fitness_target.stream(), sample.fitness);
  fitness_target.finish();
  return 0;
}

int cmd_rank(const std::string& input, int teams, const std::string& method,
             double teleport, const std::string& out) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  const ResultSet results = read_result_set_csv(in, input, teams);
  const std::vector<Method> methods = parse_methods(method);
  const WinLossNetwork network = build_network(results);
  std::vector<ScoreVector> scores;
  for (Method m : methods) {
    switch (m) {
      case Method::kWinRatio:
        scores.push_back(win_ratio(results));
        break;
      case Method::kPageRank:
        scores.push_back(pagerank(network, teleport));
        break;
      case Method::kBiPageRank:
        scores.push_back(bipagerank(network, teleport));
        break;
    }
  }
  OutputTarget target(out);
  write_scores_csv(target.stream(), scores);
  target.finish();
  return 0;
}

int cmd_evaluate(const std::string& scores_path, const std::string& truth_path,
                 const std::string& metrics_text, int top_k,
                 const std::string& out) {
  std::ifstream scores_in(scores_path);
  if (!scores_in) throw std::runtime_error("cannot open " + scores_path);
  const std::vector<ScoreVector> scores =
      read_scores_csv(scores_in, scores_path);
  if (scores.empty()) throw std::runtime_error("no scores in " + scores_path);
  std::ifstream truth_in(truth_path);
  if (!truth_in) throw std::runtime_error("cannot open " + truth_path);
  const FitnessVector fitness = read_fitness_csv(truth_in, truth_path);

  // Reference order: descending fitness, ties broken by team id.
  std::vector<int> ordering(static_cast<std::size_t>(fitness.size()));
  for (int i = 0; i < fitness.size(); ++i) {
    ordering[static_cast<std::size_t>(i)] = i;
  }
  std::sort(ordering.begin(), ordering.end(), [&](int a, int b) {
    return fitness[a] != fitness[b] ? fitness[a] > fitness[b] : a < b;
  });
  const GroundTruth truth = make_ground_truth(std::move(ordering), top_k);

  const std::vector<MetricKind> metrics = parse_metrics(metrics_text);
  OutputTarget target(out);
  target.stream() << "method,metric,value\n";
  for (const ScoreVector& sv : scores) {
    for (MetricKind m : metrics) {
      double value = 0.0;
      switch (m) {
        case MetricKind::kKendall:
          value = kendall_tau(sv, truth);
          break;
        case MetricKind::kAuc:
          value = auc_top(sv, truth);
          break;
        case MetricKind::kAvgTopRank:
          value = avg_top_rank(sv, truth);
          break;
      }
      target.stream() << method_name(sv.method) << ',' << metric_name(m)
                      << ',' << format_double(value) << '\n';
    }
  }
  target.finish();
  return 0;
}

int cmd_calibrate(const std::string& input, const std::string& format,
                  const std::string& model, const std::string& out,
                  const std::string& curve_out, double bin_width, int min_bin,
                  const std::string& shape_out) {
  const LoadReport report = load_seasons(input, parse_format(format));
  print_warnings(report);
  if (report.seasons.empty()) {
    throw std::runtime_error(input + ": no usable seasons");
  }

  nlohmann::json output = nlohmann::json::array();
  std::vector<DwSample> pooled;
  std::ostringstream shape_csv;
  shape_csv << "season,shape_alpha_hat,shape_beta_hat,gamma_hat,sse\n";
  for (const SeasonData& season : report.seasons) {
    nlohmann::json entry;
    entry["season"] = season.season;
    entry["n_teams"] = season.results.n_teams;
    entry["n_games"] = static_cast<int>(season.results.games.size());
    std::optional<CalibrationFit> simplified, full;
    if (model == "simplified" || model == "both") {
      simplified = fit_simplified(season.results);
      entry["simplified"] = to_json(*simplified);
    }
    if (model == "full" || model == "both") {
      full = fit_full(season.results);
      entry["full"] = to_json(*full);
    }
    if (simplified && full) {
      entry["selected"] = select_model(*simplified, *full);
    }
    output.push_back(std::move(entry));
    if (!curve_out.empty()) {
      const std::vector<DwSample> samples = dw_samples(season.results);
      pooled.insert(pooled.end(), samples.begin(), samples.end());
    }
    if (!shape_out.empty()) {
      const ShapeFit shape = fit_shape(season.results);
      shape_csv << season.season << ','
                << format_double(shape.shape_alpha_hat) << ','
                << format_double(shape.shape_beta_hat) << ','
                << format_double(shape.gamma_hat) << ','
                << format_double(shape.sse) << '\n';
    }
  }
  OutputTarget target(out);
  target.stream() << output.dump(2) << '\n';
  target.finish();

  if (!curve_out.empty()) {
    // Outcome-rate curve pooled over all seasons.
    const std::vector<CurveBin> bins =
        empirical_curve_from_samples(pooled, min_bin, bin_width);
    OutputTarget curve_target(curve_out);
    curve_target.stream() << "dw_center,rate,sem,count\n";
    for (const CurveBin& b : bins) {
      curve_target.stream() << format_double(b.dw_center) << ','
                            << format_double(b.rate) << ','
                            << format_double(b.sem) << ',' << b.count << '\n';
    }
    curve_target.finish();
  }
  if (!shape_out.empty()) {
    OutputTarget shape_target(shape_out);
    shape_target.stream() << shape_csv.str();
    shape_target.finish();
  }
  return 0;
}

int cmd_sweep(const std::string& spec_path, std::uint64_t seed, int threads,
              const std::string& out, bool perturbation) {
  SweepSpec spec = parse_sweep_spec_file(spec_path);
  spec.base_seed = seed;
  spec.threads = threads;
  const SweepResult result =
      perturbation ? run_perturbation_study(spec) : run_sweep(spec);
  OutputTarget target(out);
  write_sweep_csv(target.stream(), result);
  target.finish();
  return 0;
}

int cmd_real_eval(const std::string& input, const std::string& format,
                  std::string league, const std::string& p_axis_text,
                  int last_k, double teleport, const std::string& algorithms,
                  const std::string& out) {
  const LoadReport report = load_seasons(input, parse_format(format));
  print_warnings(report);
  if (league.empty()) {
    league = std::filesystem::path(input).stem().string();
  }
  RealEvalSpec spec;
  spec.algorithms = parse_methods(algorithms);
  spec.last_k_seasons = last_k;
  spec.teleport = teleport;
  if (p_axis_text == "default") {
    for (int i = 1; i <= 20; ++i) spec.p_axis.push_back(i / 20.0);
  } else {
    for (const std::string& token : split_list(p_axis_text)) {
      std::size_t pos = 0;
      spec.p_axis.push_back(std::stod(token, &pos));
      if (pos != token.size()) {
        throw std::runtime_error("bad P value '" + token + "'");
      }
    }
  }
  const RealEvalResult result = run_real_eval(report.seasons, spec);
  OutputTarget target(out);
  write_real_eval_csv(target.stream(), result, league);
  target.finish();
  for (const std::string& season : result.tied_truth_seasons) {
    std::cerr << "note: season " << season
              << " has tied final win counts; ties broken by team id\n";
  }
  if (result.crossover_p.has_value()) {
    std::cerr << "crossover P (largest P with BiPageRank ahead of WinRatio): "
              << format_double(*result.crossover_p) << '\n';
  } else {
    std::cerr << "no crossover P: BiPageRank never ahead of WinRatio on this "
                 "axis\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic sports-league simulation and ranking toolkit"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "Simulate one season and write results plus true fitness");
  LeagueConfig gen_config;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "-";
  std::string gen_fitness_out;
  generate->add_option("--teams", gen_config.n_teams, "Number of teams");
  generate->add_option("--delta", gen_config.delta, "Outcome noise scale");
  generate->add_option("--home-adv", gen_config.home_adv, "Home advantage");
  generate->add_option("--frac", gen_config.frac_played,
                       "Fraction of all pairings played");
  generate->add_option("--shape-alpha", gen_config.shape_alpha,
                       "Fitness profile exponent");
  generate->add_option("--shape-beta", gen_config.shape_beta,
                       "Fitness profile range");
  generate->add_option("--seed", gen_seed, "RNG seed")->required();
  generate->add_option("--out", gen_out, "Results CSV path (- for stdout)")
      ->required();
  generate->add_option("--fitness-out", gen_fitness_out,
                       "Fitness CSV path (default: <out>_fitness.csv)");

  // rank
  auto* rank = app.add_subcommand("rank", "Score teams from a results CSV");
  std::string rank_input, rank_method = "all", rank_out = "-";
  int rank_teams = 0;
  double rank_teleport = kDefaultTeleport;
  rank->add_option("--input", rank_input, "Results CSV")->required();
  rank->add_option("--teams", rank_teams,
                   "Team count override (default: max id + 1)");
  rank->add_option("--method", rank_method,
                   "winratio, pagerank, bipagerank, a comma list, or all");
  rank->add_option("--teleport-alpha", rank_teleport,
                   "PageRank teleportation probability");
  rank->add_option("--out", rank_out, "Scores CSV path (- for stdout)");

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "Compare a scores CSV against a true fitness CSV");
  std::string eval_scores, eval_truth, eval_metrics = "all", eval_out = "-";
  int eval_top_k = 5;
  evaluate->add_option("--scores", eval_scores, "Scores CSV")->required();
  evaluate->add_option("--truth", eval_truth, "Fitness CSV")->required();
  evaluate->add_option("--metrics", eval_metrics,
                       "kendall, auc, avg_top_rank, a comma list, or all");
  evaluate->add_option("--top-k", eval_top_k, "Size of the top group");
  evaluate->add_option("--out", eval_out, "Output CSV path (- for stdout)");

  // calibrate
  auto* calibrate = app.add_subcommand(
      "calibrate", "Fit the outcome model to real or synthetic seasons");
  std::string cal_input, cal_format = "auto", cal_model = "both";
  std::string cal_out = "-", cal_curve_out, cal_shape_out;
  double cal_bin_width = 0.1;
  int cal_min_bin = 4;
  calibrate->add_option("--input", cal_input, "Games file (CSV or JSON lines)")
      ->required();
  calibrate->add_option("--format", cal_format, "auto, csv, or jsonl");
  calibrate
      ->add_option("--model", cal_model, "simplified, full, or both")
      ->check(CLI::IsMember({"simplified", "full", "both"}));
  calibrate->add_option("--out", cal_out, "Fit JSON path (- for stdout)");
  calibrate->add_option("--curve-out", cal_curve_out,
                        "Optional pooled outcome-curve CSV");
  calibrate->add_option("--bin-width", cal_bin_width,
                        "Outcome-curve bin width");
  calibrate->add_option("--min-bin", cal_min_bin,
                        "Minimum games per reported bin");
  calibrate->add_option("--shape-out", cal_shape_out,
                        "Optional per-season fitness-shape fit CSV");

  // sweep / perturb
  auto* sweep = app.add_subcommand(
      "sweep", "Run a parameter sweep from a spec file");
  auto* perturb = app.add_subcommand(
      "perturb", "Run a perturbation study from a spec file (axis.eta)");
  std::string sweep_spec_path, sweep_out = "-";
  std::uint64_t sweep_seed = 0;
  int sweep_threads = 1;
  for (CLI::App* cmd : {sweep, perturb}) {
    cmd->add_option("--spec", sweep_spec_path, "Sweep spec file")->required();
    cmd->add_option("--seed", sweep_seed, "Base RNG seed")->required();
    cmd->add_option("--threads", sweep_threads, "Worker thread count");
    cmd->add_option("--out", sweep_out, "Output CSV path (- for stdout)");
  }

  // real-eval
  auto* real_eval = app.add_subcommand(
      "real-eval", "Early-season ranking quality on real seasons");
  std::string re_input, re_format = "auto", re_league;
  std::string re_p_axis = "default", re_algorithms = "all", re_out = "-";
  int re_last_k = 10;
  double re_teleport = kDefaultTeleport;
  real_eval->add_option("--input", re_input, "Games file (CSV or JSON lines)")
      ->required();
  real_eval->add_option("--format", re_format, "auto, csv, or jsonl");
  real_eval->add_option("--league", re_league,
                        "League label (default: input file stem)");
  real_eval->add_option("--p-axis", re_p_axis,
                        "Comma list of season fractions, or 'default' "
                        "(0.05..1 in steps of 0.05)");
  real_eval->add_option("--last-k", re_last_k,
                        "Evaluate only the last K seasons (0 = all)");
  real_eval->add_option("--teleport-alpha", re_teleport,
                        "PageRank teleportation probability");
  real_eval->add_option("--algorithms", re_algorithms,
                        "Comma list of methods, or all");
  real_eval->add_option("--out", re_out, "Output CSV path (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, returns 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }

  try {
    if (generate->parsed()) {
      gen_config.seed = gen_seed;
      return cmd_generate(gen_out, gen_fitness_out, gen_config);
    }
    if (rank->parsed()) {
      return cmd_rank(rank_input, rank_teams, rank_method, rank_teleport,
                      rank_out);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(eval_scores, eval_truth, eval_metrics, eval_top_k,
                          eval_out);
    }
    if (calibrate->parsed()) {
      return cmd_calibrate(cal_input, cal_format, cal_model, cal_out,
                           cal_curve_out, cal_bin_width, cal_min_bin,
                           cal_shape_out);
    }
    if (sweep->parsed() || perturb->parsed()) {
      return cmd_sweep(sweep_spec_path, sweep_seed, sweep_threads, sweep_out,
                       perturb->parsed());
    }
    if (real_eval->parsed()) {
      return cmd_real_eval(re_input, re_format, re_league, re_p_axis,
                           re_last_k, re_teleport, re_algorithms, re_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
