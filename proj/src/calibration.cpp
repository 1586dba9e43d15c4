#include "leaguerank/calibration.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "leaguerank/model.hpp"
#include "leaguerank/rankers.hpp"

namespace leaguerank {

namespace {

constexpr double kProbFloor = 1e-15;

double clamp_prob(double p) {
  return std::clamp(p, kProbFloor, 1.0 - kProbFloor);
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Log-likelihood of the two-parameter model on precomputed (dw, outcome)
// samples; parameters are (home, log delta).
double simplified_ll(const std::vector<DwSample>& samples, double home,
                     double log_delta) {
  const double delta = std::exp(log_delta);
  double ll = 0.0;
  for (const DwSample& s : samples) {
    // Evaluate the observed outcome's probability on its own sigmoid branch
    // (a home loss has probability logistic(-z)) so near-certain outcomes
    // keep full precision instead of cancelling in 1 - p.
    const double z = (s.dw + home) / delta;
    ll += std::log(clamp_prob(logistic(s.home_won ? z : -z)));
  }
  return ll;
}

constexpr double kHomeBound = 2.0;
constexpr double kLogDeltaLo = -13.815510557964274;  // ln 1e-6
constexpr double kLogDeltaHi = 6.907755278982137;    // ln 1e3

// Nelder-Mead on a 2-d objective returning the minimum point. The objective
// may return +inf to signal an out-of-bounds probe.
std::array<double, 2> nelder_mead_2d(
    const std::function<double(double, double)>& objective,
    std::array<double, 2> start, std::array<double, 2> step, double f_tol,
    int max_iters) {
  using Point = std::array<double, 2>;
  struct Vertex {
    Point x;
    double f;
  };
  auto eval = [&](const Point& p) { return objective(p[0], p[1]); };
  std::array<Vertex, 3> simplex;
  simplex[0] = {start, eval(start)};
  for (int d = 0; d < 2; ++d) {
    Point p = start;
    p[d] += step[static_cast<std::size_t>(d)];
    simplex[static_cast<std::size_t>(d) + 1] = {p, eval(p)};
  }
  for (int iter = 0; iter < max_iters; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (std::isfinite(simplex[2].f) && simplex[2].f - simplex[0].f < f_tol) {
      break;
    }
    const Point centroid{(simplex[0].x[0] + simplex[1].x[0]) / 2.0,
                         (simplex[0].x[1] + simplex[1].x[1]) / 2.0};
    auto blend = [&](double t) {
      return Point{centroid[0] + t * (centroid[0] - simplex[2].x[0]),
                   centroid[1] + t * (centroid[1] - simplex[2].x[1])};
    };
    const Point reflected = blend(1.0);
    const double fr = eval(reflected);
    if (fr < simplex[0].f) {
      const Point expanded = blend(2.0);
      const double fe = eval(expanded);
      simplex[2] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
      continue;
    }
    if (fr < simplex[1].f) {
      simplex[2] = {reflected, fr};
      continue;
    }
    const Point contracted = blend(fr < simplex[2].f ? 0.5 : -0.5);
    const double fc = eval(contracted);
    if (fc < std::min(fr, simplex[2].f)) {
      simplex[2] = {contracted, fc};
      continue;
    }
    for (int v = 1; v < 3; ++v) {  // shrink toward the best vertex
      auto& vert = simplex[static_cast<std::size_t>(v)];
      vert.x[0] = simplex[0].x[0] + 0.5 * (vert.x[0] - simplex[0].x[0]);
      vert.x[1] = simplex[0].x[1] + 0.5 * (vert.x[1] - simplex[0].x[1]);
      vert.f = eval(vert.x);
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return simplex[0].x;
}

}  // namespace

double log_likelihood(const ResultSet& results, const FitnessVector& fitness,
                      double home_adv, double delta) {
  if (fitness.size() != results.n_teams) {
    throw std::invalid_argument(
        "log_likelihood: fitness length does not match n_teams");
  }
  double ll = 0.0;
  for (const GameRecord& g : results.games) {
    // A home loss is the away side's win with the venue edge negated; using
    // that form keeps near-certain outcomes at full precision instead of
    // cancelling in 1 - p.
    const double p =
        g.home_won
            ? win_probability(fitness[g.home], fitness[g.away], home_adv,
                              delta)
            : win_probability(fitness[g.away], fitness[g.home], -home_adv,
                              delta);
    ll += std::log(clamp_prob(p));
  }
  return ll;
}

namespace detail {

std::vector<HomeDeltaOptimum> optimize_home_delta(
    const std::vector<DwSample>& samples) {
  auto objective = [&](double home, double log_delta) {
    if (std::abs(home) > kHomeBound || log_delta < kLogDeltaLo ||
        log_delta > kLogDeltaHi) {
      return std::numeric_limits<double>::infinity();
    }
    return -simplified_ll(samples, home, log_delta);
  };

  // Coarse likelihood grid; the best cells seed the local refinements.
  struct Seed {
    double home;
    double log_delta;
    double neg_ll;
  };
  std::vector<Seed> grid;
  for (int di = 0; di < 13; ++di) {
    const double log_delta =
        std::log(0.01) + di * (std::log(2.0) - std::log(0.01)) / 12.0;
    for (int hi = 0; hi < 11; ++hi) {
      const double home = -0.5 + hi * 0.1;
      grid.push_back({home, log_delta, objective(home, log_delta)});
    }
  }
  std::sort(grid.begin(), grid.end(),
            [](const Seed& a, const Seed& b) { return a.neg_ll < b.neg_ll; });

  std::vector<HomeDeltaOptimum> optima;
  for (std::size_t s = 0; s < 3 && s < grid.size(); ++s) {
    const auto best = nelder_mead_2d(objective, {grid[s].home, grid[s].log_delta},
                                     {0.1, 0.25}, 1e-10, 2000);
    optima.push_back(HomeDeltaOptimum{
        best[0], std::exp(best[1]), simplified_ll(samples, best[0], best[1])});
  }
  std::sort(optima.begin(), optima.end(),
            [](const HomeDeltaOptimum& a, const HomeDeltaOptimum& b) {
              return a.log_likelihood > b.log_likelihood;
            });
  return optima;
}

}  // namespace detail

CalibrationFit fit_simplified(const ResultSet& results) {
  if (results.games.size() < 2) {
    throw std::invalid_argument("fit_simplified: need at least two games");
  }
  const std::vector<DwSample> samples = dw_samples(results);
  double max_abs_dw = 0.0;
  for (const DwSample& s : samples) {
    max_abs_dw = std::max(max_abs_dw, std::abs(s.dw));
  }
  if (max_abs_dw < 1e-12) {
    throw std::invalid_argument(
        "fit_simplified: all games pair teams with equal win ratios; delta "
        "is unidentifiable");
  }

  const auto optima = detail::optimize_home_delta(samples);
  const auto& best = optima.front();
  CalibrationFit fit;
  fit.model = "simplified";
  fit.delta_hat = best.delta;
  fit.home_hat = best.home;
  fit.log_likelihood = best.log_likelihood;
  fit.n_params = 2;
  fit.aic = 2.0 * fit.n_params - 2.0 * fit.log_likelihood;
  // Flag estimates pinned to the search bounds, and saturated likelihoods
  // (perfectly separable data), where the optimum is a flat plateau and the
  // reported point within it is arbitrary.
  fit.boundary_warning = std::abs(best.home) > kHomeBound - 1e-3 ||
                         best.delta < 1.1e-6 || best.delta > 990.0 ||
                         best.log_likelihood >
                             -1e-6 * static_cast<double>(samples.size());
  fit.n_teams = results.n_teams;
  fit.n_games = static_cast<int>(results.games.size());
  return fit;
}

CalibrationFit fit_full(const ResultSet& results) {
  const int n = results.n_teams;
  const ScoreVector ratios = win_ratio(results);
  {
    std::vector<int> played(static_cast<std::size_t>(n), 0);
    for (const GameRecord& g : results.games) {
      played[static_cast<std::size_t>(g.home)] += 1;
      played[static_cast<std::size_t>(g.away)] += 1;
    }
    for (int i = 0; i < n; ++i) {
      if (played[static_cast<std::size_t>(i)] == 0) {
        throw std::invalid_argument(
            "fit_full: team " + std::to_string(i) +
            " has no games; its fitness is unidentifiable");
      }
    }
  }

  // Reduced variables x = (g_0..g_{n-1}, h) with g = (f - 1/2)/delta kept
  // mean-zero (the gauge direction; the likelihood is flat along it).
  const int dim = n + 1;
  auto log_lik = [&](const Eigen::VectorXd& x) {
    double ll = 0.0;
    for (const GameRecord& g : results.games) {
      const double z = x[g.home] - x[g.away] + x[n];
      ll += std::log(clamp_prob(logistic(g.home_won ? z : -z)));
    }
    return ll;
  };

  auto gradient_hessian = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad,
                              Eigen::MatrixXd* hess) {
    grad->setZero(dim);
    if (hess != nullptr) hess->setZero(dim, dim);
    for (const GameRecord& g : results.games) {
      const double z = x[g.home] - x[g.away] + x[n];
      const double p = logistic(z);
      const double r = (g.home_won ? 1.0 : 0.0) - p;
      (*grad)[g.home] += r;
      (*grad)[g.away] -= r;
      (*grad)[n] += r;
      if (hess == nullptr) continue;
      const double q = p * (1.0 - p);
      (*hess)(g.home, g.home) -= q;
      (*hess)(g.away, g.away) -= q;
      (*hess)(g.home, g.away) += q;
      (*hess)(g.away, g.home) += q;
      (*hess)(n, n) -= q;
      (*hess)(g.home, n) -= q;
      (*hess)(n, g.home) -= q;
      (*hess)(g.away, n) += q;
      (*hess)(n, g.away) += q;
    }
  };

  // Damped Newton ascent; the log-likelihood is concave, so every start must
  // reach the same optimum (up to gauge).
  auto maximize = [&](Eigen::VectorXd x, bool* flat_warning) {
    constexpr int kMaxIters = 500;
    constexpr double kGradTol = 1e-8;
    double ll = log_lik(x);
    Eigen::VectorXd grad(dim);
    Eigen::MatrixXd hess(dim, dim);
    for (int iter = 0; iter < kMaxIters; ++iter) {
      gradient_hessian(x, &grad, &hess);
      if (grad.lpNorm<Eigen::Infinity>() < kGradTol) break;
      // Small ridge regularizes the gauge null direction.
      Eigen::MatrixXd a = -hess;
      a.diagonal().array() += 1e-9;
      Eigen::VectorXd step = a.ldlt().solve(grad);
      double t = 1.0;
      Eigen::VectorXd trial;
      double trial_ll = -std::numeric_limits<double>::infinity();
      for (int halve = 0; halve < 50; ++halve) {
        trial = x + t * step;
        trial_ll = log_lik(trial);
        if (trial_ll > ll - 1e-12) break;
        t /= 2.0;
      }
      if (!(trial_ll > ll)) break;  // numerically stalled at the optimum
      x = trial;
      ll = trial_ll;
      const double g_mean = x.head(n).mean();
      x.head(n).array() -= g_mean;
      // Saturated strengths (perfect separation) are capped; the clamp on
      // probabilities makes larger values meaningless anyway.
      for (int i = 0; i < n; ++i) {
        if (std::abs(x[i]) > 50.0) {
          x[i] = std::copysign(50.0, x[i]);
          *flat_warning = true;
        }
      }
    }
    gradient_hessian(x, &grad, nullptr);
    if (grad.lpNorm<Eigen::Infinity>() > 1e-6) *flat_warning = true;
    return std::pair<Eigen::VectorXd, double>(x, log_lik(x));
  };

  bool hit_bounds = false;
  Eigen::VectorXd start_a = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd start_b = Eigen::VectorXd::Zero(dim);
  {
    double mean_ratio = 0.0;
    for (double w : ratios.scores) mean_ratio += w;
    mean_ratio /= n;
    for (int i = 0; i < n; ++i) {
      start_b[i] = 4.0 * (ratios.scores[static_cast<std::size_t>(i)] - mean_ratio);
    }
  }
  auto [xa, lla] = maximize(start_a, &hit_bounds);
  auto [xb, llb] = maximize(start_b, &hit_bounds);
  const Eigen::VectorXd& x = lla >= llb ? xa : xb;
  const double ll = std::max(lla, llb);

  const auto [w_min_it, w_max_it] =
      std::minmax_element(ratios.scores.begin(), ratios.scores.end());
  const double w_range = *w_max_it - *w_min_it;
  const double g_range = x.head(n).maxCoeff() - x.head(n).minCoeff();

  CalibrationFit fit;
  fit.model = "full";
  fit.gauge_note =
      "scale fixed by matching the fitted strength spread to the win-ratio "
      "range; location fixed by mean fitness 1/2";
  if (g_range < 1e-9) {
    fit.delta_hat = 1.0;
    fit.gauge_note += "; fitted strengths are flat, delta_hat set to 1";
  } else {
    fit.delta_hat = w_range / g_range;
  }
  fit.home_hat = fit.delta_hat * x[n];
  fit.log_likelihood = ll;
  fit.n_params = n + 2;
  fit.aic = 2.0 * fit.n_params - 2.0 * fit.log_likelihood;
  fit.fitness_hat.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    fit.fitness_hat[static_cast<std::size_t>(i)] = 0.5 + fit.delta_hat * x[i];
  }
  fit.boundary_warning = hit_bounds;
  fit.n_teams = n;
  fit.n_games = static_cast<int>(results.games.size());
  return fit;
}

std::string select_model(const CalibrationFit& simplified,
                         const CalibrationFit& full) {
  if (simplified.model != "simplified" || full.model != "full") {
    throw std::invalid_argument("select_model: arguments are swapped or not "
                                "a (simplified, full) pair");
  }
  if (simplified.n_teams != full.n_teams ||
      simplified.n_games != full.n_games) {
    throw std::invalid_argument(
        "select_model: the two fits describe different datasets");
  }
  return simplified.aic <= full.aic ? simplified.model : full.model;
}

std::vector<DwSample> dw_samples(const ResultSet& results) {
  const ScoreVector ratios = win_ratio(results);
  std::vector<DwSample> samples;
  samples.reserve(results.games.size());
  for (const GameRecord& g : results.games) {
    samples.push_back(
        DwSample{ratios.scores[static_cast<std::size_t>(g.home)] -
                     ratios.scores[static_cast<std::size_t>(g.away)],
                 g.home_won});
  }
  return samples;
}

std::vector<CurveBin> empirical_curve_from_samples(
    const std::vector<DwSample>& samples, int min_count, double bin_width) {
  if (!(bin_width > 0.0) || bin_width > 2.0) {
    throw std::invalid_argument(
        "empirical_curve: bin_width must lie in (0, 2]");
  }
  if (min_count < 1) {
    throw std::invalid_argument("empirical_curve: min_count must be positive");
  }
  const int n_bins =
      static_cast<int>(std::ceil(2.0 / bin_width - 1e-9));
  std::vector<std::int64_t> count(static_cast<std::size_t>(n_bins), 0);
  std::vector<std::int64_t> wins(static_cast<std::size_t>(n_bins), 0);
  for (const DwSample& s : samples) {
    int idx = static_cast<int>(std::floor((s.dw + 1.0) / bin_width));
    idx = std::clamp(idx, 0, n_bins - 1);
    count[static_cast<std::size_t>(idx)] += 1;
    if (s.home_won) wins[static_cast<std::size_t>(idx)] += 1;
  }
  // Reconstruct the width's intended decimal value at extended precision
  // (shortest round-trip text, re-read as long double), so centers land on
  // the short decimals the caller asked for (0.05, 0.15, ...) instead of
  // drifting by the width's representation error scaled up by the bin index.
  char width_text[32];
  auto [width_end, width_ec] =
      std::to_chars(width_text, width_text + sizeof width_text - 1, bin_width);
  *width_end = '\0';
  const long double width_decimal =
      width_ec == std::errc() ? std::strtold(width_text, nullptr)
                              : static_cast<long double>(bin_width);
  std::vector<CurveBin> bins;
  for (int b = 0; b < n_bins; ++b) {
    const std::int64_t c = count[static_cast<std::size_t>(b)];
    if (c < min_count) continue;
    const double rate = static_cast<double>(wins[static_cast<std::size_t>(b)]) /
                        static_cast<double>(c);
    const double sem =
        c >= 2 ? std::sqrt(rate * (1.0 - rate) / static_cast<double>(c - 1))
               : 0.0;
    const double center =
        static_cast<double>(-1.0L + (b + 0.5L) * width_decimal);
    bins.push_back(CurveBin{center, rate, sem, static_cast<int>(c)});
  }
  return bins;
}

std::vector<CurveBin> empirical_curve(const ResultSet& results, int min_count,
                                      double bin_width) {
  return empirical_curve_from_samples(dw_samples(results), min_count,
                                      bin_width);
}

namespace {

// Residual sum of squares of the shape profile at a given exponent, with the
// linear parameters (shape_beta, gamma) solved in closed form.
struct ProfiledShape {
  double beta = 0.0;
  double gamma = 0.0;
  double sse = 0.0;
};

ProfiledShape profile_shape(const std::vector<double>& xs,
                            const std::vector<double>& ys, double alpha) {
  const std::size_t n = xs.size();
  double z_mean = 0.0, y_mean = 0.0;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = std::pow(xs[i], alpha);
    z_mean += z[i];
    y_mean += ys[i];
  }
  z_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (z[i] - z_mean) * (ys[i] - y_mean);
    var += (z[i] - z_mean) * (z[i] - z_mean);
  }
  ProfiledShape out;
  out.beta = var > 0.0 ? cov / var : 0.0;
  out.gamma = y_mean - out.beta * z_mean;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - out.beta * z[i] - out.gamma;
    out.sse += r * r;
  }
  return out;
}

constexpr double kAlphaLo = 1e-3;
constexpr double kAlphaHi = 100.0;

// Expand outward from a seed until the middle of the triple is lowest, then
// shrink the interval with golden-section steps.
double golden_minimize(const std::function<double(double)>& f, double seed) {
  double lo = std::max(kAlphaLo, seed / 2.0);
  double hi = std::min(kAlphaHi, seed * 2.0);
  double f_lo = f(lo), f_mid = f(seed), f_hi = f(hi);
  while (f_lo < f_mid && lo > kAlphaLo) {
    hi = seed;
    f_hi = f_mid;
    seed = lo;
    f_mid = f_lo;
    lo = std::max(kAlphaLo, lo / 2.0);
    f_lo = f(lo);
  }
  while (f_hi < f_mid && hi < kAlphaHi) {
    lo = seed;
    f_lo = f_mid;
    seed = hi;
    f_mid = f_hi;
    hi = std::min(kAlphaHi, hi * 2.0);
    f_hi = f(hi);
  }
  constexpr double kRatio = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kRatio * (b - a);
  double d = a + kRatio * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kRatio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kRatio * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace

ShapeFit fit_shape_from_ratios(std::vector<double> win_ratios) {
  const int n = static_cast<int>(win_ratios.size());
  if (n < 3) {
    throw std::invalid_argument("fit_shape: need at least three teams");
  }
  std::sort(win_ratios.begin(), win_ratios.end());
  int distinct = 1;
  for (int i = 1; i < n; ++i) {
    if (win_ratios[static_cast<std::size_t>(i)] -
            win_ratios[static_cast<std::size_t>(i - 1)] >
        1e-12) {
      ++distinct;
    }
  }
  if (distinct < 3) {
    throw std::invalid_argument(
        "fit_shape: fewer than three distinct win ratios; the shape is "
        "underdetermined");
  }
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = (i + 0.5) / n;
  }
  auto sse_at = [&](double alpha) {
    return profile_shape(xs, win_ratios, alpha).sse;
  };
  double best_alpha = 1.0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (double seed : {0.5, 1.0, 2.0, 3.0}) {
    const double alpha = golden_minimize(sse_at, seed);
    const double sse = sse_at(alpha);
    if (sse < best_sse) {
      best_sse = sse;
      best_alpha = alpha;
    }
  }
  const ProfiledShape prof = profile_shape(xs, win_ratios, best_alpha);
  return ShapeFit{best_alpha, prof.beta, prof.gamma, prof.sse};
}

ShapeFit fit_shape(const ResultSet& results) {
  return fit_shape_from_ratios(win_ratio(results).scores);
}

nlohmann::json to_json(const CalibrationFit& fit) {
  nlohmann::json j{
      {"model", fit.model},
      {"delta_hat", fit.delta_hat},
      {"home_hat", fit.home_hat},
      {"log_likelihood", fit.log_likelihood},
      {"n_params", fit.n_params},
      {"aic", fit.aic},
      {"n_teams", fit.n_teams},
      {"n_games", fit.n_games},
      {"boundary_warning", fit.boundary_warning},
  };
  if (fit.model == "full") {
    j["fitness_hat"] = fit.fitness_hat;
    j["gauge_note"] = fit.gauge_note;
  }
  return j;
}

}  // namespace leaguerank
