#include "tcs/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace tcs {
namespace {

constexpr double kTruncate = 1e-6;

double unit_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

std::array<double, 3> from_unit(const std::array<double, 3>& u, const BoBox& box) {
  return {box.amplitude_min + u[0] * (box.amplitude_max - box.amplitude_min),
          box.mu_min + u[1] * (box.mu_max - box.mu_min),
          box.sigma_min + u[2] * (box.sigma_max - box.sigma_min)};
}

}  // namespace

TollProfile gaussian_toll_profile(double amplitude, double mu_minutes, double sigma_minutes) {
  if (amplitude < 0.0) throw std::invalid_argument("toll amplitude must be non-negative");
  if (sigma_minutes <= 0.0) throw std::invalid_argument("toll width must be positive");
  TollProfile p;
  for (int b = 0; b < TollProfile::kBins; ++b) {
    double t = b * TollProfile::kBinMinutes + TollProfile::kBinMinutes / 2.0;
    double z = (t - mu_minutes) / sigma_minutes;
    double v = amplitude * std::exp(-0.5 * z * z);
    p.credits_per_m[b] = v < kTruncate ? 0.0 : v;
  }
  return p;
}

double matern52(double scaled_distance, double variance) {
  double d = std::abs(scaled_distance);
  double s5 = std::sqrt(5.0) * d;
  return variance * (1.0 + s5 + 5.0 / 3.0 * d * d) * std::exp(-s5);
}

GpModel::GpModel(double length_scale, double noise_var)
    : length_scale_(length_scale), noise_var_(noise_var) {
  if (length_scale <= 0.0) throw std::invalid_argument("length scale must be positive");
  if (noise_var < 0.0) throw std::invalid_argument("noise variance must be non-negative");
}

void GpModel::fit(const std::vector<std::array<double, 3>>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("GpModel::fit needs matching non-empty samples");
  const int n = static_cast<int>(x.size());
  x_ = x;

  y_mean_ = 0.0;
  for (double v : y) y_mean_ += v;
  y_mean_ /= n;
  double var = 0.0;
  for (double v : y) var += (v - y_mean_) * (v - y_mean_);
  y_sd_ = std::sqrt(var / n);
  if (y_sd_ < 1e-12) y_sd_ = 1.0;

  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t(i) = (y[i] - y_mean_) / y_sd_;

  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = matern52(unit_distance(x[i], x[j]) / length_scale_);
      k(i, j) = v;
      k(j, i) = v;
    }

  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  for (;;) {
    Eigen::MatrixXd kn = k + (noise_var_ + jitter) * Eigen::MatrixXd::Identity(n, n);
    llt.compute(kn);
    if (llt.info() == Eigen::Success) break;
    jitter = jitter == 0.0 ? 1e-10 : jitter * 100.0;
    if (jitter > 1e-2) throw std::runtime_error("GP covariance is not positive definite");
  }

  Eigen::VectorXd alpha = llt.solve(t);
  alpha_.assign(alpha.data(), alpha.data() + n);
  Eigen::MatrixXd l = llt.matrixL();
  chol_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) chol_[static_cast<std::size_t>(i) * n + j] = l(i, j);

  lml_ = -0.5 * t.dot(alpha) - 0.5 * n * std::log(2.0 * M_PI);
  for (int i = 0; i < n; ++i) lml_ -= std::log(l(i, i));
}

GpModel::Posterior GpModel::posterior(const std::array<double, 3>& x) const {
  Posterior p;
  if (x_.empty()) return p;  // prior
  const int n = static_cast<int>(x_.size());
  Eigen::VectorXd ks(n);
  for (int i = 0; i < n; ++i) ks(i) = matern52(unit_distance(x, x_[i]) / length_scale_);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += ks(i) * alpha_[i];

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> l(
      chol_.data(), n, n);
  Eigen::VectorXd v = l.triangularView<Eigen::Lower>().solve(ks);
  p.mean = mean;
  p.var = std::max(1.0 - v.squaredNorm(), 0.0);
  return p;
}

namespace {

// Random multistart, then coordinate descent with a shrinking step.
std::array<double, 3> maximize_acquisition(
    const std::function<double(const std::array<double, 3>&)>& acq, int multistart, Rng& rng) {
  std::array<double, 3> best{0.5, 0.5, 0.5};
  double best_v = acq(best);
  for (int i = 0; i < multistart; ++i) {
    std::array<double, 3> x{rng.uniform(), rng.uniform(), rng.uniform()};
    double v = acq(x);
    if (v > best_v) {
      best_v = v;
      best = x;
    }
  }
  double step = 0.1;
  while (step > 1e-3) {
    bool improved = false;
    for (int c = 0; c < 3; ++c) {
      for (double dir : {-1.0, 1.0}) {
        std::array<double, 3> x = best;
        x[c] = std::clamp(x[c] + dir * step, 0.0, 1.0);
        double v = acq(x);
        if (v > best_v + 1e-15) {
          best_v = v;
          best = x;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

BoResult bo_maximize(const BoObjective& objective, const BoParams& params, Rng& rng) {
  if (params.initial_design < 1) throw std::invalid_argument("need at least one design point");
  BoResult result;
  std::vector<std::array<double, 3>> xs;
  std::vector<double> ys;  // negated objective, the GP's minimization target

  std::array<double, 3> shift{rng.uniform(), rng.uniform(), rng.uniform()};
  const int bases[3] = {2, 3, 5};

  auto evaluate = [&](const std::array<double, 3>& u, bool seed_point) {
    std::array<double, 3> p = from_unit(u, params.box);
    double y = objective(p[0], p[1], p[2]);
    xs.push_back(u);
    ys.push_back(-y);
    BoRow row;
    row.index = static_cast<int>(result.rows.size());
    row.initial_design = seed_point;
    row.amplitude = p[0];
    row.mu = p[1];
    row.sigma = p[2];
    row.objective = y;
    result.rows.push_back(row);
  };

  for (int i = 0; i < params.initial_design; ++i) {
    std::array<double, 3> u;
    for (int c = 0; c < 3; ++c) u[c] = std::fmod(halton(i + 1, bases[c]) + shift[c], 1.0);
    evaluate(u, true);
  }

  // Optional evidence-based refinement of the kernel length scale.
  auto fit_model = [&]() {
    GpModel gp(params.length_scale, params.noise_var);
    gp.fit(xs, ys);
    if (!params.tune_length_scale) return gp;
    for (double ls : {0.05, 0.1, 0.15, 0.2, 0.3, 0.45, 0.7, 1.0}) {
      GpModel trial(ls, params.noise_var);
      trial.fit(xs, ys);
      if (trial.log_marginal_likelihood() > gp.log_marginal_likelihood()) gp = trial;
    }
    return gp;
  };

  for (int it = 0; it < params.iterations; ++it) {
    GpModel gp = fit_model();
    // The GP models the negated objective, so optimism flips the mean.
    auto acq = [&](const std::array<double, 3>& x) {
      GpModel::Posterior p = gp.posterior(x);
      return -p.mean + params.rho * std::sqrt(p.var);
    };
    evaluate(maximize_acquisition(acq, params.multistart, rng), false);
  }

  result.best = result.rows.front();
  for (const BoRow& r : result.rows)
    if (r.objective > result.best.objective) result.best = r;
  return result;
}

TollDesignResult design_toll(const Experiment& exp, const RunResult& base, Rng& rng) {
  TollDesignResult out;
  const BoParams& bp = exp.config.bo;

  BoObjective objective = [&](double a, double mu, double sigma) {
    RunOptions opt;
    opt.toll = gaussian_toll_profile(a, mu, sigma);
    RunResult run = run_experiment(exp, opt);
    WelfareReport rep = social_welfare(exp, run, base, bp.welfare_window);

    DesignEval ev;
    ev.amplitude = a;
    ev.mu = mu;
    ev.sigma = sigma;
    ev.welfare = rep;
    ev.final_price = run.days.back().next_price;
    ev.stabilized = run.stabilized;
    std::size_t n = std::min<std::size_t>(run.days.size(), bp.welfare_window);
    double tti = 0.0;
    for (std::size_t k = run.days.size() - n; k < run.days.size(); ++k)
      tti += weighted_tti(run.days[k].trips).overall;
    ev.tti = tti / static_cast<double>(n);
    out.evals.push_back(ev);
    return rep.social_welfare;
  };

  out.bo = bo_maximize(objective, bp, rng);

  out.best_toll = gaussian_toll_profile(out.bo.best.amplitude, out.bo.best.mu, out.bo.best.sigma);
  RunOptions opt;
  opt.toll = out.best_toll;
  out.best_run = run_experiment(exp, opt);
  return out;
}

}  // namespace tcs
