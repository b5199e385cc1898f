#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tcs/daytoday.hpp"
#include "tcs/market.hpp"
#include "tcs/metrics.hpp"
#include "tcs/random.hpp"
#include "tcs/scenario.hpp"

namespace tcs {

// Bell-shaped credits-per-meter profile evaluated at bin centers; values
// below 1e-6 truncate to zero so the tails are exactly free.
TollProfile gaussian_toll_profile(double amplitude, double mu_minutes, double sigma_minutes);

// Matern 5/2 correlation at a length-scale-normalized distance.
double matern52(double scaled_distance, double variance = 1.0);

// Zero-mean Gaussian process on [0,1]^3 with a Matern 5/2 kernel and unit
// signal variance; targets are standardized internally at fit time.
// Posterior mean and variance are reported in standardized units.
class GpModel {
 public:
  GpModel(double length_scale, double noise_var);

  void fit(const std::vector<std::array<double, 3>>& x, const std::vector<double>& y);
  struct Posterior {
    double mean = 0.0;
    double var = 1.0;
  };
  Posterior posterior(const std::array<double, 3>& x) const;
  bool fitted() const { return !x_.empty(); }
  double length_scale() const { return length_scale_; }
  // Of the standardized targets under the fitted kernel.
  double log_marginal_likelihood() const { return lml_; }

 private:
  double length_scale_;
  double noise_var_;
  std::vector<std::array<double, 3>> x_;
  std::vector<double> alpha_;  // K^-1 y, standardized targets
  std::vector<double> chol_;   // lower Cholesky factor, row-major
  double y_mean_ = 0.0;
  double y_sd_ = 1.0;
  double lml_ = 0.0;
};

struct BoRow {
  int index = 0;
  bool initial_design = false;
  double amplitude = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double objective = 0.0;
};

struct BoResult {
  std::vector<BoRow> rows;
  BoRow best;
};

using BoObjective = std::function<double(double amplitude, double mu, double sigma)>;

// Maximizes the objective over the box with a GP surrogate: a scrambled
// low-discrepancy initial design, then UCB-guided evaluations (random
// multistart plus coordinate descent on the acquisition).
BoResult bo_maximize(const BoObjective& objective, const BoParams& params, Rng& rng);

// One toll evaluation inside the design loop, aligned with BoResult rows.
struct DesignEval {
  double amplitude = 0.0, mu = 0.0, sigma = 0.0;
  WelfareReport welfare;
  double tti = 1.0;          // trailing-window mean of the daily aggregate
  double final_price = 0.0;
  bool stabilized = false;
};

struct TollDesignResult {
  BoResult bo;
  std::vector<DesignEval> evals;
  TollProfile best_toll;
  RunResult best_run;  // re-simulated at the best parameters
};

// Full outer loop: every candidate profile is simulated with the same
// scenario artifacts and seed, scored against the untolled reference run by
// trailing-window social welfare.
TollDesignResult design_toll(const Experiment& exp, const RunResult& base, Rng& rng);

}  // namespace tcs
