#include "tcs/choice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcs {

TravelerBetas betas_for(const ChoiceParams& params, const Traveler& t) {
  if (t.vot <= 0.0) throw std::invalid_argument("traveler needs a positive value of time");
  TravelerBetas b;
  b.tt = params.beta_tt;
  b.cost = params.beta_tt / t.vot;
  b.sde = b.cost * t.sde_rate;
  b.sdl = b.cost * t.sdl_rate;
  return b;
}

double path_attribute_utility(const ChoiceParams& params, const ChoiceSet& set, int ordinal) {
  const Path& p = set.paths.at(ordinal);
  double u = params.beta_ps * std::log(p.path_size);
  u += params.beta_length_km * (p.distance_m / 1000.0);
  u += params.beta_signals * p.signal_count;
  u += params.beta_highway_km * (p.highway_m / 1000.0);
  if (set.min_tt[ordinal]) u += params.beta_min_tt;
  if (set.min_dist[ordinal]) u += params.beta_min_dist;
  if (set.min_signals[ordinal]) u += params.beta_min_signals;
  if (set.max_highway[ordinal]) u += params.beta_max_highway;
  return u;
}

TimeWindow build_time_window(double t_star, double predicted_tt, double earliest,
                             const ChoiceParams& params) {
  if (params.dtw <= 0.0) throw std::invalid_argument("dtw must be positive");
  if (params.eta < 0) throw std::invalid_argument("eta must be non-negative");
  double target = t_star - predicted_tt;
  // Nearest grid mark; exact halves round toward the earlier mark.
  double center = params.dtw * std::ceil(target / params.dtw - 0.5);
  TimeWindow w;
  w.center = center;
  double first = center - params.eta * params.dtw;
  if (first < earliest) first = earliest;
  int n = 2 * params.eta + 1;
  w.times.reserve(n);
  for (int i = 0; i < n; ++i) w.times.push_back(first + i * params.dtw);
  return w;
}

int sample_multinomial_logit(const std::vector<double>& utilities, Rng& rng) {
  if (utilities.empty()) throw std::invalid_argument("no alternatives to sample");
  double best = *std::max_element(utilities.begin(), utilities.end());
  std::vector<double> weights(utilities.size());
  double total = 0.0;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    weights[i] = std::exp(utilities[i] - best);
    total += weights[i];
  }
  double target = rng.uniform() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (target <= cum) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

ChoiceOutcome sample_trip_choice(const ChoiceSet& set, const TimeWindow& window,
                                 const TravelerBetas& betas, const ChoiceParams& params,
                                 double t_star, const TollProfile* toll, double price,
                                 const TravelTimePredictor& predicted_tt, Rng& rng) {
  if (set.paths.empty()) throw std::invalid_argument("empty choice set");
  if (window.times.empty()) throw std::invalid_argument("empty departure window");

  std::vector<Alternative> alts;
  std::vector<double> utilities;
  std::vector<double> attrs(set.paths.size());
  alts.reserve(set.paths.size() * window.times.size());
  utilities.reserve(alts.capacity());

  for (std::size_t j = 0; j < set.paths.size(); ++j) {
    attrs[j] = path_attribute_utility(params, set, static_cast<int>(j));
    const Path& path = set.paths[j];
    for (double t : window.times) {
      Alternative a;
      a.path_ordinal = static_cast<int>(j);
      a.t_dep = t;
      a.tt_pre = predicted_tt(path, t);
      double arrival = t + a.tt_pre;
      a.sde = std::max(0.0, t_star - arrival);
      a.sdl = std::max(0.0, arrival - t_star);
      if (toll != nullptr) a.toll_dollars = toll->at(t) * path.distance_m * price;
      a.utility = betas.tt * a.tt_pre + betas.sde * a.sde + betas.sdl * a.sdl +
                  betas.cost * a.toll_dollars + attrs[j];
      alts.push_back(a);
      utilities.push_back(a.utility);
    }
  }

  int pick = sample_multinomial_logit(utilities, rng);
  ChoiceOutcome out;
  out.chosen = alts[pick];
  out.path_attr_utility = attrs[out.chosen.path_ordinal];
  return out;
}

}  // namespace tcs
