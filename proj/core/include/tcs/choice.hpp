#pragma once

#include <functional>
#include <vector>

#include "tcs/market.hpp"
#include "tcs/network.hpp"
#include "tcs/random.hpp"
#include "tcs/scenario.hpp"

namespace tcs {

// Per-traveler taste coefficients derived from the shared time coefficient.
struct TravelerBetas {
  double tt = 0.0;    // utility per minute traveled
  double cost = 0.0;  // utility per dollar
  double sde = 0.0;   // utility per minute early
  double sdl = 0.0;   // utility per minute late
};

TravelerBetas betas_for(const ChoiceParams& params, const Traveler& t);

// Departure-time-independent utility of one route alternative.
double path_attribute_utility(const ChoiceParams& params, const ChoiceSet& set, int ordinal);

// Candidate departure instants: 2*eta + 1 marks spaced dtw minutes apart,
// centered on the preferred arrival minus the predicted travel time (center
// rounded to the dtw grid, halves rounding down). If the window would open
// before `earliest`, the whole window slides right to start there.
struct TimeWindow {
  std::vector<double> times;
  double center = 0.0;  // grid-rounded target departure before sliding
};

TimeWindow build_time_window(double t_star, double predicted_tt, double earliest,
                             const ChoiceParams& params);

// Multinomial-logit draw over utilities; returns the chosen index.
int sample_multinomial_logit(const std::vector<double>& utilities, Rng& rng);

struct Alternative {
  int path_ordinal = 0;
  double t_dep = 0.0;
  double tt_pre = 0.0;
  double sde = 0.0;
  double sdl = 0.0;
  double toll_dollars = 0.0;
  double utility = 0.0;
};

struct ChoiceOutcome {
  Alternative chosen;
  double path_attr_utility = 0.0;
};

using TravelTimePredictor = std::function<double(const Path&, double)>;

// Enumerates route x departure-time alternatives and samples one. `toll` may
// be null (untolled network); `price` is the current credit price.
ChoiceOutcome sample_trip_choice(const ChoiceSet& set, const TimeWindow& window,
                                 const TravelerBetas& betas, const ChoiceParams& params,
                                 double t_star, const TollProfile* toll, double price,
                                 const TravelTimePredictor& predicted_tt, Rng& rng);

}  // namespace tcs
