#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcs/choice.hpp"
#include "tcs/market.hpp"
#include "tcs/network.hpp"
#include "tcs/scenario.hpp"
#include "tcs/supply.hpp"

namespace tcs {

// Predicted traversal minutes per segment and 5-minute time-of-day bin.
// Starts at free flow, updates by exponential smoothing toward each day's
// realized times, and never drops below free flow.
class LinkTravelTimeTable {
 public:
  explicit LinkTravelTimeTable(const Network& net);

  double minutes(int segment, double minute) const;
  double predict_path_tt(const Path& path, double t_dep) const;
  void smooth(const DayLinkTimes& observed, double rate);
  void reset();

 private:
  const Network* net_;
  std::vector<std::array<double, 288>> tt_;
  std::vector<double> ff_;
};

// Share of realized travel time unexplained by the forecasts the choices
// were based on: sum |realized - predicted| / sum realized.
double prediction_inconsistency(const std::vector<TripRecord>& trips);

// Immutable inputs of a simulation run: network, travelers, route choice
// sets for every observed origin-destination pair.
struct Experiment {
  ScenarioConfig config;
  Network net;
  std::uint64_t network_hash = 0;
  std::vector<Traveler> population;
  std::map<std::pair<int, int>, ChoiceSet> choice_sets;

  static Experiment build(const ScenarioConfig& cfg,
                          const std::string& choice_set_cache = "");
  const ChoiceSet& choice_set(int origin, int destination) const;
};

struct DayResult {
  int day = 1;
  double price = 0.0;       // credit price during the day
  double next_price = 0.0;  // price after the end-of-day update
  std::int64_t bought = 0;
  std::int64_t sold = 0;
  std::uint64_t allocated_credits = 0;
  double inconsistency = 0.0;
  double mean_utility = 0.0;  // experienced utility per traveler
  std::vector<TripRecord> trips;
  std::array<int, 288> accumulation{};
  std::vector<Transaction> trades;  // buys, uses, sells of the day
};

struct RunResult {
  std::vector<DayResult> days;
  bool stabilized = false;  // relative spread of the trailing window is small
  double stability_measure = 0.0;
};

struct RunOptions {
  TollProfile toll;
  std::optional<bool> trading;  // default: enabled iff the profile is nonzero
  int days = 0;                 // 0 uses the scenario's day count
  TransactionSink sink;         // also receives allocation transactions
  std::function<void(const DayResult&)> on_day;
};

// Full day-to-day loop: each traveler plans each trip when its predecessor
// arrives, departures are loaded onto the network, tolls are charged at the
// departure instant, and the forecast table and credit price update daily.
RunResult run_experiment(const Experiment& exp, const RunOptions& opt);

// Relative standard deviation of the last `window` values; large sentinel
// when the mean is ~0.
double relative_spread(const std::vector<double>& values, int window);

}  // namespace tcs
