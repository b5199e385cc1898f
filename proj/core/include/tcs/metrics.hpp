#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tcs/daytoday.hpp"

namespace tcs {

// Distance-weighted travel time index (realized over free-flow travel time)
// per 5-minute departure bin, plus the all-trip aggregate.
struct TtiProfile {
  std::array<double, 288> by_bin{};   // 0 where no trip departed
  std::array<double, 288> weight{};   // meters departing in the bin
  double overall = 1.0;
};

TtiProfile weighted_tti(const std::vector<TripRecord>& trips);

// Trip departures per 5-minute time-of-day bin.
std::array<int, 288> departure_histogram(const std::vector<TripRecord>& trips);

// Experienced utility of one trip under the taste coefficients of its
// traveler; the toll term uses the day's credit price.
double trip_utility(const TripRecord& trip, const TravelerBetas& betas, double price);

// Mean schedule-delay cost per trip, grouped into 30-minute bins of the
// preferred arrival time; costs use each traveler's own delay rates.
struct ScheduleDelayBin {
  int bin_start_min = 0;
  int trips = 0;
  double early_usd_per_trip = 0.0;
  double late_usd_per_trip = 0.0;
};

std::vector<ScheduleDelayBin> schedule_delay_costs(const std::vector<TripRecord>& trips,
                                                   const std::vector<Traveler>& population);

// Sell transactions per 30-minute time-of-day bin with the mean credits sold
// per transaction.
struct SellProfileBin {
  int bin_start_min = 0;
  int sells = 0;
  double mean_credits = 0.0;
};

std::vector<SellProfileBin> sell_profile(const std::vector<Transaction>& trades);

struct TradeStats {
  int buys = 0;
  int sells = 0;
  int buyback_buys = 0;       // buys by travelers who already sold the same day
  int buyback_travelers = 0;  // distinct travelers with a sell followed by a buy
  std::int64_t credits_bought = 0;
  std::int64_t credits_sold = 0;
  double buyer_spend = 0.0;      // $ paid by buyers, fees included
  double seller_revenue = 0.0;   // $ received by sellers, net of fees
  double fee_total = 0.0;        // $ collected in fees on both sides
};

TradeStats transaction_stats(const std::vector<Transaction>& trades);

// Money-metric welfare gain of a tolled run against an untolled reference:
// utility difference per traveler with the toll payment returned as revenue,
// converted to dollars by each traveler's cost coefficient, averaged over
// the trailing `window` days and summed over travelers.
struct WelfareReport {
  double social_welfare = 0.0;       // $ per day
  double toll_revenue = 0.0;         // $ per day, before recycling
  double mean_utility_tolled = 0.0;  // utils per traveler per day
  double mean_utility_base = 0.0;
};

WelfareReport social_welfare(const Experiment& exp, const RunResult& tolled,
                             const RunResult& base, int window);

// Welfare gain of each simulated day against the day-matched base run,
// in dollars summed over travelers (same money metric as social_welfare).
std::vector<double> daily_welfare(const Experiment& exp, const RunResult& tolled,
                                  const RunResult& base);

// Relative price drift and imbalance of the trailing `window` days:
// mean |bought - sold| / mean bought, and |p_last - p_first| / p_first.
struct MarketEquilibrium {
  double imbalance_share = 0.0;
  double price_drift = 0.0;
};

MarketEquilibrium market_equilibrium(const RunResult& run, int window);

}  // namespace tcs
