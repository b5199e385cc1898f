#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tcs/scenario.hpp"

namespace tcs {

// Distance toll in credits per meter, one value per 5-minute interval.
struct TollProfile {
  static constexpr int kBins = 288;
  static constexpr double kBinMinutes = 5.0;
  std::array<double, kBins> credits_per_m{};

  double at(double minute) const;  // wraps modulo the 1440-minute day
  bool all_zero() const;
  std::string to_csv() const;      // one "start_min,credits_per_m" line per bin
  static TollProfile from_csv(const std::string& text);
};

// Trip charge: toll at departure times trip length, rounded up to whole
// credits, capped per trip.
int charge_credits(const TollProfile& toll, double t_dep, double distance_m,
                   const TcsParams& tcs);

struct Transaction {
  enum class Kind { allocation, buy, use, sell };
  Kind kind = Kind::allocation;
  int day = 0;
  double minute = 0.0;  // absolute simulation minute
  int traveler = -1;    // counterparty is always the regulator
  int amount = 0;       // credits
  double unit_price = 0.0;
  double fee = 0.0;     // $ on top of (or out of) face value
};

const char* to_string(Transaction::Kind k);

// Wallet of credit tokens ordered by birth time. Tokens expire at the first
// allocation instant past birth + lifetime, or earlier when the wallet
// overflows; consumption always takes the oldest tokens first.
struct CreditAccount {
  int owner = -1;
  int capacity = 0;
  std::deque<double> births;
  std::uint64_t total_allocated = 0;
  std::uint64_t total_expired = 0;
  std::uint64_t total_used = 0;
  std::uint64_t total_bought = 0;
  std::uint64_t total_sold = 0;

  int balance() const { return static_cast<int>(births.size()); }
  // allocated + bought == balance + expired + used + sold
  bool counters_consistent() const;
  // Pre-load the wallet as if allocations had been running forever:
  // births staggered one interval apart ending at `now`.
  void seed_initial(int count, double now, double interval);
};

struct MarketState {
  int day = 1;
  double price = 0.1;       // $ per credit, fixed within a day
  double price_step = 1e-5; // $ per net credit of daily imbalance
  std::int64_t bought_today = 0;
  std::int64_t sold_today = 0;
};

// Eq-style fee wrappers: what a traveler receives for selling y credits and
// pays for buying y credits at the current price.
double sale_revenue(double amount, double price, const FeeSchedule& fees);
double purchase_cost(double amount, double price, const FeeSchedule& fees);

Transaction allocate_one(CreditAccount& acc, double now, int day, const TcsParams& tcs);
std::vector<Transaction> allocate(std::vector<CreditAccount>& accounts, double now, int day,
                                  const TcsParams& tcs);

struct ChargeOutcome {
  int charged = 0;       // credits consumed for the trip
  int bought = 0;        // credits bought at departure to cover the shortfall
  double buy_cost = 0.0; // $ paid for the shortfall, fees included
};

ChargeOutcome charge_trip(CreditAccount& acc, MarketState& market, const TollProfile& toll,
                          double t_dep, double distance_m, const TcsParams& tcs,
                          std::vector<Transaction>* log);

// A future trip as the seller predicts it: departure minute and toll credits.
struct TripForecast {
  double t_dep = 0.0;
  double credits = 0.0;
};

// Wallet trajectory the traveler expects after selling everything at `now`:
// re-accumulation at the allocation rate, minus predicted charges, capped by
// the wallet. One entry per forecast trip, evaluated at its departure.
std::vector<double> predicted_balances(double now, std::span<const TripForecast> horizon,
                                       const TcsParams& tcs);

// Profit of a sell-all at `now`: revenue on the current balance minus the
// predicted cost of buying back shortfalls at future departures.
double selling_profit(int balance, double now, std::span<const TripForecast> horizon,
                      double price, const TcsParams& tcs);

// Sell-now rule: profitable beyond the threshold, and either the wallet is
// full or some future trip is already predicted to be under-funded. When
// every trip is covered and the wallet still has room, waiting accumulates
// more credits to sell, so the answer is no.
bool should_sell(const CreditAccount& acc, double now, std::span<const TripForecast> horizon,
                 double price, const TcsParams& tcs);

Transaction sell_all(CreditAccount& acc, MarketState& market, double now, const TcsParams& tcs);

// Next day's price from today's net bought-minus-sold imbalance; floors at
// zero, resets the daily counters, and advances the day.
double update_price(MarketState& market);

struct DepartureCharge {
  int traveler = -1;
  double t_dep = 0.0;
  double distance_m = 0.0;
};

using HorizonFn = std::function<std::vector<TripForecast>(int traveler, double now)>;
using TransactionSink = std::function<void(const Transaction&)>;

// Per-tick market driver. Events inside a tick run in timestamp order:
// allocation instants and departure charges interleave by time. Every
// allocation instant triggers a sell check for all travelers; a departure
// triggers one for the departing traveler right after the charge.
class MarketWorld {
 public:
  MarketWorld(int traveler_count, const TcsParams& tcs, TollProfile toll, bool trading_enabled);

  void set_horizon_provider(HorizonFn fn) { horizon_ = std::move(fn); }
  void set_transaction_sink(TransactionSink sink) { sink_ = std::move(sink); }

  void begin_day(int day, double day_start);
  // `departures` must be sorted by t_dep; returns one outcome per departure.
  std::vector<ChargeOutcome> tick(double now, std::span<const DepartureCharge> departures);
  void end_day();

  const MarketState& state() const { return state_; }
  const std::vector<CreditAccount>& accounts() const { return accounts_; }
  const TollProfile& toll() const { return toll_; }
  bool trading_enabled() const { return trading_; }

  // Current-day activity; cleared by begin_day.
  const std::vector<Transaction>& trade_log() const { return trade_log_; }
  std::uint64_t allocated_credits() const { return allocated_credits_; }

 private:
  void sell_check(int traveler, double now);
  void emit(const Transaction& t);

  TcsParams tcs_;
  TollProfile toll_;
  bool trading_ = true;
  std::vector<CreditAccount> accounts_;
  MarketState state_;
  HorizonFn horizon_;
  TransactionSink sink_;
  std::vector<Transaction> trade_log_;   // buy/use/sell only
  std::uint64_t allocated_credits_ = 0;
  double next_alloc_ = 0.0;
  double day_end_ = 1440.0;
  int day_ = 1;
};

}  // namespace tcs
