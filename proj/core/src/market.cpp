#include "tcs/market.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tcs/io.hpp"

namespace tcs {
namespace {

constexpr double kEps = 1e-9;
constexpr double kDayMinutes = 1440.0;

double wrap_day(double minute) {
  double t = std::fmod(minute, kDayMinutes);
  if (t < 0) t += kDayMinutes;
  return t;
}

void check_horizon(double now, std::span<const TripForecast> horizon) {
  double prev = now;
  for (const TripForecast& f : horizon) {
    if (f.t_dep <= prev)
      throw std::invalid_argument("trip horizon must be strictly time-ordered after now");
    if (f.credits < 0) throw std::invalid_argument("trip horizon has a negative toll");
    prev = f.t_dep;
  }
}

}  // namespace

double TollProfile::at(double minute) const {
  const double t = wrap_day(minute);
  int idx = static_cast<int>(t / kBinMinutes);
  if (idx >= kBins) idx = kBins - 1;
  return credits_per_m[idx];
}

bool TollProfile::all_zero() const {
  for (double v : credits_per_m)
    if (v != 0.0) return false;
  return true;
}

std::string TollProfile::to_csv() const {
  std::ostringstream out;
  for (int b = 0; b < kBins; ++b)
    out << static_cast<int>(b * kBinMinutes) << ',' << format_double(credits_per_m[b]) << '\n';
  return out.str();
}

TollProfile TollProfile::from_csv(const std::string& text) {
  TollProfile p;
  std::istringstream in(text);
  std::string line;
  int b = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (first) {
      first = false;
      // tolerate a header line
      if (!f.empty() && f[0].find_first_not_of("0123456789.-") != std::string::npos) continue;
    }
    if (f.size() != 2) throw std::runtime_error("toll profile: expected 2 columns: '" + line + "'");
    if (b >= kBins) throw std::runtime_error("toll profile: more than 288 rows");
    const double start = std::stod(f[0]);
    if (std::abs(start - b * kBinMinutes) > 1e-6)
      throw std::runtime_error("toll profile: row " + std::to_string(b) + " has bin start " + f[0]);
    const double v = std::stod(f[1]);
    if (v < 0) throw std::runtime_error("toll profile: negative toll at row " + std::to_string(b));
    p.credits_per_m[b] = v;
    ++b;
  }
  if (b != kBins)
    throw std::runtime_error("toll profile: expected 288 rows, got " + std::to_string(b));
  return p;
}

int charge_credits(const TollProfile& toll, double t_dep, double distance_m,
                   const TcsParams& tcs) {
  if (distance_m < 0) throw std::invalid_argument("charge_credits: negative distance");
  const double raw = toll.at(t_dep) * distance_m;
  if (raw <= kEps) return 0;
  const int credits = static_cast<int>(std::ceil(raw - kEps));
  return std::min(credits, tcs.max_credits_per_trip);
}

const char* to_string(Transaction::Kind k) {
  switch (k) {
    case Transaction::Kind::allocation: return "allocation";
    case Transaction::Kind::buy: return "buy";
    case Transaction::Kind::use: return "use";
    case Transaction::Kind::sell: return "sell";
  }
  return "?";
}

bool CreditAccount::counters_consistent() const {
  return total_allocated + total_bought ==
         static_cast<std::uint64_t>(balance()) + total_expired + total_used + total_sold;
}

void CreditAccount::seed_initial(int count, double now, double interval) {
  if (count > capacity) throw std::invalid_argument("initial allocation exceeds wallet capacity");
  births.clear();
  for (int j = count - 1; j >= 0; --j) births.push_back(now - j * interval);
  total_allocated += static_cast<std::uint64_t>(count);
}

double sale_revenue(double amount, double price, const FeeSchedule& fees) {
  return amount * price * (1.0 - fees.prop_sell) - fees.fixed_sell;
}

double purchase_cost(double amount, double price, const FeeSchedule& fees) {
  return amount * price * (1.0 + fees.prop_buy) + fees.fixed_buy;
}

Transaction allocate_one(CreditAccount& acc, double now, int day, const TcsParams& tcs) {
  while (!acc.births.empty() && acc.births.front() + tcs.lifetime < now - kEps) {
    acc.births.pop_front();
    ++acc.total_expired;
  }
  const int n = tcs.credits_per_allocation();
  for (int i = 0; i < n; ++i) acc.births.push_back(now);
  acc.total_allocated += static_cast<std::uint64_t>(n);
  while (acc.balance() > acc.capacity) {
    acc.births.pop_front();
    ++acc.total_expired;
  }
  Transaction t;
  t.kind = Transaction::Kind::allocation;
  t.day = day;
  t.minute = now;
  t.traveler = acc.owner;
  t.amount = n;
  return t;
}

std::vector<Transaction> allocate(std::vector<CreditAccount>& accounts, double now, int day,
                                  const TcsParams& tcs) {
  std::vector<Transaction> out;
  out.reserve(accounts.size());
  for (CreditAccount& acc : accounts) out.push_back(allocate_one(acc, now, day, tcs));
  return out;
}

ChargeOutcome charge_trip(CreditAccount& acc, MarketState& market, const TollProfile& toll,
                          double t_dep, double distance_m, const TcsParams& tcs,
                          std::vector<Transaction>* log) {
  ChargeOutcome out;
  out.charged = charge_credits(toll, t_dep, distance_m, tcs);
  if (out.charged == 0) return out;

  const int have = acc.balance();
  if (have < out.charged) {
    out.bought = out.charged - have;
    out.buy_cost = purchase_cost(out.bought, market.price, tcs.fees);
    for (int i = 0; i < out.bought; ++i) acc.births.push_back(t_dep);
    acc.total_bought += static_cast<std::uint64_t>(out.bought);
    market.bought_today += out.bought;
    if (log) {
      Transaction t;
      t.kind = Transaction::Kind::buy;
      t.day = market.day;
      t.minute = t_dep;
      t.traveler = acc.owner;
      t.amount = out.bought;
      t.unit_price = market.price;
      t.fee = out.buy_cost - out.bought * market.price;
      log->push_back(t);
    }
  }
  for (int i = 0; i < out.charged; ++i) acc.births.pop_front();
  acc.total_used += static_cast<std::uint64_t>(out.charged);
  if (log) {
    Transaction t;
    t.kind = Transaction::Kind::use;
    t.day = market.day;
    t.minute = t_dep;
    t.traveler = acc.owner;
    t.amount = out.charged;
    log->push_back(t);
  }
  return out;
}

std::vector<double> predicted_balances(double now, std::span<const TripForecast> horizon,
                                       const TcsParams& tcs) {
  check_horizon(now, horizon);
  const double rate = tcs.allocation_rate;
  const double cap = static_cast<double>(tcs.wallet_capacity());
  std::vector<double> out;
  out.reserve(horizon.size());
  double prev_t = now;
  double carried = 0.0;  // balance right after the previous predicted charge
  for (size_t i = 0; i < horizon.size(); ++i) {
    const double grown = carried + (horizon[i].t_dep - prev_t) * rate;
    const double x = std::min(grown, cap);
    out.push_back(x);
    carried = std::max(x - horizon[i].credits, 0.0);
    prev_t = horizon[i].t_dep;
  }
  return out;
}

double selling_profit(int balance, double now, std::span<const TripForecast> horizon,
                      double price, const TcsParams& tcs) {
  if (balance < 0) throw std::invalid_argument("selling_profit: negative balance");
  double profit = sale_revenue(balance, price, tcs.fees);
  const std::vector<double> x = predicted_balances(now, horizon, tcs);
  for (size_t i = 0; i < horizon.size(); ++i) {
    if (horizon[i].credits > x[i] + kEps)
      profit -= purchase_cost(horizon[i].credits - x[i], price, tcs.fees);
  }
  return profit;
}

bool should_sell(const CreditAccount& acc, double now, std::span<const TripForecast> horizon,
                 double price, const TcsParams& tcs) {
  if (acc.balance() <= 0) return false;
  const double profit = selling_profit(acc.balance(), now, horizon, price, tcs);
  if (!(profit > tcs.profit_threshold)) return false;
  if (acc.balance() >= acc.capacity) return true;
  const std::vector<double> x = predicted_balances(now, horizon, tcs);
  for (size_t i = 0; i < horizon.size(); ++i)
    if (horizon[i].credits >= x[i] - kEps) return true;
  return false;
}

Transaction sell_all(CreditAccount& acc, MarketState& market, double now, const TcsParams& tcs) {
  const int amount = acc.balance();
  if (amount <= 0) throw std::logic_error("sell_all: empty account");
  const double revenue = sale_revenue(amount, market.price, tcs.fees);
  acc.births.clear();
  acc.total_sold += static_cast<std::uint64_t>(amount);
  market.sold_today += amount;
  Transaction t;
  t.kind = Transaction::Kind::sell;
  t.day = market.day;
  t.minute = now;
  t.traveler = acc.owner;
  t.amount = amount;
  t.unit_price = market.price;
  t.fee = amount * market.price - revenue;
  return t;
}

double update_price(MarketState& market) {
  const double z = static_cast<double>(market.bought_today - market.sold_today);
  market.price = std::max(market.price + market.price_step * z, 0.0);
  market.bought_today = 0;
  market.sold_today = 0;
  ++market.day;
  return market.price;
}

MarketWorld::MarketWorld(int traveler_count, const TcsParams& tcs, TollProfile toll,
                         bool trading_enabled)
    : tcs_(tcs), toll_(toll), trading_(trading_enabled) {
  accounts_.reserve(traveler_count);
  for (int i = 0; i < traveler_count; ++i) {
    CreditAccount acc;
    acc.owner = i;
    acc.capacity = tcs.wallet_capacity();
    accounts_.push_back(std::move(acc));
  }
  state_.price = tcs.initial_price;
  state_.price_step = tcs.price_step;
}

void MarketWorld::emit(const Transaction& t) {
  if (t.kind != Transaction::Kind::allocation) trade_log_.push_back(t);
  if (sink_) sink_(t);
}

void MarketWorld::begin_day(int day, double day_start) {
  if (day != day_) throw std::logic_error("MarketWorld: days must advance sequentially");
  trade_log_.clear();
  allocated_credits_ = 0;
  day_end_ = day_start + kDayMinutes;
  if (day == 1) {
    for (CreditAccount& acc : accounts_) {
      acc.seed_initial(tcs_.initial_allocation, day_start, tcs_.allocation_interval);
      Transaction t;
      t.kind = Transaction::Kind::allocation;
      t.day = day;
      t.minute = day_start;
      t.traveler = acc.owner;
      t.amount = tcs_.initial_allocation;
      allocated_credits_ += static_cast<std::uint64_t>(t.amount);
      if (sink_) sink_(t);
    }
    next_alloc_ = day_start + tcs_.allocation_interval;
  } else {
    next_alloc_ = day_start;
  }
}

std::vector<ChargeOutcome> MarketWorld::tick(double now,
                                             std::span<const DepartureCharge> departures) {
  std::vector<ChargeOutcome> outcomes;
  outcomes.reserve(departures.size());
  std::size_t di = 0;
  double prev_t = -1e300;

  auto process_departure = [&](const DepartureCharge& d) {
    if (d.t_dep < prev_t - kEps)
      throw std::invalid_argument("tick departures must be sorted by departure time");
    prev_t = d.t_dep;
    std::vector<Transaction> log;
    ChargeOutcome oc =
        charge_trip(accounts_.at(d.traveler), state_, toll_, d.t_dep, d.distance_m, tcs_, &log);
    for (const Transaction& t : log) emit(t);
    outcomes.push_back(oc);
    if (trading_) sell_check(d.traveler, d.t_dep);
  };

  while (next_alloc_ <= now + kEps && next_alloc_ < day_end_ - kEps) {
    while (di < departures.size() && departures[di].t_dep < next_alloc_ - kEps)
      process_departure(departures[di++]);
    for (CreditAccount& acc : accounts_) {
      Transaction t = allocate_one(acc, next_alloc_, state_.day, tcs_);
      allocated_credits_ += static_cast<std::uint64_t>(t.amount);
      if (sink_) sink_(t);
    }
    // Departures landing exactly on the allocation instant pay before the
    // wallet-wide sell sweep: buys and uses precede sells within an instant.
    while (di < departures.size() && departures[di].t_dep <= next_alloc_ + kEps)
      process_departure(departures[di++]);
    if (trading_)
      for (CreditAccount& acc : accounts_) sell_check(acc.owner, next_alloc_);
    next_alloc_ += tcs_.allocation_interval;
  }
  while (di < departures.size()) process_departure(departures[di++]);
  return outcomes;
}

void MarketWorld::sell_check(int traveler, double now) {
  CreditAccount& acc = accounts_.at(traveler);
  if (acc.balance() <= 0) return;
  std::vector<TripForecast> horizon =
      horizon_ ? horizon_(traveler, now) : std::vector<TripForecast>{};
  if (should_sell(acc, now, horizon, state_.price, tcs_)) {
    emit(sell_all(acc, state_, now, tcs_));
  }
}

void MarketWorld::end_day() {
  update_price(state_);
  ++day_;
}

}  // namespace tcs
