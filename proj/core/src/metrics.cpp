#include "tcs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tcs {
namespace {

int tod_bin(double minute) {
  double tod = std::fmod(minute, 1440.0);
  if (tod < 0.0) tod += 1440.0;
  return std::clamp(static_cast<int>(tod / 5.0), 0, 287);
}

}  // namespace

TtiProfile weighted_tti(const std::vector<TripRecord>& trips) {
  TtiProfile p;
  std::array<double, 288> num{};
  double total_num = 0.0, total_w = 0.0;
  for (const TripRecord& t : trips) {
    if (t.tt_ff <= 0.0) throw std::invalid_argument("trip with non-positive free-flow time");
    int b = tod_bin(t.t_dep);
    double ratio = t.tt_minutes / t.tt_ff;
    num[b] += t.distance_m * ratio;
    p.weight[b] += t.distance_m;
    total_num += t.distance_m * ratio;
    total_w += t.distance_m;
  }
  for (int b = 0; b < 288; ++b) p.by_bin[b] = p.weight[b] > 0.0 ? num[b] / p.weight[b] : 0.0;
  p.overall = total_w > 0.0 ? total_num / total_w : 1.0;
  return p;
}

std::array<int, 288> departure_histogram(const std::vector<TripRecord>& trips) {
  std::array<int, 288> h{};
  for (const TripRecord& t : trips) ++h[tod_bin(t.t_dep)];
  return h;
}

double trip_utility(const TripRecord& trip, const TravelerBetas& betas, double price) {
  return betas.tt * trip.tt_minutes + betas.sde * trip.sde_minutes +
         betas.sdl * trip.sdl_minutes + betas.cost * (trip.charged_credits * price) +
         trip.path_attr_utility;
}

std::vector<ScheduleDelayBin> schedule_delay_costs(const std::vector<TripRecord>& trips,
                                                   const std::vector<Traveler>& population) {
  std::array<ScheduleDelayBin, 48> bins{};
  for (const TripRecord& t : trips) {
    double tod = std::fmod(t.t_star, 1440.0);
    if (tod < 0.0) tod += 1440.0;
    int b = std::clamp(static_cast<int>(tod / 30.0), 0, 47);
    const Traveler& tr = population.at(static_cast<std::size_t>(t.traveler));
    bins[b].trips += 1;
    bins[b].early_usd_per_trip += tr.sde_rate * t.sde_minutes;
    bins[b].late_usd_per_trip += tr.sdl_rate * t.sdl_minutes;
  }
  std::vector<ScheduleDelayBin> out;
  for (int b = 0; b < 48; ++b) {
    if (bins[b].trips == 0) continue;
    bins[b].bin_start_min = b * 30;
    bins[b].early_usd_per_trip /= bins[b].trips;
    bins[b].late_usd_per_trip /= bins[b].trips;
    out.push_back(bins[b]);
  }
  return out;
}

std::vector<SellProfileBin> sell_profile(const std::vector<Transaction>& trades) {
  std::array<SellProfileBin, 48> bins{};
  for (const Transaction& t : trades) {
    if (t.kind != Transaction::Kind::sell) continue;
    double tod = std::fmod(t.minute, 1440.0);
    if (tod < 0.0) tod += 1440.0;
    int b = std::clamp(static_cast<int>(tod / 30.0), 0, 47);
    bins[b].sells += 1;
    bins[b].mean_credits += t.amount;
  }
  std::vector<SellProfileBin> out;
  for (int b = 0; b < 48; ++b) {
    if (bins[b].sells == 0) continue;
    bins[b].bin_start_min = b * 30;
    bins[b].mean_credits /= bins[b].sells;
    out.push_back(bins[b]);
  }
  return out;
}

TradeStats transaction_stats(const std::vector<Transaction>& trades) {
  TradeStats s;
  std::set<int> sold_today, bought_back;
  for (const Transaction& t : trades) {
    switch (t.kind) {
      case Transaction::Kind::buy:
        ++s.buys;
        if (sold_today.count(t.traveler)) {
          ++s.buyback_buys;
          bought_back.insert(t.traveler);
        }
        s.credits_bought += static_cast<std::int64_t>(t.amount);
        s.buyer_spend += t.amount * t.unit_price + t.fee;
        s.fee_total += t.fee;
        break;
      case Transaction::Kind::sell:
        ++s.sells;
        sold_today.insert(t.traveler);
        s.credits_sold += static_cast<std::int64_t>(t.amount);
        s.seller_revenue += t.amount * t.unit_price - t.fee;
        s.fee_total += t.fee;
        break;
      default:
        break;
    }
  }
  s.buyback_travelers = static_cast<int>(bought_back.size());
  return s;
}

namespace {

struct DayWelfare {
  double welfare = 0.0;   // $ summed over travelers
  double revenue = 0.0;   // $ of credits charged at the day's price
  double mean_u_tolled = 0.0;
  double mean_u_base = 0.0;
};

std::vector<TravelerBetas> all_betas(const Experiment& exp) {
  std::vector<TravelerBetas> betas(exp.population.size());
  for (std::size_t i = 0; i < betas.size(); ++i)
    betas[i] = betas_for(exp.config.choice, exp.population[i]);
  return betas;
}

DayWelfare one_day_welfare(const std::vector<TravelerBetas>& betas, const DayResult& dt,
                           const DayResult& db) {
  const int travelers = static_cast<int>(betas.size());
  std::vector<double> u_toll(travelers, 0.0), u_base(travelers, 0.0), money(travelers, 0.0);
  for (const TripRecord& t : dt.trips) {
    u_toll[t.traveler] += trip_utility(t, betas[t.traveler], dt.price);
    money[t.traveler] += t.charged_credits * dt.price;
  }
  for (const TripRecord& t : db.trips)
    u_base[t.traveler] += trip_utility(t, betas[t.traveler], db.price);

  DayWelfare w;
  double ut = 0.0, ub = 0.0;
  for (int i = 0; i < travelers; ++i) {
    w.welfare += (u_toll[i] - betas[i].cost * money[i] - u_base[i]) / std::abs(betas[i].cost);
    w.revenue += money[i];
    ut += u_toll[i];
    ub += u_base[i];
  }
  w.mean_u_tolled = travelers > 0 ? ut / travelers : 0.0;
  w.mean_u_base = travelers > 0 ? ub / travelers : 0.0;
  return w;
}

}  // namespace

WelfareReport social_welfare(const Experiment& exp, const RunResult& tolled,
                             const RunResult& base, int window) {
  if (tolled.days.empty() || base.days.empty())
    throw std::invalid_argument("social_welfare needs non-empty runs");
  std::size_t days = std::min(tolled.days.size(), base.days.size());
  std::size_t n = std::min<std::size_t>(days, window > 0 ? static_cast<std::size_t>(window) : days);

  std::vector<TravelerBetas> betas = all_betas(exp);
  WelfareReport rep;
  for (std::size_t k = days - n; k < days; ++k) {
    DayWelfare w = one_day_welfare(betas, tolled.days[k], base.days[k]);
    rep.social_welfare += w.welfare;
    rep.toll_revenue += w.revenue;
    rep.mean_utility_tolled += w.mean_u_tolled;
    rep.mean_utility_base += w.mean_u_base;
  }
  rep.social_welfare /= static_cast<double>(n);
  rep.toll_revenue /= static_cast<double>(n);
  rep.mean_utility_tolled /= static_cast<double>(n);
  rep.mean_utility_base /= static_cast<double>(n);
  return rep;
}

std::vector<double> daily_welfare(const Experiment& exp, const RunResult& tolled,
                                  const RunResult& base) {
  std::size_t days = std::min(tolled.days.size(), base.days.size());
  std::vector<TravelerBetas> betas = all_betas(exp);
  std::vector<double> out(days);
  for (std::size_t k = 0; k < days; ++k)
    out[k] = one_day_welfare(betas, tolled.days[k], base.days[k]).welfare;
  return out;
}

MarketEquilibrium market_equilibrium(const RunResult& run, int window) {
  MarketEquilibrium eq;
  if (run.days.empty()) return eq;
  std::size_t n = std::min<std::size_t>(run.days.size(),
                                        window > 0 ? static_cast<std::size_t>(window) : run.days.size());
  double imbalance = 0.0, bought = 0.0;
  for (std::size_t k = run.days.size() - n; k < run.days.size(); ++k) {
    imbalance += std::abs(static_cast<double>(run.days[k].bought - run.days[k].sold));
    bought += static_cast<double>(run.days[k].bought);
  }
  eq.imbalance_share = bought > 0.0 ? imbalance / bought : 0.0;
  double p0 = run.days[run.days.size() - n].price;
  double p1 = run.days.back().price;
  eq.price_drift = p0 > 0.0 ? std::abs(p1 - p0) / p0 : (p1 > 0.0 ? 1e18 : 0.0);
  return eq;
}

}  // namespace tcs
