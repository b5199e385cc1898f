#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "tcs/daytoday.hpp"
#include "tcs/metrics.hpp"
#include "tcs/scenario.hpp"

namespace {

tcs::TripRecord trip(int traveler, double t_dep, double tt, double ff, double dist) {
  tcs::TripRecord r;
  r.traveler = traveler;
  r.t_dep = t_dep;
  r.arrival = t_dep + tt;
  r.tt_minutes = tt;
  r.tt_ff = ff;
  r.distance_m = dist;
  return r;
}

tcs::Transaction tx(tcs::Transaction::Kind kind, int traveler, double minute, int amount,
                    double price, double fee) {
  tcs::Transaction t;
  t.kind = kind;
  t.traveler = traveler;
  t.minute = minute;
  t.amount = amount;
  t.unit_price = price;
  t.fee = fee;
  return t;
}

tcs::Experiment tiny_experiment() {
  tcs::ScenarioConfig cfg;
  cfg.grid.rows = 3;
  cfg.grid.cols = 3;
  cfg.population_size = 10;
  cfg.days = 2;
  cfg.seed = 12;
  return tcs::Experiment::build(cfg);
}

tcs::RunResult one_day_run(std::vector<tcs::TripRecord> trips, double price) {
  tcs::DayResult d;
  d.day = 1;
  d.price = price;
  d.trips = std::move(trips);
  tcs::RunResult r;
  r.days.push_back(std::move(d));
  return r;
}

}  // namespace

TEST_CASE("travel time index weights bins by distance") {
  std::vector<tcs::TripRecord> trips = {
      trip(0, 480.0, 2.0, 2.0, 1000.0),   // at free flow
      trip(1, 481.0, 6.0, 2.0, 1000.0),   // three times free flow, same bin
      trip(2, 485.0, 4.0, 2.0, 3000.0),   // twice free flow, next bin
  };
  tcs::TtiProfile p = tcs::weighted_tti(trips);

  CHECK(p.by_bin[96] == 2.0);  // equal distances average the ratios
  CHECK(p.by_bin[97] == 2.0);
  CHECK(p.weight[96] == 2000.0);
  CHECK(p.weight[97] == 3000.0);
  CHECK(p.by_bin[95] == 0.0);
  CHECK(p.overall == (1000.0 * 1.0 + 1000.0 * 3.0 + 3000.0 * 2.0) / 5000.0);

  // Heavier distance pulls the aggregate toward its ratio.
  std::vector<tcs::TripRecord> skew = {
      trip(0, 480.0, 2.0, 2.0, 3000.0),
      trip(1, 481.0, 6.0, 2.0, 1000.0),
  };
  CHECK(tcs::weighted_tti(skew).overall == 1.5);

  CHECK(tcs::weighted_tti({}).overall == 1.0);

  std::vector<tcs::TripRecord> bad = {trip(0, 480.0, 2.0, 0.0, 1000.0)};
  CHECK_THROWS(tcs::weighted_tti(bad));
}

TEST_CASE("departure histogram counts by five-minute bin") {
  std::vector<tcs::TripRecord> trips = {
      trip(0, 480.0, 1.0, 1.0, 1.0),
      trip(1, 482.0, 1.0, 1.0, 1.0),
      trip(2, 485.0, 1.0, 1.0, 1.0),
      trip(3, 1440.0 + 5.0, 1.0, 1.0, 1.0),  // wraps to the next day's bin 1
  };
  std::array<int, 288> h = tcs::departure_histogram(trips);
  CHECK(h[96] == 2);
  CHECK(h[97] == 1);
  CHECK(h[1] == 1);
  CHECK(std::accumulate(h.begin(), h.end(), 0) == 4);
}

TEST_CASE("trip utility prices the charge at the day's credit price") {
  tcs::TravelerBetas betas{-0.03, -0.2, -0.1, -0.4};
  tcs::TripRecord t = trip(0, 480.0, 10.0, 8.0, 1000.0);
  t.sde_minutes = 5.0;
  t.charged_credits = 3;
  t.path_attr_utility = 0.3;
  CHECK(tcs::trip_utility(t, betas, 0.1) ==
        doctest::Approx(-0.03 * 10.0 - 0.1 * 5.0 - 0.2 * 0.3 + 0.3));
  // A free day makes the charge term vanish.
  CHECK(tcs::trip_utility(t, betas, 0.0) == doctest::Approx(-0.03 * 10.0 - 0.1 * 5.0 + 0.3));
}

TEST_CASE("schedule delay costs average within preferred-arrival bins") {
  std::vector<tcs::Traveler> pop(1);
  pop[0].id = 0;
  pop[0].vot = 0.2;
  pop[0].sde_rate = 0.1;
  pop[0].sdl_rate = 0.4;

  tcs::TripRecord early = trip(0, 470.0, 10.0, 10.0, 1000.0);
  early.t_star = 480.0;
  early.sde_minutes = 10.0;
  tcs::TripRecord late = trip(0, 490.0, 10.0, 10.0, 1000.0);
  late.t_star = 490.0;
  late.sdl_minutes = 5.0;
  tcs::TripRecord exact = trip(0, 995.0, 10.0, 10.0, 1000.0);
  exact.t_star = 1000.0;

  std::vector<tcs::ScheduleDelayBin> bins =
      tcs::schedule_delay_costs({early, late, exact}, pop);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].bin_start_min == 480);
  CHECK(bins[0].trips == 2);
  CHECK(bins[0].early_usd_per_trip == doctest::Approx(0.5));  // ($1 + $0) / 2
  CHECK(bins[0].late_usd_per_trip == doctest::Approx(1.0));   // ($0 + $2) / 2
  CHECK(bins[1].bin_start_min == 990);
  CHECK(bins[1].trips == 1);
  CHECK(bins[1].early_usd_per_trip == 0.0);
  CHECK(bins[1].late_usd_per_trip == 0.0);
}

TEST_CASE("sell profile groups sales into half-hour bins") {
  std::vector<tcs::Transaction> trades = {
      tx(tcs::Transaction::Kind::sell, 0, 125.0, 10, 0.1, 0.0),
      tx(tcs::Transaction::Kind::sell, 1, 140.0, 20, 0.1, 0.0),
      tx(tcs::Transaction::Kind::buy, 2, 130.0, 50, 0.1, 0.0),   // ignored
      tx(tcs::Transaction::Kind::use, 3, 131.0, 50, 0.1, 0.0),   // ignored
      tx(tcs::Transaction::Kind::sell, 4, 1000.0, 7, 0.1, 0.0),
  };
  std::vector<tcs::SellProfileBin> bins = tcs::sell_profile(trades);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].bin_start_min == 120);
  CHECK(bins[0].sells == 2);
  CHECK(bins[0].mean_credits == 15.0);
  CHECK(bins[1].bin_start_min == 990);
  CHECK(bins[1].sells == 1);
  CHECK(bins[1].mean_credits == 7.0);
}

TEST_CASE("trade statistics track buybacks per traveler") {
  CHECK(tcs::transaction_stats({}).buys == 0);
  CHECK(tcs::transaction_stats({}).buyback_travelers == 0);

  std::vector<tcs::Transaction> trades = {
      tx(tcs::Transaction::Kind::buy, 2, 50.0, 2, 0.1, 0.0),     // buy before any sell
      tx(tcs::Transaction::Kind::sell, 1, 100.0, 10, 0.1, 0.2),
      tx(tcs::Transaction::Kind::buy, 1, 200.0, 4, 0.1, 0.05),   // buyback
      tx(tcs::Transaction::Kind::buy, 1, 250.0, 1, 0.1, 0.0),    // second buyback, same person
      tx(tcs::Transaction::Kind::sell, 2, 300.0, 5, 0.1, 0.0),
      tx(tcs::Transaction::Kind::use, 1, 310.0, 3, 0.0, 0.0),    // uses never count
  };
  tcs::TradeStats s = tcs::transaction_stats(trades);
  CHECK(s.buys == 3);
  CHECK(s.sells == 2);
  CHECK(s.buyback_buys == 2);
  CHECK(s.buyback_travelers == 1);  // traveler 2 bought before selling
  CHECK(s.credits_bought == 7);
  CHECK(s.credits_sold == 15);
  CHECK(s.buyer_spend == doctest::Approx(0.2 + 0.45 + 0.1));
  CHECK(s.seller_revenue == doctest::Approx(0.8 + 0.5));
  CHECK(s.fee_total == doctest::Approx(0.25));
}

TEST_CASE("welfare is zero when the toll is a pure transfer") {
  tcs::Experiment exp = tiny_experiment();

  tcs::TripRecord t = trip(0, 480.0, 10.0, 10.0, 1000.0);
  t.path_attr_utility = 0.3;
  tcs::RunResult base = one_day_run({t}, 0.1);

  // Same trip, now paying 5 credits: the charge comes back as revenue.
  tcs::TripRecord charged = t;
  charged.charged_credits = 5;
  tcs::RunResult tolled = one_day_run({charged}, 0.1);

  tcs::WelfareReport rep = tcs::social_welfare(exp, tolled, base, 1);
  CHECK(std::abs(rep.social_welfare) <= 1e-9);
  CHECK(rep.toll_revenue == doctest::Approx(0.5));
  CHECK(rep.mean_utility_tolled < rep.mean_utility_base);  // traveler paid
}

TEST_CASE("welfare converts schedule-delay savings to dollars") {
  tcs::Experiment exp = tiny_experiment();

  tcs::TripRecord worse = trip(0, 480.0, 10.0, 10.0, 1000.0);
  worse.sde_minutes = 10.0;
  tcs::RunResult base = one_day_run({worse}, 0.1);

  tcs::TripRecord better = worse;
  better.sde_minutes = 0.0;
  tcs::RunResult tolled = one_day_run({better}, 0.1);

  // Ten minutes of early-arrival loss at the traveler's own early rate.
  tcs::WelfareReport rep = tcs::social_welfare(exp, tolled, base, 1);
  CHECK(rep.social_welfare == doctest::Approx(10.0 * exp.population[0].sde_rate));
  CHECK(rep.social_welfare > 0.0);
  CHECK(rep.toll_revenue == 0.0);

  CHECK_THROWS(tcs::social_welfare(exp, tcs::RunResult{}, base, 1));
}

TEST_CASE("per-day welfare matches the windowed mean") {
  tcs::Experiment exp = tiny_experiment();

  std::vector<double> deltas = {10.0, 4.0, 0.0};
  tcs::RunResult base, tolled;
  for (size_t d = 0; d < deltas.size(); ++d) {
    tcs::TripRecord b = trip(0, 480.0, 10.0, 10.0, 1000.0);
    b.sde_minutes = deltas[d];
    tcs::DayResult db;
    db.day = static_cast<int>(d) + 1;
    db.price = 0.1;
    db.trips = {b};
    base.days.push_back(db);

    tcs::TripRecord t = b;
    t.sde_minutes = 0.0;
    tcs::DayResult dt = db;
    dt.trips = {t};
    tolled.days.push_back(dt);
  }

  std::vector<double> daily = tcs::daily_welfare(exp, tolled, base);
  REQUIRE(daily.size() == 3);
  const double rate = exp.population[0].sde_rate;
  CHECK(daily[0] == doctest::Approx(10.0 * rate));
  CHECK(daily[1] == doctest::Approx(4.0 * rate));
  CHECK(daily[2] == doctest::Approx(0.0));

  tcs::WelfareReport all = tcs::social_welfare(exp, tolled, base, 0);
  double mean = (daily[0] + daily[1] + daily[2]) / 3.0;
  CHECK(all.social_welfare == doctest::Approx(mean));

  tcs::WelfareReport last = tcs::social_welfare(exp, tolled, base, 1);
  CHECK(last.social_welfare == doctest::Approx(daily[2]));
}

TEST_CASE("market equilibrium summarizes imbalance and drift") {
  tcs::RunResult run;
  const std::int64_t bought[] = {100, 50, 80};
  const std::int64_t sold[] = {90, 60, 80};
  const double price[] = {0.10, 0.11, 0.12};
  for (int d = 0; d < 3; ++d) {
    tcs::DayResult day;
    day.day = d + 1;
    day.bought = bought[d];
    day.sold = sold[d];
    day.price = price[d];
    run.days.push_back(day);
  }

  tcs::MarketEquilibrium two = tcs::market_equilibrium(run, 2);
  CHECK(two.imbalance_share == doctest::Approx(10.0 / 130.0));
  CHECK(two.price_drift == doctest::Approx(0.01 / 0.11));

  tcs::MarketEquilibrium all = tcs::market_equilibrium(run, 0);
  CHECK(all.imbalance_share == doctest::Approx(20.0 / 230.0));
  CHECK(all.price_drift == doctest::Approx(0.2));

  CHECK(tcs::market_equilibrium(tcs::RunResult{}, 5).imbalance_share == 0.0);

  run.days[0].price = 0.0;
  run.days[1].price = 0.05;
  run.days[2].price = 0.05;
  tcs::MarketEquilibrium from_zero = tcs::market_equilibrium(run, 0);
  CHECK(from_zero.price_drift == 1e18);  // started free, ended priced
}
