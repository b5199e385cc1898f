#include "tcs/daytoday.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tcs/io.hpp"
#include "tcs/random.hpp"

namespace tcs {
namespace {

constexpr double kEps = 1e-9;
constexpr double kDay = 1440.0;

int tod_bin(double minute) {
  double tod = std::fmod(minute, kDay);
  if (tod < 0.0) tod += kDay;
  int bin = static_cast<int>(tod / 5.0);
  return std::clamp(bin, 0, 287);
}

}  // namespace

LinkTravelTimeTable::LinkTravelTimeTable(const Network& net) : net_(&net) {
  ff_.resize(net.segment_count());
  tt_.resize(net.segment_count());
  for (int s = 0; s < net.segment_count(); ++s) {
    ff_[s] = net.segment(s).free_flow_minutes();
    tt_[s].fill(ff_[s]);
  }
}

double LinkTravelTimeTable::minutes(int segment, double minute) const {
  return tt_.at(segment)[tod_bin(minute)];
}

double LinkTravelTimeTable::predict_path_tt(const Path& path, double t_dep) const {
  double clock = t_dep;
  for (int s : path.segments) clock += minutes(s, clock);
  return clock - t_dep;
}

void LinkTravelTimeTable::smooth(const DayLinkTimes& observed, double rate) {
  if (observed.segment_count != static_cast<int>(tt_.size()))
    throw std::invalid_argument("observations belong to a different network");
  if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("smoothing rate must be in [0, 1]");
  for (std::size_t s = 0; s < tt_.size(); ++s) {
    for (int b = 0; b < 288; ++b) {
      if (observed.count[s][b] == 0) continue;
      double mixed = (1.0 - rate) * tt_[s][b] + rate * observed.mean(static_cast<int>(s), b);
      tt_[s][b] = std::max(mixed, ff_[s]);
    }
  }
}

void LinkTravelTimeTable::reset() {
  for (std::size_t s = 0; s < tt_.size(); ++s) tt_[s].fill(ff_[s]);
}

double prediction_inconsistency(const std::vector<TripRecord>& trips) {
  if (trips.empty()) throw std::invalid_argument("prediction_inconsistency: no trips");
  double gap = 0.0, total = 0.0;
  for (const TripRecord& t : trips) {
    gap += std::abs(t.tt_minutes - t.tt_pre);
    total += t.tt_minutes;
  }
  return total > 0.0 ? gap / total : 0.0;
}

double relative_spread(const std::vector<double>& values, int window) {
  if (values.empty() || window <= 0) return 0.0;
  std::size_t n = std::min<std::size_t>(values.size(), static_cast<std::size_t>(window));
  double mean = 0.0;
  for (std::size_t i = values.size() - n; i < values.size(); ++i) mean += values[i];
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = values.size() - n; i < values.size(); ++i)
    var += (values[i] - mean) * (values[i] - mean);
  double sd = std::sqrt(var / static_cast<double>(n));
  if (std::abs(mean) < 1e-12) return sd > 0.0 ? 1e18 : 0.0;
  return sd / std::abs(mean);
}

Experiment Experiment::build(const ScenarioConfig& cfg, const std::string& choice_set_cache) {
  cfg.validate();
  Experiment e;
  e.config = cfg;
  Rng root(cfg.seed);
  Rng net_rng = root.fork("network");
  e.net = generate_grid_network(cfg.grid.rows, cfg.grid.cols, cfg.grid, net_rng);
  e.network_hash = hash_bytes(e.net.to_csv());
  Rng pop_rng = root.fork("population");
  e.population = synthesize_population(cfg, pop_rng);

  std::set<std::pair<int, int>> ods;
  for (const Traveler& t : e.population)
    for (const Trip& trip : t.trips) ods.insert({trip.origin, trip.destination});

  if (!choice_set_cache.empty()) {
    auto cached = load_choice_sets(choice_set_cache, e.network_hash, e.net);
    if (cached) e.choice_sets = std::move(*cached);
  }
  bool built_any = false;
  ChoiceSetParams cs_params;
  for (const auto& od : ods) {
    if (e.choice_sets.count(od)) continue;
    e.choice_sets[od] = build_choice_set(e.net, od.first, od.second, cs_params);
    built_any = true;
  }
  if (!choice_set_cache.empty() && built_any)
    save_choice_sets(choice_set_cache, e.network_hash, e.choice_sets);
  return e;
}

const ChoiceSet& Experiment::choice_set(int origin, int destination) const {
  auto it = choice_sets.find({origin, destination});
  if (it == choice_sets.end())
    throw std::out_of_range("no choice set for od " + std::to_string(origin) + "->" +
                            std::to_string(destination));
  return it->second;
}

namespace {

struct TripStatic {
  const ChoiceSet* set = nullptr;
  const Path* fast = nullptr;  // lowest free-flow time alternative
};

struct Planned {
  bool chosen = false;
  bool departed = false;
  double t_dep = 0.0;
  double tt_pre = 0.0;
  double t_star = 0.0;  // absolute minute
  const Path* path = nullptr;
  int path_ordinal = 0;
  double attr = 0.0;
  int charged = 0;
  int bought = 0;
};

struct TravelerDay {
  std::vector<Planned> plan;
  double prev_arrival = 0.0;
  int next_choice = 0;
};

}  // namespace

RunResult run_experiment(const Experiment& exp, const RunOptions& opt) {
  const ScenarioConfig& cfg = exp.config;
  const int n_days = opt.days > 0 ? opt.days : cfg.days;
  const bool trading = opt.trading ? *opt.trading : !opt.toll.all_zero();
  const TollProfile& toll = opt.toll;
  const TollProfile* choice_toll = toll.all_zero() ? nullptr : &toll;
  const int n = static_cast<int>(exp.population.size());

  std::vector<TravelerBetas> betas(n);
  std::vector<std::vector<TripStatic>> statics(n);
  for (int i = 0; i < n; ++i) {
    const Traveler& t = exp.population[i];
    betas[i] = betas_for(cfg.choice, t);
    statics[i].reserve(t.trips.size());
    for (const Trip& trip : t.trips) {
      TripStatic ts;
      ts.set = &exp.choice_set(trip.origin, trip.destination);
      for (std::size_t j = 0; j < ts.set->paths.size(); ++j)
        if (ts.set->min_tt[j]) ts.fast = &ts.set->paths[j];
      statics[i].push_back(ts);
    }
  }

  LinkTravelTimeTable table(exp.net);
  MarketWorld market(n, cfg.tcs, toll, trading);
  if (opt.sink) market.set_transaction_sink(opt.sink);
  Rng root(cfg.seed);

  std::vector<TravelerDay> states(n);
  double day_start = 0.0;

  // First-guess departure for a trip that has not been planned yet: aim at
  // the preferred arrival using the forecast on the fastest alternative.
  auto estimate_depart = [&](int tid, int trip_idx) {
    const Trip& trip = exp.population[tid].trips[trip_idx];
    const TripStatic& ts = statics[tid][trip_idx];
    double t_star = day_start + trip.preferred_arrival;
    double tt = table.predict_path_tt(*ts.fast, t_star - ts.fast->ff_minutes);
    return t_star - tt;
  };

  market.set_horizon_provider([&](int tid, double now) {
    std::vector<TripForecast> h;
    const TravelerDay& st = states[tid];
    for (std::size_t i = 0; i < st.plan.size(); ++i) {
      const Planned& pl = st.plan[i];
      double t = pl.chosen ? pl.t_dep : estimate_depart(tid, static_cast<int>(i));
      double dist = pl.chosen ? pl.path->distance_m : statics[tid][i].fast->distance_m;
      double g = charge_credits(toll, t, dist, cfg.tcs);
      if (!pl.departed && t > now + kEps) h.push_back({t, g});
      h.push_back({t + kDay, g});  // tomorrow's copy of today's plan
    }
    std::sort(h.begin(), h.end(),
              [](const TripForecast& a, const TripForecast& b) { return a.t_dep < b.t_dep; });
    double prev = now;
    for (TripForecast& f : h) {
      if (f.t_dep <= prev) f.t_dep = prev + 1e-6;
      prev = f.t_dep;
    }
    return h;
  });

  auto predictor = [&table](const Path& p, double t) { return table.predict_path_tt(p, t); };

  RunResult result;
  std::vector<double> day_utils;

  for (int day = 1; day <= n_days; ++day) {
    day_start = (day - 1) * kDay;
    const double day_end = day_start + kDay;

    std::vector<Rng> day_rngs;
    day_rngs.reserve(n);
    for (int tid = 0; tid < n; ++tid)
      day_rngs.push_back(root.fork("choice", static_cast<std::uint64_t>(day),
                                   static_cast<std::uint64_t>(tid)));
    for (int tid = 0; tid < n; ++tid) {
      states[tid] = TravelerDay{};
      states[tid].plan.assign(exp.population[tid].trips.size(), Planned{});
      states[tid].prev_arrival = day_start;
    }

    market.begin_day(day, day_start);
    Engine engine(exp.net, cfg.supply, day, day_start);
    using Due = std::tuple<double, int, int>;  // departure, traveler, trip
    std::priority_queue<Due, std::vector<Due>, std::greater<>> due;

    auto make_choice = [&](int tid) {
      TravelerDay& st = states[tid];
      int i = st.next_choice++;
      const Trip& trip = exp.population[tid].trips[i];
      const TripStatic& ts = statics[tid][i];
      double t_star = day_start + trip.preferred_arrival;
      double earliest = day_start;
      if (i > 0)
        earliest = std::max(st.prev_arrival + trip.preceding_activity_min, engine.now());
      double tt_guess = table.predict_path_tt(*ts.fast, t_star - ts.fast->ff_minutes);
      TimeWindow w = build_time_window(t_star, tt_guess, earliest, cfg.choice);
      ChoiceOutcome oc =
          sample_trip_choice(*ts.set, w, betas[tid], cfg.choice, t_star, choice_toll,
                             market.state().price, predictor, day_rngs[tid]);
      Planned& pl = st.plan[i];
      pl.chosen = true;
      pl.t_dep = oc.chosen.t_dep;
      pl.tt_pre = oc.chosen.tt_pre;
      pl.t_star = t_star;
      pl.path_ordinal = oc.chosen.path_ordinal;
      pl.path = &ts.set->paths[pl.path_ordinal];
      pl.attr = oc.path_attr_utility;
      engine.schedule({tid, i, pl.path, pl.t_dep});
      due.emplace(pl.t_dep, tid, i);
    };

    for (int tid = 0; tid < n; ++tid)
      if (!exp.population[tid].trips.empty()) make_choice(tid);

    std::vector<TripRecord> day_trips;
    std::vector<DepartureCharge> deps;
    std::vector<std::pair<int, int>> dep_ids;

    while (engine.now() < day_end - kEps || !engine.idle()) {
      std::vector<TripRecord> finished = engine.step();
      const double now = engine.now();

      deps.clear();
      dep_ids.clear();
      while (!due.empty() && std::get<0>(due.top()) <= now + kEps) {
        auto [t_dep, tid, idx] = due.top();
        due.pop();
        states[tid].plan[idx].departed = true;
        deps.push_back({tid, t_dep, states[tid].plan[idx].path->distance_m});
        dep_ids.emplace_back(tid, idx);
      }
      std::vector<ChargeOutcome> outcomes = market.tick(now, deps);
      for (std::size_t k = 0; k < outcomes.size(); ++k) {
        Planned& pl = states[dep_ids[k].first].plan[dep_ids[k].second];
        pl.charged = outcomes[k].charged;
        pl.bought = outcomes[k].bought;
      }

      for (TripRecord& rec : finished) {
        TravelerDay& st = states[rec.traveler];
        Planned& pl = st.plan[rec.trip_index];
        rec.tt_pre = pl.tt_pre;
        rec.path_ordinal = pl.path_ordinal;
        rec.charged_credits = pl.charged;
        rec.t_star = pl.t_star;
        rec.sde_minutes = std::max(0.0, pl.t_star - rec.arrival);
        rec.sdl_minutes = std::max(0.0, rec.arrival - pl.t_star);
        rec.path_attr_utility = pl.attr;
        day_trips.push_back(rec);
        st.prev_arrival = rec.arrival;
        if (st.next_choice < static_cast<int>(st.plan.size())) make_choice(rec.traveler);
      }
    }

    DayResult dr;
    dr.day = day;
    dr.price = market.state().price;
    dr.bought = market.state().bought_today;
    dr.sold = market.state().sold_today;
    dr.allocated_credits = market.allocated_credits();
    market.end_day();
    dr.next_price = market.state().price;

    std::sort(day_trips.begin(), day_trips.end(), [](const TripRecord& a, const TripRecord& b) {
      if (a.traveler != b.traveler) return a.traveler < b.traveler;
      return a.trip_index < b.trip_index;
    });
    dr.inconsistency = prediction_inconsistency(day_trips);
    double total_utility = 0.0;
    for (const TripRecord& t : day_trips) {
      const TravelerBetas& b = betas[t.traveler];
      total_utility += b.tt * t.tt_minutes + b.sde * t.sde_minutes + b.sdl * t.sdl_minutes +
                       b.cost * (t.charged_credits * dr.price) + t.path_attr_utility;
    }
    dr.mean_utility = n > 0 ? total_utility / n : 0.0;
    dr.trips = std::move(day_trips);
    dr.accumulation = engine.accumulation();
    dr.trades = market.trade_log();

    table.smooth(engine.observations(), cfg.learning.rate);
    day_utils.push_back(dr.mean_utility);
    if (opt.on_day) opt.on_day(dr);
    result.days.push_back(std::move(dr));
  }

  result.stability_measure = relative_spread(day_utils, cfg.learning.stability_window);
  result.stabilized = result.stability_measure < cfg.learning.stability_tol;
  return result;
}

}  // namespace tcs
