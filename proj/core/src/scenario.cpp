#include "tcs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "tcs/io.hpp"

namespace tcs {
namespace {

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error("scenario: " + what); }

void require(bool ok, const std::string& what) {
  if (!ok) bad(what);
}

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-9 && std::round(v) >= 1.0; }

}  // namespace

const char* to_string(TripPurpose p) {
  switch (p) {
    case TripPurpose::work: return "work";
    case TripPurpose::education: return "education";
    case TripPurpose::other: return "other";
  }
  return "other";
}

TripPurpose purpose_from_string(const std::string& s) {
  if (s == "work") return TripPurpose::work;
  if (s == "education") return TripPurpose::education;
  if (s == "other") return TripPurpose::other;
  throw std::runtime_error("unknown trip purpose '" + s + "'");
}

int TcsParams::credits_per_allocation() const {
  return static_cast<int>(std::round(allocation_rate * allocation_interval));
}

int TcsParams::wallet_capacity() const {
  return static_cast<int>(std::floor(lifetime / allocation_interval)) + 1;
}

void ScenarioConfig::validate() const {
  require(days >= 1, "run.days must be >= 1");
  require(population_size >= 1, "run.population_size must be >= 1");

  require(tcs.allocation_rate > 0, "tcs.allocation_rate must be positive");
  require(tcs.allocation_interval > 0, "tcs.allocation_interval must be positive");
  require(near_integer(tcs.allocation_rate * tcs.allocation_interval),
          "tcs.allocation_rate * tcs.allocation_interval must be a positive whole number of credits");
  require(tcs.lifetime > 0, "tcs.lifetime must be positive");
  require(std::abs(std::remainder(tcs.lifetime, tcs.allocation_interval)) < 1e-9,
          "tcs.lifetime must be a multiple of tcs.allocation_interval");
  require(std::abs(std::remainder(1440.0, tcs.allocation_interval)) < 1e-9,
          "tcs.allocation_interval must divide the 1440-minute day");
  require(tcs.initial_price >= 0, "tcs.initial_price must be >= 0");
  require(tcs.initial_allocation >= 0, "tcs.initial_allocation must be >= 0");
  require(tcs.initial_allocation <= tcs.wallet_capacity(),
          "tcs.initial_allocation exceeds the wallet capacity");
  require(tcs.max_credits_per_trip >= 1, "tcs.max_credits_per_trip must be >= 1");
  require(tcs.price_step >= 0, "tcs.price_step must be >= 0");
  require(tcs.profit_threshold >= 0, "tcs.profit_threshold must be >= 0");
  require(tcs.fees.fixed_buy >= 0 && tcs.fees.fixed_sell >= 0 && tcs.fees.prop_buy >= 0 &&
              tcs.fees.prop_sell >= 0,
          "fees must be >= 0");
  require(tcs.fees.prop_sell < 1, "fees.prop_sell must be < 1");

  require(choice.eta >= 1, "choice.eta must be >= 1");
  require(choice.dtw > 0, "choice.dtw must be positive");

  require(supply.tick_seconds > 0 && supply.tick_seconds <= 60,
          "supply.tick_seconds must be in (0, 60]");
  require(supply.alpha > 0 && supply.beta > 0, "supply.alpha and supply.beta must be positive");
  require(supply.min_speed_kmh > 0, "supply.min_speed_kmh must be positive");

  require(learning.rate > 0 && learning.rate <= 1, "learning.rate must be in (0, 1]");
  require(learning.max_days >= 1, "learning.max_days must be >= 1");
  require(learning.stability_window >= 2, "learning.stability_window must be >= 2");
  require(learning.stability_tol > 0, "learning.stability_tol must be positive");

  require(bo.rho >= 0, "bo.rho must be >= 0");
  require(bo.iterations >= 0, "bo.iterations must be >= 0");
  require(bo.initial_design >= 1, "bo.initial_design must be >= 1");
  require(bo.welfare_window >= 1, "bo.welfare_window must be >= 1");
  require(bo.length_scale > 0, "bo.length_scale must be positive");
  require(bo.noise_var >= 0, "bo.noise_var must be >= 0");
  require(bo.multistart >= 1, "bo.multistart must be >= 1");
  require(bo.box.amplitude_min >= 0, "bo.amplitude_min must be >= 0");
  require(bo.box.amplitude_min <= bo.box.amplitude_max, "bo amplitude bounds are inverted");
  require(bo.box.mu_min <= bo.box.mu_max, "bo mu bounds are inverted");
  require(bo.box.sigma_min > 0, "bo.sigma_min must be positive");
  require(bo.box.sigma_min <= bo.box.sigma_max, "bo sigma bounds are inverted");

  const auto& p = population;
  require(p.vot_mean_hourly > 0, "population.vot_mean_hourly must be positive");
  require(p.vot_cv > 0, "population.vot_cv must be positive");
  require(p.sde_tri_lo <= p.sde_tri_mode && p.sde_tri_mode <= p.sde_tri_hi && p.sde_tri_lo >= 0,
          "population.sde triangular bounds are invalid");
  require(p.sde_tri_hi <= 1.0, "population.sde ratios must stay below 1 (early cost < vot)");
  require(p.sdl_tri_lo <= p.sdl_tri_mode && p.sdl_tri_mode <= p.sdl_tri_hi,
          "population.sdl triangular bounds are invalid");
  require(p.sdl_tri_lo >= 1.0, "population.sdl ratios must stay above 1 (late cost > vot)");
  require(p.work_share >= 0 && p.education_share >= 0 &&
              p.work_share + p.education_share <= 1.0,
          "population purpose shares must be fractions summing to <= 1");
  require(p.extra_tour_prob >= 0 && p.extra_tour_prob <= 1,
          "population.extra_tour_prob must be in [0, 1]");
  require(p.morning_peak > 0 && p.morning_peak < 1440, "population.morning_peak out of day range");
  require(p.evening_peak > 0 && p.evening_peak < 1440, "population.evening_peak out of day range");
  require(p.midday_peak > 0 && p.midday_peak < 1440, "population.midday_peak out of day range");
  require(p.morning_sd >= 0 && p.evening_sd >= 0 && p.midday_sd >= 0,
          "population peak spreads must be >= 0");
  require(p.min_gap > 0, "population.min_gap must be positive");

  const auto& g = grid;
  require(g.rows >= 2 && g.cols >= 2, "grid must be at least 2x2");
  require(g.base_length_m > 0, "grid.base_length_m must be positive");
  require(g.length_jitter >= 0 && g.length_jitter < 1, "grid.length_jitter must be in [0, 1)");
  require(g.arterial_vf_kmh > 0 && g.highway_vf_kmh > 0, "grid speeds must be positive");
  require(g.arterial_capacity > 0 && g.highway_capacity > 0, "grid capacities must be positive");
  require(g.kjam_veh_km > 0, "grid.kjam_veh_km must be positive");
  require(g.signal_prob >= 0 && g.signal_prob <= 1, "grid.signal_prob must be in [0, 1]");
  require(g.hotspot_count >= 1 && g.hotspot_count <= g.rows * g.cols,
          "grid.hotspot_count out of range");
}

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"run", {"days", "seed", "population_size"}},
      {"tcs",
       {"allocation_rate", "allocation_interval", "lifetime", "initial_price",
        "initial_allocation", "max_credits_per_trip", "price_step", "profit_threshold"}},
      {"fees", {"fixed_buy", "fixed_sell", "prop_buy", "prop_sell"}},
      {"choice",
       {"beta_tt", "beta_ps", "beta_length_km", "beta_signals", "beta_highway_km", "beta_min_tt",
        "beta_min_dist", "beta_min_signals", "beta_max_highway", "eta", "dtw"}},
      {"supply", {"tick_seconds", "alpha", "beta", "min_speed_kmh"}},
      {"learning", {"rate", "max_days", "stability_window", "stability_tol"}},
      {"bo",
       {"rho", "iterations", "initial_design", "welfare_window", "length_scale", "noise_var",
        "multistart", "tune_length_scale", "amplitude_min", "amplitude_max", "mu_min", "mu_max",
        "sigma_min", "sigma_max"}},
      {"population",
       {"vot_mean_hourly", "vot_cv", "sde_tri_lo", "sde_tri_mode", "sde_tri_hi", "sdl_tri_lo",
        "sdl_tri_mode", "sdl_tri_hi", "work_share", "education_share", "extra_tour_prob",
        "morning_peak", "morning_sd", "evening_peak", "evening_sd", "midday_peak", "midday_sd",
        "min_gap"}},
      {"grid",
       {"rows", "cols", "base_length_m", "length_jitter", "arterial_vf_kmh", "highway_vf_kmh",
        "arterial_capacity", "highway_capacity", "kjam_veh_km", "signal_prob", "hotspot_count"}},
  };
  return keys;
}

}  // namespace

ScenarioConfig scenario_from_text(const std::string& text, const std::string& origin) {
  const KeyValueFile f = KeyValueFile::parse_string(text, origin);

  for (const auto& [sec, key] : f.entries()) {
    auto it = allowed_keys().find(sec);
    if (it == allowed_keys().end()) bad(origin + ": unknown section [" + sec + "]");
    if (!it->second.count(key)) bad(origin + ": unknown key '" + key + "' in section [" + sec + "]");
  }

  ScenarioConfig c;
  c.days = f.get_int("run", "days", c.days);
  c.seed = f.get_u64("run", "seed", c.seed);
  c.population_size = f.get_int("run", "population_size", c.population_size);

  c.tcs.allocation_rate = f.get_double("tcs", "allocation_rate", c.tcs.allocation_rate);
  c.tcs.allocation_interval = f.get_double("tcs", "allocation_interval", c.tcs.allocation_interval);
  c.tcs.lifetime = f.get_double("tcs", "lifetime", c.tcs.lifetime);
  c.tcs.initial_price = f.get_double("tcs", "initial_price", c.tcs.initial_price);
  c.tcs.initial_allocation = f.get_int("tcs", "initial_allocation", c.tcs.initial_allocation);
  c.tcs.max_credits_per_trip = f.get_int("tcs", "max_credits_per_trip", c.tcs.max_credits_per_trip);
  c.tcs.price_step = f.get_double("tcs", "price_step", c.tcs.price_step);
  c.tcs.profit_threshold = f.get_double("tcs", "profit_threshold", c.tcs.profit_threshold);
  c.tcs.fees.fixed_buy = f.get_double("fees", "fixed_buy", c.tcs.fees.fixed_buy);
  c.tcs.fees.fixed_sell = f.get_double("fees", "fixed_sell", c.tcs.fees.fixed_sell);
  c.tcs.fees.prop_buy = f.get_double("fees", "prop_buy", c.tcs.fees.prop_buy);
  c.tcs.fees.prop_sell = f.get_double("fees", "prop_sell", c.tcs.fees.prop_sell);

  c.choice.beta_tt = f.get_double("choice", "beta_tt", c.choice.beta_tt);
  c.choice.beta_ps = f.get_double("choice", "beta_ps", c.choice.beta_ps);
  c.choice.beta_length_km = f.get_double("choice", "beta_length_km", c.choice.beta_length_km);
  c.choice.beta_signals = f.get_double("choice", "beta_signals", c.choice.beta_signals);
  c.choice.beta_highway_km = f.get_double("choice", "beta_highway_km", c.choice.beta_highway_km);
  c.choice.beta_min_tt = f.get_double("choice", "beta_min_tt", c.choice.beta_min_tt);
  c.choice.beta_min_dist = f.get_double("choice", "beta_min_dist", c.choice.beta_min_dist);
  c.choice.beta_min_signals = f.get_double("choice", "beta_min_signals", c.choice.beta_min_signals);
  c.choice.beta_max_highway = f.get_double("choice", "beta_max_highway", c.choice.beta_max_highway);
  c.choice.eta = f.get_int("choice", "eta", c.choice.eta);
  c.choice.dtw = f.get_double("choice", "dtw", c.choice.dtw);

  c.supply.tick_seconds = f.get_double("supply", "tick_seconds", c.supply.tick_seconds);
  c.supply.alpha = f.get_double("supply", "alpha", c.supply.alpha);
  c.supply.beta = f.get_double("supply", "beta", c.supply.beta);
  c.supply.min_speed_kmh = f.get_double("supply", "min_speed_kmh", c.supply.min_speed_kmh);

  c.learning.rate = f.get_double("learning", "rate", c.learning.rate);
  c.learning.max_days = f.get_int("learning", "max_days", c.learning.max_days);
  c.learning.stability_window = f.get_int("learning", "stability_window", c.learning.stability_window);
  c.learning.stability_tol = f.get_double("learning", "stability_tol", c.learning.stability_tol);

  c.bo.rho = f.get_double("bo", "rho", c.bo.rho);
  c.bo.iterations = f.get_int("bo", "iterations", c.bo.iterations);
  c.bo.initial_design = f.get_int("bo", "initial_design", c.bo.initial_design);
  c.bo.welfare_window = f.get_int("bo", "welfare_window", c.bo.welfare_window);
  c.bo.length_scale = f.get_double("bo", "length_scale", c.bo.length_scale);
  c.bo.noise_var = f.get_double("bo", "noise_var", c.bo.noise_var);
  c.bo.multistart = f.get_int("bo", "multistart", c.bo.multistart);
  c.bo.tune_length_scale =
      f.get_int("bo", "tune_length_scale", c.bo.tune_length_scale ? 1 : 0) != 0;
  c.bo.box.amplitude_min = f.get_double("bo", "amplitude_min", c.bo.box.amplitude_min);
  c.bo.box.amplitude_max = f.get_double("bo", "amplitude_max", c.bo.box.amplitude_max);
  c.bo.box.mu_min = f.get_double("bo", "mu_min", c.bo.box.mu_min);
  c.bo.box.mu_max = f.get_double("bo", "mu_max", c.bo.box.mu_max);
  c.bo.box.sigma_min = f.get_double("bo", "sigma_min", c.bo.box.sigma_min);
  c.bo.box.sigma_max = f.get_double("bo", "sigma_max", c.bo.box.sigma_max);

  auto& p = c.population;
  p.vot_mean_hourly = f.get_double("population", "vot_mean_hourly", p.vot_mean_hourly);
  p.vot_cv = f.get_double("population", "vot_cv", p.vot_cv);
  p.sde_tri_lo = f.get_double("population", "sde_tri_lo", p.sde_tri_lo);
  p.sde_tri_mode = f.get_double("population", "sde_tri_mode", p.sde_tri_mode);
  p.sde_tri_hi = f.get_double("population", "sde_tri_hi", p.sde_tri_hi);
  p.sdl_tri_lo = f.get_double("population", "sdl_tri_lo", p.sdl_tri_lo);
  p.sdl_tri_mode = f.get_double("population", "sdl_tri_mode", p.sdl_tri_mode);
  p.sdl_tri_hi = f.get_double("population", "sdl_tri_hi", p.sdl_tri_hi);
  p.work_share = f.get_double("population", "work_share", p.work_share);
  p.education_share = f.get_double("population", "education_share", p.education_share);
  p.extra_tour_prob = f.get_double("population", "extra_tour_prob", p.extra_tour_prob);
  p.morning_peak = f.get_double("population", "morning_peak", p.morning_peak);
  p.morning_sd = f.get_double("population", "morning_sd", p.morning_sd);
  p.evening_peak = f.get_double("population", "evening_peak", p.evening_peak);
  p.evening_sd = f.get_double("population", "evening_sd", p.evening_sd);
  p.midday_peak = f.get_double("population", "midday_peak", p.midday_peak);
  p.midday_sd = f.get_double("population", "midday_sd", p.midday_sd);
  p.min_gap = f.get_double("population", "min_gap", p.min_gap);

  auto& g = c.grid;
  g.rows = f.get_int("grid", "rows", g.rows);
  g.cols = f.get_int("grid", "cols", g.cols);
  g.base_length_m = f.get_double("grid", "base_length_m", g.base_length_m);
  g.length_jitter = f.get_double("grid", "length_jitter", g.length_jitter);
  g.arterial_vf_kmh = f.get_double("grid", "arterial_vf_kmh", g.arterial_vf_kmh);
  g.highway_vf_kmh = f.get_double("grid", "highway_vf_kmh", g.highway_vf_kmh);
  g.arterial_capacity = f.get_double("grid", "arterial_capacity", g.arterial_capacity);
  g.highway_capacity = f.get_double("grid", "highway_capacity", g.highway_capacity);
  g.kjam_veh_km = f.get_double("grid", "kjam_veh_km", g.kjam_veh_km);
  g.signal_prob = f.get_double("grid", "signal_prob", g.signal_prob);
  g.hotspot_count = f.get_int("grid", "hotspot_count", g.hotspot_count);

  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  return scenario_from_text(read_text_file(path), path);
}

std::vector<int> hotspot_nodes(const GridParams& grid) {
  struct Scored {
    double d2;
    int id;
  };
  std::vector<Scored> nodes;
  const double cr = (grid.rows - 1) / 2.0;
  const double cc = (grid.cols - 1) / 2.0;
  for (int r = 0; r < grid.rows; ++r)
    for (int cidx = 0; cidx < grid.cols; ++cidx) {
      const double d2 = (r - cr) * (r - cr) + (cidx - cc) * (cidx - cc);
      nodes.push_back({d2, r * grid.cols + cidx});
    }
  std::sort(nodes.begin(), nodes.end(), [](const Scored& a, const Scored& b) {
    return a.d2 != b.d2 ? a.d2 < b.d2 : a.id < b.id;
  });
  std::vector<int> out;
  for (int i = 0; i < grid.hotspot_count; ++i) out.push_back(nodes[i].id);
  std::sort(out.begin(), out.end());
  return out;
}

Network generate_grid_network(int rows, int cols, const GridParams& params, Rng& rng) {
  if (rows < 2 || cols < 2) bad("grid must be at least 2x2");
  auto node = [cols](int r, int c) { return r * cols + c; };
  const int mid_r = rows / 2;
  const int mid_c = cols / 2;

  std::vector<Segment> segments;
  auto add_pair = [&](int a, int b, bool highway) {
    const double len =
        params.base_length_m * (1.0 + params.length_jitter * rng.uniform(-1.0, 1.0));
    const bool signal = highway ? false : rng.bernoulli(params.signal_prob);
    for (int dir = 0; dir < 2; ++dir) {
      Segment s;
      s.id = static_cast<int>(segments.size());
      s.from = dir == 0 ? a : b;
      s.to = dir == 0 ? b : a;
      s.length_m = len;
      s.vf_kmh = highway ? params.highway_vf_kmh : params.arterial_vf_kmh;
      s.capacity_veh_h = highway ? params.highway_capacity : params.arterial_capacity;
      s.kjam_veh_km = params.kjam_veh_km;
      s.lanes = 1;
      s.signal = signal;
      s.highway = highway;
      segments.push_back(s);
    }
  };

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) add_pair(node(r, c), node(r, c + 1), r == mid_r);
      if (r + 1 < rows) add_pair(node(r, c), node(r + 1, c), c == mid_c);
    }
  }
  return Network(rows * cols, std::move(segments));
}

std::vector<Traveler> synthesize_population(const ScenarioConfig& cfg, Rng& rng) {
  const PopulationParams& pp = cfg.population;
  const int nodes = cfg.grid.rows * cfg.grid.cols;
  const std::vector<int> hotspots = hotspot_nodes(cfg.grid);

  // Lognormal parameterisation from mean and coefficient of variation.
  const double mean_per_min = pp.vot_mean_hourly / 60.0;
  const double sigma2 = std::log(1.0 + pp.vot_cv * pp.vot_cv);
  const double mu = std::log(mean_per_min) - 0.5 * sigma2;
  const double sigma = std::sqrt(sigma2);

  Rng pop_rng = rng.fork("population");
  std::vector<Traveler> out;
  out.reserve(cfg.population_size);

  for (int id = 0; id < cfg.population_size; ++id) {
    Rng r = pop_rng.fork("traveler", static_cast<std::uint64_t>(id));
    Traveler t;
    t.id = id;
    for (;;) {  // keep early cost below vot and late cost above it
      t.vot = r.lognormal(mu, sigma);
      const double re = r.triangular(pp.sde_tri_lo, pp.sde_tri_mode, pp.sde_tri_hi);
      const double rl = r.triangular(pp.sdl_tri_lo, pp.sdl_tri_mode, pp.sdl_tri_hi);
      t.sde_rate = re * t.vot;
      t.sdl_rate = rl * t.vot;
      if (t.sde_rate < t.vot && t.vot < t.sdl_rate) break;
    }

    const int home = static_cast<int>(r.bounded(static_cast<std::uint64_t>(nodes)));
    int anchor = hotspots[r.bounded(hotspots.size())];
    while (anchor == home) {
      if (hotspots.size() > 1) {
        anchor = hotspots[r.bounded(hotspots.size())];
      } else {
        anchor = static_cast<int>(r.bounded(static_cast<std::uint64_t>(nodes)));
      }
    }
    auto draw_purpose = [&]() {
      const double u = r.uniform();
      if (u < pp.work_share) return TripPurpose::work;
      if (u < pp.work_share + pp.education_share) return TripPurpose::education;
      return TripPurpose::other;
    };
    auto other_node = [&](int not_this) {
      int n = static_cast<int>(r.bounded(static_cast<std::uint64_t>(nodes)));
      while (n == not_this) n = static_cast<int>(r.bounded(static_cast<std::uint64_t>(nodes)));
      return n;
    };

    const bool midday_tour = r.bernoulli(pp.extra_tour_prob);
    double morning = r.normal(pp.morning_peak, pp.morning_sd);
    morning = std::clamp(morning, 120.0, 1320.0);

    std::vector<Trip> trips;
    Trip first;
    first.origin = home;
    first.destination = anchor;
    first.preferred_arrival = morning;
    first.purpose = draw_purpose();
    first.preceding_activity_min = 0.0;
    trips.push_back(first);

    double prev_arrival = morning;
    int at = anchor;
    if (midday_tour) {
      const int stop = other_node(at);
      double t_out = std::max(prev_arrival + pp.min_gap, r.normal(pp.midday_peak, pp.midday_sd));
      Trip out_trip;
      out_trip.origin = at;
      out_trip.destination = stop;
      out_trip.preferred_arrival = t_out;
      out_trip.purpose = draw_purpose();
      out_trip.preceding_activity_min = std::max(10.0, t_out - prev_arrival - 45.0 - r.uniform(0.0, 30.0));
      trips.push_back(out_trip);
      prev_arrival = t_out;

      double t_back = prev_arrival + pp.min_gap + r.uniform(15.0, 105.0);
      Trip back;
      back.origin = stop;
      back.destination = at;
      back.preferred_arrival = t_back;
      back.purpose = draw_purpose();
      back.preceding_activity_min = std::max(10.0, t_back - prev_arrival - 45.0 - r.uniform(0.0, 30.0));
      trips.push_back(back);
      prev_arrival = t_back;
    }

    double evening = std::max(prev_arrival + pp.min_gap, r.normal(pp.evening_peak, pp.evening_sd));
    evening = std::min(evening, 1410.0);
    if (evening < prev_arrival + pp.min_gap) evening = prev_arrival + pp.min_gap;
    Trip last;
    last.origin = at;
    last.destination = home;
    last.preferred_arrival = evening;
    last.purpose = draw_purpose();
    last.preceding_activity_min = std::max(10.0, evening - prev_arrival - 60.0 - r.uniform(0.0, 60.0));
    trips.push_back(last);

    t.trips = std::move(trips);
    out.push_back(std::move(t));
  }
  return out;
}

std::string population_to_json(const std::vector<Traveler>& pop) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const Traveler& t : pop) {
    nlohmann::ordered_json jt;
    jt["id"] = t.id;
    jt["vot"] = t.vot;
    jt["sde_rate"] = t.sde_rate;
    jt["sdl_rate"] = t.sdl_rate;
    auto& trips = jt["trips"] = nlohmann::ordered_json::array();
    for (const Trip& trip : t.trips) {
      nlohmann::ordered_json j;
      j["origin"] = trip.origin;
      j["destination"] = trip.destination;
      j["preferred_arrival"] = trip.preferred_arrival;
      j["purpose"] = to_string(trip.purpose);
      j["preceding_activity_min"] = trip.preceding_activity_min;
      trips.push_back(std::move(j));
    }
    doc.push_back(std::move(jt));
  }
  return doc.dump(1) + "\n";
}

std::vector<Traveler> population_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<Traveler> out;
  for (const auto& jt : doc) {
    Traveler t;
    t.id = jt.at("id").get<int>();
    t.vot = jt.at("vot").get<double>();
    t.sde_rate = jt.at("sde_rate").get<double>();
    t.sdl_rate = jt.at("sdl_rate").get<double>();
    for (const auto& j : jt.at("trips")) {
      Trip trip;
      trip.origin = j.at("origin").get<int>();
      trip.destination = j.at("destination").get<int>();
      trip.preferred_arrival = j.at("preferred_arrival").get<double>();
      trip.purpose = purpose_from_string(j.at("purpose").get<std::string>());
      trip.preceding_activity_min = j.at("preceding_activity_min").get<double>();
      t.trips.push_back(trip);
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace tcs
