#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcs/network.hpp"
#include "tcs/random.hpp"

namespace tcs {

enum class TripPurpose { work, education, other };

const char* to_string(TripPurpose p);
TripPurpose purpose_from_string(const std::string& s);

struct Trip {
  int origin = 0;
  int destination = 0;
  double preferred_arrival = 0.0;  // minutes from midnight
  TripPurpose purpose = TripPurpose::work;
  // Minimum stay at the previous trip's destination before this trip may
  // start; constrains the departure window of every trip but the first.
  double preceding_activity_min = 0.0;
};

struct Traveler {
  int id = 0;
  double vot = 0.0;       // $ per minute
  double sde_rate = 0.0;  // $ per minute early
  double sdl_rate = 0.0;  // $ per minute late
  std::vector<Trip> trips;
};

struct FeeSchedule {
  double fixed_buy = 0.0;   // $ per buy transaction
  double fixed_sell = 0.0;  // $ per sell transaction
  double prop_buy = 0.0;    // fraction of face value added on buys
  double prop_sell = 0.0;   // fraction of face value kept on sells
};

struct TcsParams {
  double allocation_rate = 1.0 / 20.0;  // credits per minute
  double allocation_interval = 20.0;    // minutes between allocation instants
  double lifetime = 1420.0;             // credit lifetime in minutes
  double initial_price = 0.1;           // $ per credit on day 1
  int initial_allocation = 72;          // wallet credits at the start of day 1
  int max_credits_per_trip = 160;       // cap on a single trip's charge
  double price_step = 1e-5;             // $ per net credit of daily imbalance
  FeeSchedule fees;
  double profit_threshold = 0.0;        // minimum $ profit before selling

  int credits_per_allocation() const;   // allocation_rate * allocation_interval
  int wallet_capacity() const;          // floor(lifetime / interval) + 1
};

struct ChoiceParams {
  double beta_tt = -0.03;        // per minute of travel
  double beta_ps = 1.0;          // path-size correction
  double beta_length_km = -0.05;
  double beta_signals = -0.02;   // per signalized segment
  double beta_highway_km = 0.01;
  double beta_min_tt = 0.1;
  double beta_min_dist = 0.1;
  double beta_min_signals = 0.1;
  double beta_max_highway = 0.1;
  int eta = 6;                   // window holds 2*eta + 1 departure intervals
  double dtw = 5.0;              // interval width in minutes
};

struct SupplyParams {
  double tick_seconds = 5.0;
  double alpha = 2.0;       // speed-density shape
  double beta = 2.0;
  double min_speed_kmh = 5.0;
};

struct LearningParams {
  double rate = 0.2;            // weight on the newly observed day
  int max_days = 25;
  int stability_window = 10;    // days used by the relative-std criterion
  double stability_tol = 0.05;
};

struct BoBox {
  double amplitude_min = 0.0, amplitude_max = 0.04;  // credits per meter
  double mu_min = 360.0, mu_max = 720.0;             // toll peak time, minutes
  double sigma_min = 15.0, sigma_max = 120.0;        // toll peak width, minutes
};

struct BoParams {
  double rho = 2.0;         // exploration weight in the acquisition
  int iterations = 30;
  int initial_design = 6;   // low-discrepancy seed points
  BoBox box;
  int welfare_window = 10;  // days averaged into the objective
  double length_scale = 0.3;
  double noise_var = 1e-4;
  int multistart = 4096;
  bool tune_length_scale = false;  // pick the kernel scale by model evidence
};

struct PopulationParams {
  double vot_mean_hourly = 13.0;  // $ per hour
  double vot_cv = 0.5;
  double sde_tri_lo = 0.1, sde_tri_mode = 0.5, sde_tri_hi = 1.0;   // early ratio
  double sdl_tri_lo = 1.0, sdl_tri_mode = 2.0, sdl_tri_hi = 4.0;   // late ratio
  double work_share = 0.85, education_share = 0.10;                // rest: other
  double extra_tour_prob = 0.3;     // chance of a midday tour (two extra trips)
  double morning_peak = 510.0, morning_sd = 25.0;
  double evening_peak = 1080.0, evening_sd = 35.0;
  double midday_peak = 770.0, midday_sd = 45.0;
  double min_gap = 45.0;            // minutes between consecutive arrivals
};

struct GridParams {
  int rows = 6, cols = 6;
  double base_length_m = 500.0;
  double length_jitter = 0.2;       // +- fraction of base length
  double arterial_vf_kmh = 50.0, highway_vf_kmh = 80.0;
  double arterial_capacity = 900.0, highway_capacity = 1800.0;  // veh/h
  double kjam_veh_km = 120.0;
  double signal_prob = 0.6;
  int hotspot_count = 4;            // work/education nodes cluster at the center
};

struct ScenarioConfig {
  TcsParams tcs;
  ChoiceParams choice;
  SupplyParams supply;
  LearningParams learning;
  BoParams bo;
  PopulationParams population;
  GridParams grid;
  int days = 25;
  std::uint64_t seed = 42;
  int population_size = 2000;

  void validate() const;  // throws std::runtime_error naming the bad field
};

// Reads a scenario file on top of the built-in defaults. Unknown sections
// or keys are an error so that typos do not silently fall back.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig scenario_from_text(const std::string& text, const std::string& origin = "<string>");

std::vector<Traveler> synthesize_population(const ScenarioConfig& cfg, Rng& rng);

// Work/education hotspot nodes used for trip destinations; center cluster.
std::vector<int> hotspot_nodes(const GridParams& grid);

// rows x cols lattice with one directed segment per direction per adjacent
// node pair. A cross of faster high-capacity rows/columns runs through the
// middle; the rest are signalized arterials.
Network generate_grid_network(int rows, int cols, const GridParams& params, Rng& rng);

std::string population_to_json(const std::vector<Traveler>& pop);
std::vector<Traveler> population_from_json(const std::string& text);

}  // namespace tcs
