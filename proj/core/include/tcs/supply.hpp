#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <queue>
#include <vector>

#include "tcs/network.hpp"
#include "tcs/scenario.hpp"

namespace tcs {

// Generalized speed-density relation, floored at a crawl speed so heavy
// congestion still drains.
double speed_kmh(const Segment& seg, double density_veh_km, const SupplyParams& params);

struct VehiclePlan {
  int traveler = -1;
  int trip_index = 0;
  const Path* path = nullptr;
  double t_dep = 0.0;  // absolute minute
};

struct TripRecord {
  int traveler = -1;
  int trip_index = 0;
  int day = 1;
  double t_dep = 0.0;
  double arrival = 0.0;
  double tt_minutes = 0.0;
  double distance_m = 0.0;
  double tt_ff = 0.0;
  double tt_pre = 0.0;   // filled by the orchestrator at choice time
  int path_ordinal = 0;  // index of the chosen path in its choice set
  int charged_credits = 0;
  double t_star = 0.0;
  double sde_minutes = 0.0;
  double sdl_minutes = 0.0;
  // Departure-time-independent part of the chosen alternative's utility
  // (path size, length, signals, highway, flag terms).
  double path_attr_utility = 0.0;
};

// Realized traversal minutes per segment and 5-minute entry bin for one day.
struct DayLinkTimes {
  int segment_count = 0;
  std::vector<std::array<double, 288>> sum;
  std::vector<std::array<int, 288>> count;

  explicit DayLinkTimes(int segments = 0);
  void add(int segment, double entry_tod_min, double minutes);
  bool has(int segment, int bin) const { return count[segment][bin] > 0; }
  double mean(int segment, int bin) const;
};

// Time-stepped network loader. One tick moves vehicles segment to segment:
// the moving part takes length / v(density at entry); the downstream end
// serves the queue FIFO at one vehicle per capacity headway, stamping each
// exit max(ready, previous exit + headway). Vehicles that never wait keep
// exact event-time stamps, so an empty network reproduces free-flow times
// exactly and a saturated queue discharges exactly at capacity.
class Engine {
 public:
  Engine(const Network& net, const SupplyParams& params, int day, double start_minute);

  void schedule(const VehiclePlan& plan);
  std::vector<TripRecord> step();  // advances the clock by one tick
  double now() const { return now_; }
  double tick_minutes() const { return tick_min_; }
  bool idle() const;

  int on_network() const { return on_network_; }
  std::uint64_t entered() const { return entered_; }
  std::uint64_t finished() const { return finished_; }

  const DayLinkTimes& observations() const { return obs_; }
  // Vehicles on the network sampled at each 5-minute bin start.
  const std::array<int, 288>& accumulation() const { return accumulation_; }

 private:
  struct Moving {
    int vehicle = -1;
    double exit_due = 0.0;
  };
  struct Queued {
    int vehicle = -1;
    double ready = 0.0;
  };
  struct SegmentState {
    std::vector<Moving> moving;
    std::deque<Queued> queue;
    double last_exit = -1e300;
  };
  struct Vehicle {
    VehiclePlan plan;
    int leg = 0;
    double entry_time = 0.0;
  };

  void enter_segment(int vehicle, int segment, double at);
  double traversal_minutes(int segment) const;

  const Network& net_;
  SupplyParams params_;
  int day_;
  double start_;
  double now_;
  double tick_min_;
  std::vector<SegmentState> state_;
  std::vector<Vehicle> vehicles_;
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                      std::greater<>> pending_;
  int on_network_ = 0;
  std::uint64_t entered_ = 0;
  std::uint64_t finished_ = 0;
  DayLinkTimes obs_;
  std::array<int, 288> accumulation_{};
};

struct DayOutput {
  std::vector<TripRecord> trips;
  DayLinkTimes link_times;
  std::array<int, 288> accumulation{};
};

// Convenience wrapper: load one day's fixed departure list to completion.
DayOutput run_day(const Network& net, const std::vector<VehiclePlan>& departures,
                  const SupplyParams& params, int day = 1, double start_minute = 0.0);

}  // namespace tcs
