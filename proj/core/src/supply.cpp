#include "tcs/supply.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcs {

namespace {
constexpr double kEps = 1e-9;

int tod_bin(double minute) {
  double tod = std::fmod(minute, 1440.0);
  if (tod < 0.0) tod += 1440.0;
  int bin = static_cast<int>(tod / 5.0);
  return std::clamp(bin, 0, 287);
}
}  // namespace

double speed_kmh(const Segment& seg, double density_veh_km, const SupplyParams& params) {
  double rho = std::clamp(density_veh_km, 0.0, seg.kjam_veh_km);
  double x = 1.0 - std::pow(rho / seg.kjam_veh_km, params.alpha);
  double v = seg.vf_kmh * std::pow(std::max(x, 0.0), params.beta);
  return std::max(v, params.min_speed_kmh);
}

DayLinkTimes::DayLinkTimes(int segments) : segment_count(segments) {
  sum.resize(segments);
  count.resize(segments);
  for (auto& a : sum) a.fill(0.0);
  for (auto& a : count) a.fill(0);
}

void DayLinkTimes::add(int segment, double entry_tod_min, double minutes) {
  int bin = tod_bin(entry_tod_min);
  sum[segment][bin] += minutes;
  count[segment][bin] += 1;
}

double DayLinkTimes::mean(int segment, int bin) const {
  if (count[segment][bin] == 0) throw std::logic_error("no observation for segment/bin");
  return sum[segment][bin] / count[segment][bin];
}

Engine::Engine(const Network& net, const SupplyParams& params, int day, double start_minute)
    : net_(net),
      params_(params),
      day_(day),
      start_(start_minute),
      now_(start_minute),
      tick_min_(params.tick_seconds / 60.0),
      state_(static_cast<std::size_t>(net.segment_count())),
      obs_(net.segment_count()) {
  if (params_.tick_seconds <= 0.0) throw std::invalid_argument("tick_seconds must be positive");
  accumulation_.fill(0);
}

void Engine::schedule(const VehiclePlan& plan) {
  if (plan.path == nullptr || plan.path->segments.empty())
    throw std::invalid_argument("vehicle plan needs a non-empty path");
  if (plan.t_dep < now_ - kEps)
    throw std::invalid_argument("cannot schedule a departure in the past");
  int vid = static_cast<int>(vehicles_.size());
  vehicles_.push_back(Vehicle{plan, 0, 0.0});
  pending_.emplace(plan.t_dep, vid);
}

double Engine::traversal_minutes(int segment) const {
  const Segment& seg = net_.segment(segment);
  double length_km = seg.length_m / 1000.0;
  double density = static_cast<double>(state_[segment].moving.size()) /
                   (length_km * seg.lanes);
  double v = speed_kmh(seg, density, params_);
  return length_km / v * 60.0;
}

void Engine::enter_segment(int vehicle, int segment, double at) {
  // Density is evaluated before the entrant joins the moving part.
  double minutes = traversal_minutes(segment);
  obs_.add(segment, at, minutes);
  state_[segment].moving.push_back(Moving{vehicle, at + minutes});
  vehicles_[vehicle].entry_time = at;
}

std::vector<TripRecord> Engine::step() {
  now_ += tick_min_;
  std::vector<TripRecord> finished;

  // Departures due this tick enter in time order at their exact instants.
  while (!pending_.empty() && pending_.top().first <= now_ + kEps) {
    auto [t_dep, vid] = pending_.top();
    pending_.pop();
    ++entered_;
    ++on_network_;
    enter_segment(vid, vehicles_[vid].plan.path->segments[0], t_dep);
  }

  // Vehicles whose moving part finished join the downstream queue.
  for (int s = 0; s < net_.segment_count(); ++s) {
    auto& st = state_[s];
    if (st.moving.empty()) continue;
    std::vector<Queued> joined;
    std::size_t keep = 0;
    for (std::size_t i = 0; i < st.moving.size(); ++i) {
      if (st.moving[i].exit_due <= now_ + kEps) {
        joined.push_back(Queued{st.moving[i].vehicle, st.moving[i].exit_due});
      } else {
        st.moving[keep++] = st.moving[i];
      }
    }
    st.moving.resize(keep);
    if (joined.empty()) continue;
    std::sort(joined.begin(), joined.end(), [](const Queued& a, const Queued& b) {
      if (a.ready != b.ready) return a.ready < b.ready;
      return a.vehicle < b.vehicle;
    });
    // Earlier joiners already in the queue became ready in earlier ticks,
    // so appending preserves FIFO order.
    for (const auto& q : joined) st.queue.push_back(q);
  }

  // Discharge queues at capacity: one service per headway, FIFO. The exit
  // stamp is the exact service completion, so an unobstructed vehicle keeps
  // its ready time and a queued one waits exactly its headway share.
  for (int s = 0; s < net_.segment_count(); ++s) {
    auto& st = state_[s];
    if (st.queue.empty()) continue;
    const double headway = 60.0 / net_.segment(s).capacity_veh_h;
    while (!st.queue.empty()) {
      Queued q = st.queue.front();
      double exit_t = std::max(q.ready, st.last_exit + headway);
      if (exit_t > now_ + kEps) break;
      st.queue.pop_front();
      st.last_exit = exit_t;

      Vehicle& v = vehicles_[q.vehicle];
      const Path& path = *v.plan.path;
      ++v.leg;
      if (v.leg >= static_cast<int>(path.segments.size())) {
        --on_network_;
        ++finished_;
        TripRecord rec;
        rec.traveler = v.plan.traveler;
        rec.trip_index = v.plan.trip_index;
        rec.day = day_;
        rec.t_dep = v.plan.t_dep;
        rec.arrival = exit_t;
        rec.tt_minutes = exit_t - v.plan.t_dep;
        rec.distance_m = path.distance_m;
        rec.tt_ff = path.ff_minutes;
        if (rec.tt_minutes < rec.tt_ff - 1e-6)
          throw std::logic_error("travel time fell below free flow");
        finished.push_back(rec);
      } else {
        enter_segment(q.vehicle, path.segments[v.leg], exit_t);
      }
    }
  }

  if (entered_ != finished_ + static_cast<std::uint64_t>(on_network_))
    throw std::logic_error("vehicle conservation violated");

  // Sample accumulation at 5-minute boundaries for the labeled bin.
  double rel = now_ - start_;
  double nearest = std::round(rel / 5.0) * 5.0;
  if (std::abs(rel - nearest) < tick_min_ / 2.0 && nearest >= 0.0 && nearest < 1440.0) {
    accumulation_[static_cast<int>(nearest / 5.0)] = on_network_;
  }
  return finished;
}

bool Engine::idle() const {
  if (!pending_.empty() || on_network_ > 0) return false;
  return true;
}

DayOutput run_day(const Network& net, const std::vector<VehiclePlan>& departures,
                  const SupplyParams& params, int day, double start_minute) {
  Engine engine(net, params, day, start_minute);
  for (const auto& plan : departures) engine.schedule(plan);
  DayOutput out;
  double day_end = start_minute + 1440.0;
  while (!engine.idle() || engine.now() < day_end - 1e-9) {
    auto done = engine.step();
    out.trips.insert(out.trips.end(), done.begin(), done.end());
    if (engine.now() > start_minute + 10 * 1440.0)
      throw std::runtime_error("network failed to clear within ten days of simulated time");
  }
  out.link_times = engine.observations();
  out.accumulation = engine.accumulation();
  std::sort(out.trips.begin(), out.trips.end(), [](const TripRecord& a, const TripRecord& b) {
    if (a.traveler != b.traveler) return a.traveler < b.traveler;
    return a.trip_index < b.trip_index;
  });
  return out;
}

}  // namespace tcs
