#include <doctest.h>

#include <cmath>
#include <vector>

#include "tcs/network.hpp"
#include "tcs/scenario.hpp"
#include "tcs/supply.hpp"

namespace {

tcs::Segment one_km(double capacity_veh_h, double kjam = 120.0) {
  tcs::Segment s;
  s.id = 0;
  s.from = 0;
  s.to = 1;
  s.length_m = 1000.0;
  s.vf_kmh = 60.0;
  s.capacity_veh_h = capacity_veh_h;
  s.kjam_veh_km = kjam;
  return s;
}

tcs::Path path_over(const tcs::Network& net, std::vector<int> segs) {
  tcs::Path p;
  p.segments = std::move(segs);
  for (int s : p.segments) {
    p.distance_m += net.segment(s).length_m;
    p.ff_minutes += net.segment(s).free_flow_minutes();
  }
  return p;
}

}  // namespace

TEST_CASE("speed-density relation hits its anchor points") {
  tcs::SupplyParams params;
  tcs::Segment seg = one_km(1000.0);

  CHECK(tcs::speed_kmh(seg, 0.0, params) == 60.0);       // empty road
  CHECK(tcs::speed_kmh(seg, 120.0, params) == 5.0);      // jammed: crawl floor
  CHECK(tcs::speed_kmh(seg, 500.0, params) == 5.0);      // clamped above jam
  CHECK(tcs::speed_kmh(seg, 119.0, params) == 5.0);      // near-jam underruns the floor

  params.alpha = 1.0;
  params.beta = 1.0;
  CHECK(tcs::speed_kmh(seg, 60.0, params) == 30.0);      // linear at half density

  double prev = 1e300;
  for (double rho = 0.0; rho <= 120.0; rho += 5.0) {
    double v = tcs::speed_kmh(seg, rho, params);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("a lone vehicle travels at exactly free flow") {
  tcs::Network net(2, {one_km(1800.0)});
  tcs::Path p = path_over(net, {0});

  tcs::SupplyParams params;
  tcs::DayOutput out = tcs::run_day(net, {{7, 0, &p, 480.0}}, params);

  REQUIRE(out.trips.size() == 1);
  const tcs::TripRecord& rec = out.trips[0];
  CHECK(rec.traveler == 7);
  CHECK(rec.tt_minutes == 1.0);  // event-stamped, not tick-quantized
  CHECK(rec.arrival == 481.0);
  CHECK(rec.tt_ff == 1.0);
  CHECK(rec.distance_m == 1000.0);

  // The observation lands in the 8:00 entry bin at the exact traversal.
  REQUIRE(out.link_times.has(0, 96));
  CHECK(out.link_times.mean(0, 96) == 1.0);
}

TEST_CASE("a two-segment path chains exact traversals") {
  tcs::Segment a = one_km(1800.0);
  tcs::Segment b = one_km(1800.0);
  b.id = 1;
  b.from = 1;
  b.to = 2;
  tcs::Network net(3, {a, b});
  tcs::Path p = path_over(net, {0, 1});

  tcs::DayOutput out = tcs::run_day(net, {{0, 0, &p, 100.0}}, tcs::SupplyParams{});
  REQUIRE(out.trips.size() == 1);
  CHECK(out.trips[0].tt_minutes == 2.0);
}

TEST_CASE("an oversaturated bottleneck discharges one vehicle per headway") {
  // Huge jam density disables the speed-density term, so the only delay is
  // the downstream queue and the analytic exits are dep + ff, then one
  // service every 60/capacity minutes.
  const int n = 30;
  tcs::Network net(2, {one_km(720.0, 1e9)});
  tcs::Path p = path_over(net, {0});

  std::vector<tcs::VehiclePlan> deps;
  for (int i = 0; i < n; ++i) deps.push_back({i, 0, &p, 100.0 + 0.001 * i});
  tcs::DayOutput out = tcs::run_day(net, deps, tcs::SupplyParams{});

  REQUIRE(out.trips.size() == n);
  const double headway = 60.0 / 720.0;
  double prev_arrival = 0.0;
  for (int i = 0; i < n; ++i) {
    const tcs::TripRecord& rec = out.trips[i];
    REQUIRE(rec.traveler == i);  // FIFO preserved
    const double analytic = 101.0 + i * headway;
    CHECK(std::abs(rec.arrival - analytic) <= 1e-6);
    CHECK(rec.arrival > prev_arrival);
    CHECK(rec.tt_minutes >= rec.tt_ff - 1e-9);
    prev_arrival = rec.arrival;
  }

  // Makespan equals the queue drain time: 29 headways behind the first exit.
  CHECK(std::abs(out.trips[n - 1].arrival - (101.0 + (n - 1) * headway)) <= 1e-6);
}

TEST_CASE("vehicle counts balance every tick and the network drains") {
  tcs::Segment a = one_km(400.0);
  tcs::Segment b = one_km(400.0);
  b.id = 1;
  b.from = 1;
  b.to = 2;
  tcs::Network net(3, {a, b});
  tcs::Path p = path_over(net, {0, 1});

  tcs::Engine engine(net, tcs::SupplyParams{}, 1, 0.0);
  for (int i = 0; i < 50; ++i) engine.schedule({i, 0, &p, 60.0 + 0.01 * i});

  std::uint64_t done = 0;
  while (!engine.idle()) {
    done += engine.step().size();
    CHECK(engine.entered() == engine.finished() + engine.on_network());
  }
  CHECK(done == 50);
  CHECK(engine.on_network() == 0);
  CHECK(engine.entered() == 50);
  CHECK(engine.finished() == 50);
}

TEST_CASE("scheduling rejects empty paths and past departures") {
  tcs::Network net(2, {one_km(900.0)});
  tcs::Path p = path_over(net, {0});
  tcs::Path empty;

  tcs::Engine engine(net, tcs::SupplyParams{}, 1, 0.0);
  CHECK_THROWS(engine.schedule({0, 0, nullptr, 10.0}));
  CHECK_THROWS(engine.schedule({0, 0, &empty, 10.0}));
  engine.step();
  CHECK_THROWS(engine.schedule({0, 0, &p, engine.now() - 1.0}));
}

TEST_CASE("identical departure lists replay to identical days") {
  tcs::Network net(2, {one_km(600.0)});
  tcs::Path p = path_over(net, {0});
  std::vector<tcs::VehiclePlan> deps;
  for (int i = 0; i < 200; ++i) deps.push_back({i, 0, &p, 400.0 + 0.37 * i});

  tcs::DayOutput a = tcs::run_day(net, deps, tcs::SupplyParams{});
  tcs::DayOutput b = tcs::run_day(net, deps, tcs::SupplyParams{});

  REQUIRE(a.trips.size() == b.trips.size());
  for (size_t i = 0; i < a.trips.size(); ++i) {
    CHECK(a.trips[i].arrival == b.trips[i].arrival);
    CHECK(a.trips[i].tt_minutes == b.trips[i].tt_minutes);
  }
  CHECK(a.accumulation == b.accumulation);
}

TEST_CASE("accumulation peaks under load and returns to zero") {
  tcs::Network net(2, {one_km(360.0, 1e9)});  // 6 veh/min discharge
  tcs::Path p = path_over(net, {0});
  std::vector<tcs::VehiclePlan> deps;
  for (int i = 0; i < 120; ++i) deps.push_back({i, 0, &p, 200.0 + 0.05 * i});

  tcs::DayOutput out = tcs::run_day(net, deps, tcs::SupplyParams{});
  int peak = 0;
  for (int v : out.accumulation) peak = std::max(peak, v);
  CHECK(peak > 50);                       // queue visibly builds
  CHECK(out.accumulation[287] == 0);      // drained well before midnight

  // Everyone eventually exits, one headway apart once the queue forms.
  REQUIRE(out.trips.size() == 120);
  CHECK(std::abs(out.trips[119].arrival - (201.0 + 119 * (60.0 / 360.0))) <= 1e-6);
}

TEST_CASE("observed link times average by entry bin") {
  tcs::DayLinkTimes obs(2);
  CHECK_FALSE(obs.has(1, 10));
  CHECK_THROWS(obs.mean(1, 10));
  obs.add(1, 52.0, 4.0);   // bin 10
  obs.add(1, 54.9, 6.0);   // same bin
  obs.add(1, 55.0, 9.0);   // next bin
  CHECK(obs.mean(1, 10) == 5.0);
  CHECK(obs.mean(1, 11) == 9.0);
}
