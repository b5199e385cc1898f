#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcs {

struct Segment {
  int id = 0;
  int from = 0;
  int to = 0;
  double length_m = 0.0;
  double vf_kmh = 0.0;          // free-flow speed
  double capacity_veh_h = 0.0;  // discharge capacity at the downstream end
  double kjam_veh_km = 0.0;     // jam density per lane
  int lanes = 1;
  bool signal = false;
  bool highway = false;

  double free_flow_minutes() const { return length_m / 1000.0 / vf_kmh * 60.0; }
};

class Network {
 public:
  Network() = default;
  Network(int node_count, std::vector<Segment> segments);

  int node_count() const { return node_count_; }
  int segment_count() const { return static_cast<int>(segments_.size()); }
  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& segment(int id) const;
  const std::vector<int>& outgoing(int node) const;

  std::string to_csv() const;
  static Network from_csv(const std::string& text);

 private:
  int node_count_ = 0;
  std::vector<Segment> segments_;
  std::vector<std::vector<int>> out_;
};

struct Path {
  std::vector<int> segments;
  double distance_m = 0.0;
  double ff_minutes = 0.0;
  int signal_count = 0;
  double highway_m = 0.0;
  double path_size = 1.0;
};

// One origin-destination pair's alternatives plus per-path flag attributes.
// Exactly one path carries each flag; ties resolve to the lowest index.
struct ChoiceSet {
  int origin = 0;
  int destination = 0;
  std::vector<Path> paths;
  std::vector<std::uint8_t> min_tt;
  std::vector<std::uint8_t> min_dist;
  std::vector<std::uint8_t> min_signals;
  std::vector<std::uint8_t> max_highway;
};

struct ChoiceSetParams {
  int k_per_metric = 4;  // paths kept per ranking metric
  int max_paths = 8;
};

using SegmentWeight = std::function<double(const Segment&)>;

// Loopless k-shortest paths (Yen). Returns up to k paths ordered by weight.
std::vector<Path> k_shortest_paths(const Network& net, int origin, int destination, int k,
                                   const SegmentWeight& weight);

// Union of time-ranked and distance-ranked k-shortest paths plus
// link-elimination variants of the best path, deduplicated and capped.
ChoiceSet build_choice_set(const Network& net, int origin, int destination,
                           const ChoiceSetParams& params);

// sum over segments of (l_a / L) * 1 / (number of set paths using a)
double path_size(const Network& net, const Path& path, const std::vector<Path>& set);

// Choice-set cache keyed by the network content hash; a stale hash means
// the cache is ignored.
void save_choice_sets(const std::string& path, std::uint64_t network_hash,
                      const std::map<std::pair<int, int>, ChoiceSet>& sets);
std::optional<std::map<std::pair<int, int>, ChoiceSet>> load_choice_sets(
    const std::string& path, std::uint64_t network_hash, const Network& net);

}  // namespace tcs
