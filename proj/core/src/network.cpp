#include "tcs/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tcs/io.hpp"

namespace tcs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SearchResult {
  std::vector<int> segments;
  double weight = kInf;
};

// Deterministic Dijkstra; ties resolve by node id, then by segment id order.
SearchResult shortest_path(const Network& net, int origin, int destination,
                           const SegmentWeight& weight, const std::vector<bool>& banned_segment,
                           const std::vector<bool>& banned_node) {
  const int n = net.node_count();
  std::vector<double> dist(n, kInf);
  std::vector<int> via(n, -1);  // segment id used to reach node
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[origin] = 0.0;
  heap.push({0.0, origin});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == destination) break;
    for (int sid : net.outgoing(u)) {
      if (banned_segment[sid]) continue;
      const Segment& s = net.segment(sid);
      if (banned_node[s.to]) continue;
      const double w = weight(s);
      if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("segment weight must be finite and non-negative");
      if (dist[u] + w < dist[s.to]) {
        dist[s.to] = dist[u] + w;
        via[s.to] = sid;
        heap.push({dist[s.to], s.to});
      }
    }
  }
  SearchResult out;
  if (dist[destination] == kInf) return out;
  out.weight = dist[destination];
  for (int node = destination; node != origin;) {
    const int sid = via[node];
    out.segments.push_back(sid);
    node = net.segment(sid).from;
  }
  std::reverse(out.segments.begin(), out.segments.end());
  return out;
}

Path make_path(const Network& net, std::vector<int> segments) {
  Path p;
  p.segments = std::move(segments);
  for (int sid : p.segments) {
    const Segment& s = net.segment(sid);
    p.distance_m += s.length_m;
    p.ff_minutes += s.free_flow_minutes();
    p.signal_count += s.signal ? 1 : 0;
    p.highway_m += s.highway ? s.length_m : 0.0;
  }
  return p;
}

double path_weight(const Network& net, const std::vector<int>& segments,
                   const SegmentWeight& weight) {
  double w = 0.0;
  for (int sid : segments) w += weight(net.segment(sid));
  return w;
}

}  // namespace

Network::Network(int node_count, std::vector<Segment> segments)
    : node_count_(node_count), segments_(std::move(segments)) {
  if (node_count_ <= 0) throw std::invalid_argument("network needs at least one node");
  out_.assign(node_count_, {});
  for (size_t i = 0; i < segments_.size(); ++i) {
    Segment& s = segments_[i];
    if (s.id != static_cast<int>(i))
      throw std::invalid_argument("segment ids must be dense and ordered");
    if (s.from < 0 || s.from >= node_count_ || s.to < 0 || s.to >= node_count_)
      throw std::invalid_argument("segment " + std::to_string(s.id) + " references unknown node");
    if (s.from == s.to)
      throw std::invalid_argument("segment " + std::to_string(s.id) + " is a self-loop");
    if (s.length_m <= 0 || s.vf_kmh <= 0 || s.capacity_veh_h <= 0 || s.kjam_veh_km <= 0 ||
        s.lanes <= 0)
      throw std::invalid_argument("segment " + std::to_string(s.id) +
                                  " has a non-positive attribute");
    out_[s.from].push_back(s.id);
  }
}

const Segment& Network::segment(int id) const {
  if (id < 0 || id >= static_cast<int>(segments_.size()))
    throw std::out_of_range("segment id " + std::to_string(id));
  return segments_[id];
}

const std::vector<int>& Network::outgoing(int node) const {
  if (node < 0 || node >= node_count_) throw std::out_of_range("node id " + std::to_string(node));
  return out_[node];
}

std::string Network::to_csv() const {
  std::ostringstream out;
  out << "id,from,to,length_m,vf_kmh,capacity_veh_per_h,kjam_veh_per_km,signal,highway\n";
  for (const Segment& s : segments_) {
    out << s.id << ',' << s.from << ',' << s.to << ',' << format_double(s.length_m) << ','
        << format_double(s.vf_kmh) << ',' << format_double(s.capacity_veh_h) << ','
        << format_double(s.kjam_veh_km) << ',' << (s.signal ? 1 : 0) << ',' << (s.highway ? 1 : 0)
        << '\n';
  }
  return out.str();
}

Network Network::from_csv(const std::string& text) {
  std::vector<Segment> segments;
  int max_node = -1;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("id,", 0) == 0) continue;  // header
    }
    auto f = split(line, ',');
    if (f.size() != 9) throw std::runtime_error("network csv: expected 9 columns, got line '" + line + "'");
    Segment s;
    s.id = std::stoi(f[0]);
    s.from = std::stoi(f[1]);
    s.to = std::stoi(f[2]);
    s.length_m = std::stod(f[3]);
    s.vf_kmh = std::stod(f[4]);
    s.capacity_veh_h = std::stod(f[5]);
    s.kjam_veh_km = std::stod(f[6]);
    s.signal = std::stoi(f[7]) != 0;
    s.highway = std::stoi(f[8]) != 0;
    max_node = std::max({max_node, s.from, s.to});
    segments.push_back(s);
  }
  if (segments.empty()) throw std::runtime_error("network csv: no segments");
  return Network(max_node + 1, std::move(segments));
}

std::vector<Path> k_shortest_paths(const Network& net, int origin, int destination, int k,
                                   const SegmentWeight& weight) {
  if (origin == destination) throw std::invalid_argument("k_shortest_paths: origin == destination");
  if (origin < 0 || origin >= net.node_count() || destination < 0 ||
      destination >= net.node_count())
    throw std::invalid_argument("k_shortest_paths: unknown node");
  if (k <= 0) return {};

  const size_t nseg = net.segments().size();
  std::vector<bool> no_segments(nseg, false);
  std::vector<bool> no_nodes(net.node_count(), false);

  std::vector<std::vector<int>> accepted;
  SearchResult first = shortest_path(net, origin, destination, weight, no_segments, no_nodes);
  if (first.segments.empty()) return {};
  accepted.push_back(first.segments);

  // Candidate set ordered by (weight, segment sequence) for determinism.
  using Cand = std::pair<double, std::vector<int>>;
  std::set<Cand> candidates;

  while (static_cast<int>(accepted.size()) < k) {
    const std::vector<int>& prev = accepted.back();
    for (size_t i = 0; i < prev.size(); ++i) {
      const int spur_node = net.segment(prev[i]).from;
      std::vector<int> root(prev.begin(), prev.begin() + static_cast<long>(i));

      std::vector<bool> banned_seg(nseg, false);
      for (const auto& p : accepted) {
        if (p.size() > i && std::equal(root.begin(), root.end(), p.begin()))
          banned_seg[p[i]] = true;
      }
      std::vector<bool> banned_node(net.node_count(), false);
      for (int sid : root) banned_node[net.segment(sid).from] = true;

      SearchResult spur =
          shortest_path(net, spur_node, destination, weight, banned_seg, banned_node);
      if (spur.segments.empty()) continue;
      std::vector<int> total = root;
      total.insert(total.end(), spur.segments.begin(), spur.segments.end());
      bool known = std::find(accepted.begin(), accepted.end(), total) != accepted.end();
      if (!known) candidates.insert({path_weight(net, total, weight), std::move(total)});
    }
    if (candidates.empty()) break;
    auto best = candidates.begin();
    accepted.push_back(best->second);
    candidates.erase(best);
  }

  std::vector<Path> out;
  out.reserve(accepted.size());
  for (auto& segs : accepted) out.push_back(make_path(net, std::move(segs)));
  return out;
}

double path_size(const Network& net, const Path& path, const std::vector<Path>& set) {
  if (path.segments.empty()) throw std::invalid_argument("path_size: empty path");
  std::map<int, int> usage;
  for (const Path& p : set)
    for (int sid : p.segments) ++usage[sid];
  double ps = 0.0;
  for (int sid : path.segments) {
    auto it = usage.find(sid);
    const int n_a = it == usage.end() ? 1 : it->second;
    ps += net.segment(sid).length_m / path.distance_m / n_a;
  }
  return ps;
}

namespace {

void finalize_choice_set(const Network& net, ChoiceSet& cs) {
  const size_t n = cs.paths.size();
  if (n == 0) throw std::runtime_error("choice set has no paths");
  for (Path& p : cs.paths) p.path_size = path_size(net, p, cs.paths);
  cs.min_tt.assign(n, 0);
  cs.min_dist.assign(n, 0);
  cs.min_signals.assign(n, 0);
  cs.max_highway.assign(n, 0);
  auto flag_best = [&](std::vector<std::uint8_t>& flags, auto key, bool want_min) {
    size_t best_i = 0;
    for (size_t i = 1; i < n; ++i) {
      const auto a = key(cs.paths[i]);
      const auto b = key(cs.paths[best_i]);
      if (want_min ? a < b : a > b) best_i = i;
    }
    flags[best_i] = 1;
  };
  flag_best(cs.min_tt, [](const Path& p) { return p.ff_minutes; }, true);
  flag_best(cs.min_dist, [](const Path& p) { return p.distance_m; }, true);
  flag_best(cs.min_signals, [](const Path& p) { return p.signal_count; }, true);
  flag_best(cs.max_highway, [](const Path& p) { return p.highway_m; }, false);
}

}  // namespace

ChoiceSet build_choice_set(const Network& net, int origin, int destination,
                           const ChoiceSetParams& params) {
  if (params.k_per_metric <= 0 || params.max_paths <= 0)
    throw std::invalid_argument("choice set parameters must be positive");

  const SegmentWeight by_time = [](const Segment& s) { return s.free_flow_minutes(); };
  const SegmentWeight by_dist = [](const Segment& s) { return s.length_m; };

  std::vector<Path> pool = k_shortest_paths(net, origin, destination, params.k_per_metric, by_time);
  if (pool.empty())
    throw std::runtime_error("no path from node " + std::to_string(origin) + " to node " +
                             std::to_string(destination));
  for (Path& p : k_shortest_paths(net, origin, destination, params.k_per_metric, by_dist))
    pool.push_back(std::move(p));

  // Link elimination on the fastest path.
  const std::vector<int> best = pool.front().segments;
  std::vector<bool> no_nodes(net.node_count(), false);
  for (int drop : best) {
    std::vector<bool> banned(net.segments().size(), false);
    banned[drop] = true;
    SearchResult alt = shortest_path(net, origin, destination, by_time, banned, no_nodes);
    if (!alt.segments.empty()) pool.push_back(make_path(net, std::move(alt.segments)));
  }

  std::sort(pool.begin(), pool.end(), [](const Path& a, const Path& b) {
    if (a.ff_minutes != b.ff_minutes) return a.ff_minutes < b.ff_minutes;
    if (a.distance_m != b.distance_m) return a.distance_m < b.distance_m;
    return a.segments < b.segments;
  });
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const Path& a, const Path& b) { return a.segments == b.segments; }),
             pool.end());
  if (static_cast<int>(pool.size()) > params.max_paths) pool.resize(params.max_paths);

  ChoiceSet cs;
  cs.origin = origin;
  cs.destination = destination;
  cs.paths = std::move(pool);
  finalize_choice_set(net, cs);
  return cs;
}

void save_choice_sets(const std::string& path, std::uint64_t network_hash,
                      const std::map<std::pair<int, int>, ChoiceSet>& sets) {
  nlohmann::ordered_json doc;
  doc["network_hash"] = network_hash;
  auto& entries = doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& [od, cs] : sets) {
    nlohmann::ordered_json e;
    e["origin"] = od.first;
    e["destination"] = od.second;
    auto& paths = e["paths"] = nlohmann::ordered_json::array();
    for (const Path& p : cs.paths) paths.push_back(p.segments);
    entries.push_back(std::move(e));
  }
  write_text_file(path, doc.dump(1) + "\n");
}

std::optional<std::map<std::pair<int, int>, ChoiceSet>> load_choice_sets(
    const std::string& path, std::uint64_t network_hash, const Network& net) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.contains("network_hash") ||
      doc["network_hash"].get<std::uint64_t>() != network_hash)
    return std::nullopt;

  std::map<std::pair<int, int>, ChoiceSet> out;
  try {
    for (const auto& e : doc["entries"]) {
      ChoiceSet cs;
      cs.origin = e["origin"].get<int>();
      cs.destination = e["destination"].get<int>();
      for (const auto& segs : e["paths"])
        cs.paths.push_back(make_path(net, segs.get<std::vector<int>>()));
      finalize_choice_set(net, cs);
      out.emplace(std::make_pair(cs.origin, cs.destination), std::move(cs));
    }
  } catch (const std::exception&) {
    return std::nullopt;  // stale or malformed cache: caller regenerates
  }
  return out;
}

}  // namespace tcs
