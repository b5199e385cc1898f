#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcs/daytoday.hpp"
#include "tcs/io.hpp"
#include "tcs/market.hpp"
#include "tcs/metrics.hpp"
#include "tcs/optimizer.hpp"
#include "tcs/random.hpp"
#include "tcs/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir;
  std::uint64_t seed = 0;  // 0 keeps the scenario's seed
  bool seed_set = false;
  int days = 0;
  double threshold = -1.0;
  int replications = 1;
  bool emit_transactions = false;
  bool emit_allocations = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--scenario", a.scenario_path, "scenario file (built-in defaults when absent)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", a.out_dir, "output directory")->required();
  cmd->add_option("--seed", a.seed, "override the scenario seed")
      ->each([&a](const std::string&) { a.seed_set = true; });
  cmd->add_option("--days", a.days, "override the number of simulated days")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", a.threshold,
                  "minimum $ profit before a traveler sells (overrides the scenario)");
  cmd->add_option("--replications", a.replications,
                  "independent repetitions with consecutive seeds")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--emit-transactions", a.emit_transactions,
                "write buys, uses and sells to transactions.csv");
  cmd->add_flag("--emit-allocations", a.emit_allocations,
                "include allocation rows in transactions.csv");
}

tcs::ScenarioConfig resolve_config(const CommonArgs& a) {
  tcs::ScenarioConfig cfg =
      a.scenario_path.empty() ? tcs::ScenarioConfig{} : tcs::load_scenario(a.scenario_path);
  if (a.seed_set) cfg.seed = a.seed;
  if (a.days > 0) cfg.days = a.days;
  if (a.threshold >= 0.0) cfg.tcs.profit_threshold = a.threshold;
  cfg.validate();
  return cfg;
}

std::string csv_d(double v) { return tcs::format_double(v); }

void write_file(const fs::path& p, const std::string& text) {
  tcs::write_text_file(p.string(), text);
}

// Per-day metrics; the welfare column is day-matched against `base` when a
// reference run is available (base runs themselves report 0).
void write_metrics_csv(const fs::path& dir, const tcs::Experiment& exp,
                       const tcs::RunResult& run, const tcs::RunResult* base) {
  std::vector<double> welfare(run.days.size(), 0.0);
  if (base != nullptr) welfare = tcs::daily_welfare(exp, run, *base);
  const double capita = std::max<std::size_t>(exp.population.size(), 1);

  std::ostringstream out;
  out << "day,price,next_price,bought,sold,allocated_credits,trips,mean_tt_min,mean_sde_min,"
         "mean_sdl_min,inconsistency,mean_utility,welfare_gain_usd_per_capita,tti,buys,sells,"
         "buyback_buys,buyback_travelers,fees_dollars\n";
  for (std::size_t k = 0; k < run.days.size(); ++k) {
    const tcs::DayResult& d = run.days[k];
    double tt = 0.0, sde = 0.0, sdl = 0.0;
    for (const tcs::TripRecord& t : d.trips) {
      tt += t.tt_minutes;
      sde += t.sde_minutes;
      sdl += t.sdl_minutes;
    }
    const double nt = d.trips.empty() ? 1.0 : static_cast<double>(d.trips.size());
    tcs::TradeStats ts = tcs::transaction_stats(d.trades);
    tcs::TtiProfile tti = tcs::weighted_tti(d.trips);
    double gain = k < welfare.size() ? welfare[k] / capita : 0.0;
    out << d.day << ',' << csv_d(d.price) << ',' << csv_d(d.next_price) << ',' << d.bought << ','
        << d.sold << ',' << d.allocated_credits << ',' << d.trips.size() << ',' << csv_d(tt / nt)
        << ',' << csv_d(sde / nt) << ',' << csv_d(sdl / nt) << ',' << csv_d(d.inconsistency)
        << ',' << csv_d(d.mean_utility) << ',' << csv_d(gain) << ',' << csv_d(tti.overall) << ','
        << ts.buys << ',' << ts.sells << ',' << ts.buyback_buys << ',' << ts.buyback_travelers
        << ',' << csv_d(ts.fee_total) << '\n';
  }
  write_file(dir / "metrics.csv", out.str());
}

void write_schedule_delay_csv(const fs::path& dir, const tcs::Experiment& exp,
                              const tcs::RunResult& run) {
  std::ostringstream out;
  out << "day,bin_start_min,trips,early_usd_per_trip,late_usd_per_trip\n";
  for (const tcs::DayResult& d : run.days)
    for (const tcs::ScheduleDelayBin& b : tcs::schedule_delay_costs(d.trips, exp.population))
      out << d.day << ',' << b.bin_start_min << ',' << b.trips << ','
          << csv_d(b.early_usd_per_trip) << ',' << csv_d(b.late_usd_per_trip) << '\n';
  write_file(dir / "schedule_delay.csv", out.str());
}

void write_sell_profile_csv(const fs::path& dir, const tcs::RunResult& run) {
  std::ostringstream out;
  out << "day,bin_start_min,sells,mean_credits\n";
  for (const tcs::DayResult& d : run.days)
    for (const tcs::SellProfileBin& b : tcs::sell_profile(d.trades))
      out << d.day << ',' << b.bin_start_min << ',' << b.sells << ',' << csv_d(b.mean_credits)
          << '\n';
  write_file(dir / "sell_profile.csv", out.str());
}

void write_trips_csv(const fs::path& dir, const tcs::RunResult& run) {
  std::ostringstream out;
  out << "day,traveler,trip,t_dep,arrival,tt_min,tt_pre_min,tt_ff_min,distance_m,path,"
         "charged_credits,sde_min,sdl_min,t_star\n";
  for (const tcs::DayResult& d : run.days) {
    for (const tcs::TripRecord& t : d.trips) {
      out << d.day << ',' << t.traveler << ',' << t.trip_index << ',' << csv_d(t.t_dep) << ','
          << csv_d(t.arrival) << ',' << csv_d(t.tt_minutes) << ',' << csv_d(t.tt_pre) << ','
          << csv_d(t.tt_ff) << ',' << csv_d(t.distance_m) << ',' << t.path_ordinal << ','
          << t.charged_credits << ',' << csv_d(t.sde_minutes) << ',' << csv_d(t.sdl_minutes)
          << ',' << csv_d(t.t_star) << '\n';
    }
  }
  write_file(dir / "trips.csv", out.str());
}

void write_accumulation_csv(const fs::path& dir, const tcs::RunResult& run) {
  std::ostringstream out;
  out << "day,bin_start_min,vehicles\n";
  for (const tcs::DayResult& d : run.days)
    for (int b = 0; b < 288; ++b) out << d.day << ',' << b * 5 << ',' << d.accumulation[b] << '\n';
  write_file(dir / "accumulation.csv", out.str());
}

ordered_json run_summary(const tcs::Experiment& exp, const tcs::RunResult& run) {
  const int window = exp.config.learning.stability_window;
  std::size_t n = std::min<std::size_t>(run.days.size(), window);
  double tti = 0.0, inc = 0.0, util = 0.0;
  std::int64_t bought = 0, sold = 0;
  for (std::size_t k = run.days.size() - n; k < run.days.size(); ++k) {
    tti += tcs::weighted_tti(run.days[k].trips).overall;
    inc += run.days[k].inconsistency;
    util += run.days[k].mean_utility;
    bought += run.days[k].bought;
    sold += run.days[k].sold;
  }
  tcs::MarketEquilibrium eq = tcs::market_equilibrium(run, window);
  ordered_json j;
  j["days"] = run.days.size();
  j["stabilized"] = run.stabilized;
  j["stability_measure"] = run.stability_measure;
  j["final_price"] = run.days.back().next_price;
  j["trailing_window"] = {
      {"days", n},
      {"mean_tti", tti / static_cast<double>(n)},
      {"mean_inconsistency", inc / static_cast<double>(n)},
      {"mean_utility", util / static_cast<double>(n)},
      {"credits_bought", bought},
      {"credits_sold", sold},
      {"imbalance_share", eq.imbalance_share},
      {"price_drift", eq.price_drift},
  };
  std::size_t trips = 0;
  for (const tcs::DayResult& d : run.days) trips += d.trips.size();
  j["total_trips"] = trips;
  tcs::TradeStats ts;
  std::int64_t traded = 0;
  for (const tcs::DayResult& d : run.days) {
    tcs::TradeStats day = tcs::transaction_stats(d.trades);
    ts.buys += day.buys;
    ts.sells += day.sells;
    ts.buyback_buys += day.buyback_buys;
    ts.buyback_travelers += day.buyback_travelers;
    traded += day.credits_bought + day.credits_sold;
  }
  j["trades"] = {
      {"buys", ts.buys},
      {"sells", ts.sells},
      {"buyback_buys", ts.buyback_buys},
      {"buyback_travelers", ts.buyback_travelers},
      {"credits_traded", traded},
  };
  return j;
}

// One simulated run plus its artifact files.
tcs::RunResult execute_run(const tcs::Experiment& exp, const tcs::TollProfile& toll,
                           const CommonArgs& args, const fs::path& dir, ordered_json& summary,
                           const tcs::RunResult* base = nullptr) {
  fs::create_directories(dir);
  tcs::RunOptions opt;
  opt.toll = toll;

  std::ofstream tx;
  if (args.emit_transactions) {
    tx.open(dir / "transactions.csv");
    tx << "day,minute,kind,traveler,amount,unit_price,fee\n";
    bool with_alloc = args.emit_allocations;
    opt.sink = [&tx, with_alloc](const tcs::Transaction& t) {
      if (!with_alloc && t.kind == tcs::Transaction::Kind::allocation) return;
      tx << t.day << ',' << csv_d(t.minute) << ',' << tcs::to_string(t.kind) << ',' << t.traveler
         << ',' << t.amount << ',' << csv_d(t.unit_price) << ',' << csv_d(t.fee) << '\n';
    };
  }

  tcs::RunResult run = tcs::run_experiment(exp, opt);
  if (tx.is_open()) tx.close();

  write_metrics_csv(dir, exp, run, base);
  write_trips_csv(dir, run);
  write_accumulation_csv(dir, run);
  write_schedule_delay_csv(dir, exp, run);
  write_sell_profile_csv(dir, run);
  write_file(dir / "toll_profile.csv", toll.to_csv());
  summary = run_summary(exp, run);
  return run;
}

std::uint64_t artifact_hash(const fs::path& dir, ordered_json& files) {
  std::vector<fs::path> paths;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    if (e.path().filename() == "run_info.json") continue;
    paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::string combined;
  for (const fs::path& p : paths) {
    std::uint64_t h = tcs::hash_file(p.string());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    std::string rel = fs::relative(p, dir).generic_string();
    files[rel] = buf;
    combined += rel + ":" + buf + "\n";
  }
  return tcs::hash_bytes(combined);
}

void write_run_info(const fs::path& dir, const std::string& mode, const tcs::ScenarioConfig& cfg,
                    const CommonArgs& args, ordered_json extra) {
  ordered_json j;
  j["mode"] = mode;
  j["seed"] = cfg.seed;
  j["days"] = cfg.days;
  j["population_size"] = cfg.population_size;
  j["scenario_file"] = args.scenario_path.empty() ? "<defaults>" : args.scenario_path;
  j["profit_threshold"] = cfg.tcs.profit_threshold;
  for (auto& [k, v] : extra.items()) j[k] = v;
  ordered_json files = ordered_json::object();
  std::uint64_t h = artifact_hash(dir, files);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  j["determinism_hash"] = buf;
  j["artifacts"] = files;
  j["written_at"] = []() {
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return std::string(stamp);
  }();
  write_file(dir / "run_info.json", j.dump(1) + "\n");
}

void write_scenario_artifacts(const fs::path& dir, const tcs::Experiment& exp) {
  fs::create_directories(dir);
  write_file(dir / "network.csv", exp.net.to_csv());
  write_file(dir / "population.json", tcs::population_to_json(exp.population));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

ordered_json aggregate(const std::map<std::string, std::vector<double>>& series) {
  ordered_json j;
  for (const auto& [k, v] : series) j[k] = {{"mean", mean_of(v)}, {"sd", sd_of(v)}};
  return j;
}

int cmd_base(const CommonArgs& args) {
  fs::path root(args.out_dir);
  std::map<std::string, std::vector<double>> agg;
  for (int r = 0; r < args.replications; ++r) {
    tcs::ScenarioConfig cfg = resolve_config(args);
    cfg.seed += static_cast<std::uint64_t>(r);
    fs::path dir = args.replications > 1 ? root / ("rep" + std::to_string(r)) : root;
    fs::create_directories(dir);
    tcs::Experiment exp =
        tcs::Experiment::build(cfg, (dir / "choice_sets.json").string());
    write_scenario_artifacts(dir, exp);
    ordered_json summary;
    tcs::RunResult run = execute_run(exp, tcs::TollProfile{}, args, dir, summary);
    write_file(dir / "summary.json", summary.dump(1) + "\n");
    write_run_info(dir, "base", cfg, args, ordered_json::object());
    agg["final_price"].push_back(run.days.back().next_price);
    agg["mean_tti"].push_back(summary["trailing_window"]["mean_tti"].get<double>());
    agg["mean_utility"].push_back(summary["trailing_window"]["mean_utility"].get<double>());
    std::cout << "base run " << r << ": days=" << run.days.size()
              << " stabilized=" << (run.stabilized ? "yes" : "no")
              << " tti=" << summary["trailing_window"]["mean_tti"].dump() << "\n";
  }
  if (args.replications > 1)
    write_file(root / "aggregate.json", aggregate(agg).dump(1) + "\n");
  return 0;
}

// Peak time accepted as minutes of day or as HH:MM.
double parse_minutes(const std::string& s) {
  std::size_t colon = s.find(':');
  if (colon == std::string::npos) return std::stod(s);
  int h = std::stoi(s.substr(0, colon));
  int m = std::stoi(s.substr(colon + 1));
  if (h < 0 || h > 23 || m < 0 || m > 59)
    throw std::runtime_error("bad HH:MM time: " + s);
  return h * 60.0 + m;
}

tcs::TollProfile resolve_toll(const std::string& toll_file, const std::vector<std::string>& abc) {
  if (!toll_file.empty())
    return tcs::TollProfile::from_csv(tcs::read_text_file(toll_file));
  if (abc.size() == 3)
    return tcs::gaussian_toll_profile(std::stod(abc[0]), parse_minutes(abc[1]),
                                      std::stod(abc[2]));
  throw std::runtime_error("toll mode needs --toll-file or --params A,mu,sigma");
}

int cmd_toll(const CommonArgs& args, const std::string& toll_file,
             const std::vector<std::string>& abc) {
  fs::path root(args.out_dir);
  std::map<std::string, std::vector<double>> agg;
  for (int r = 0; r < args.replications; ++r) {
    tcs::ScenarioConfig cfg = resolve_config(args);
    cfg.seed += static_cast<std::uint64_t>(r);
    fs::path dir = args.replications > 1 ? root / ("rep" + std::to_string(r)) : root;
    fs::create_directories(dir);
    tcs::Experiment exp = tcs::Experiment::build(cfg, (dir / "choice_sets.json").string());
    write_scenario_artifacts(dir, exp);

    ordered_json base_summary;
    tcs::RunResult base =
        execute_run(exp, tcs::TollProfile{}, args, dir / "base", base_summary);
    write_file(dir / "base" / "summary.json", base_summary.dump(1) + "\n");

    tcs::TollProfile toll = resolve_toll(toll_file, abc);
    ordered_json summary;
    tcs::RunResult run = execute_run(exp, toll, args, dir, summary, &base);
    tcs::WelfareReport rep =
        tcs::social_welfare(exp, run, base, cfg.bo.welfare_window);
    summary["welfare_vs_base"] = {{"social_welfare_per_day", rep.social_welfare},
                                  {"toll_revenue_per_day", rep.toll_revenue},
                                  {"mean_utility_tolled", rep.mean_utility_tolled},
                                  {"mean_utility_base", rep.mean_utility_base}};
    write_file(dir / "summary.json", summary.dump(1) + "\n");
    write_run_info(dir, "toll", cfg, args, ordered_json::object());
    agg["social_welfare"].push_back(rep.social_welfare);
    agg["final_price"].push_back(run.days.back().next_price);
    agg["mean_tti"].push_back(summary["trailing_window"]["mean_tti"].get<double>());
    std::cout << "toll run " << r << ": welfare/day=" << rep.social_welfare
              << " revenue/day=" << rep.toll_revenue << "\n";
  }
  if (args.replications > 1)
    write_file(root / "aggregate.json", aggregate(agg).dump(1) + "\n");
  return 0;
}

int cmd_bo(const CommonArgs& args, int iterations, int initial_design) {
  fs::path root(args.out_dir);
  std::map<std::string, std::vector<double>> agg;
  for (int r = 0; r < args.replications; ++r) {
    tcs::ScenarioConfig cfg = resolve_config(args);
    cfg.seed += static_cast<std::uint64_t>(r);
    if (iterations > 0) cfg.bo.iterations = iterations;
    if (initial_design > 0) cfg.bo.initial_design = initial_design;
    fs::path dir = args.replications > 1 ? root / ("rep" + std::to_string(r)) : root;
    fs::create_directories(dir);
    tcs::Experiment exp = tcs::Experiment::build(cfg, (dir / "choice_sets.json").string());
    write_scenario_artifacts(dir, exp);

    ordered_json base_summary;
    tcs::RunResult base =
        execute_run(exp, tcs::TollProfile{}, args, dir / "base", base_summary);
    write_file(dir / "base" / "summary.json", base_summary.dump(1) + "\n");

    tcs::Rng rng(cfg.seed);
    tcs::Rng bo_rng = rng.fork("bo");
    tcs::TollDesignResult design = tcs::design_toll(exp, base, bo_rng);

    std::ostringstream hist;
    hist << "index,phase,amplitude,mu,sigma,welfare_per_day,incumbent,tti,revenue_per_day,"
            "final_price\n";
    double incumbent = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < design.bo.rows.size(); ++i) {
      const tcs::BoRow& row = design.bo.rows[i];
      const tcs::DesignEval& ev = design.evals[i];
      incumbent = std::max(incumbent, row.objective);
      hist << row.index << ',' << (row.initial_design ? "design" : "search") << ','
           << csv_d(row.amplitude) << ',' << csv_d(row.mu) << ',' << csv_d(row.sigma) << ','
           << csv_d(row.objective) << ',' << csv_d(incumbent) << ',' << csv_d(ev.tti) << ','
           << csv_d(ev.welfare.toll_revenue) << ',' << csv_d(ev.final_price) << '\n';
    }
    write_file(dir / "bo_history.csv", hist.str());

    ordered_json best_summary;
    tcs::RunResult best =
        execute_run(exp, design.best_toll, args, dir / "best", best_summary, &base);
    tcs::WelfareReport rep = tcs::social_welfare(exp, best, base, cfg.bo.welfare_window);
    best_summary["welfare_vs_base"] = {{"social_welfare_per_day", rep.social_welfare},
                                       {"toll_revenue_per_day", rep.toll_revenue}};
    write_file(dir / "best" / "summary.json", best_summary.dump(1) + "\n");

    ordered_json summary;
    summary["best"] = {{"amplitude", design.bo.best.amplitude},
                       {"mu", design.bo.best.mu},
                       {"sigma", design.bo.best.sigma},
                       {"welfare_per_day", design.bo.best.objective}};
    summary["evaluations"] = design.bo.rows.size();
    summary["base"] = base_summary;
    summary["best_run"] = best_summary;
    write_file(dir / "summary.json", summary.dump(1) + "\n");
    write_run_info(dir, "bo", cfg, args,
                   ordered_json{{"bo_iterations", cfg.bo.iterations},
                                {"bo_initial_design", cfg.bo.initial_design}});
    agg["best_welfare"].push_back(design.bo.best.objective);
    agg["best_amplitude"].push_back(design.bo.best.amplitude);
    agg["best_mu"].push_back(design.bo.best.mu);
    agg["best_sigma"].push_back(design.bo.best.sigma);
    std::cout << "bo run " << r << ": best welfare/day=" << design.bo.best.objective
              << " at A=" << design.bo.best.amplitude << " mu=" << design.bo.best.mu
              << " sigma=" << design.bo.best.sigma << "\n";
  }
  if (args.replications > 1)
    write_file(root / "aggregate.json", aggregate(agg).dump(1) + "\n");
  return 0;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b, const std::string& out) {
  auto load = [](const std::string& d) {
    return ordered_json::parse(tcs::read_text_file((fs::path(d) / "summary.json").string()));
  };
  ordered_json a = load(dir_a), b = load(dir_b);
  ordered_json cmp;
  auto pick = [](const ordered_json& j, const char* outer, const char* inner) -> double {
    if (!j.contains(outer)) return std::nan("");
    const ordered_json& o = j[outer];
    if (inner == nullptr) return o.is_number() ? o.get<double>() : std::nan("");
    return o.contains(inner) ? o[inner].get<double>() : std::nan("");
  };
  struct RowDef {
    const char* label;
    const char* outer;
    const char* inner;
  };
  const RowDef defs[] = {
      {"final_price", "final_price", nullptr},
      {"mean_tti", "trailing_window", "mean_tti"},
      {"mean_utility", "trailing_window", "mean_utility"},
      {"mean_inconsistency", "trailing_window", "mean_inconsistency"},
      {"imbalance_share", "trailing_window", "imbalance_share"},
      {"social_welfare_per_day", "welfare_vs_base", "social_welfare_per_day"},
  };
  std::cout << "metric,a,b,b_minus_a\n";
  for (const RowDef& d : defs) {
    double va = pick(a, d.outer, d.inner), vb = pick(b, d.outer, d.inner);
    if (std::isnan(va) && std::isnan(vb)) continue;
    cmp[d.label] = {{"a", va}, {"b", vb}, {"diff", vb - va}};
    std::cout << d.label << ',' << va << ',' << vb << ',' << (vb - va) << "\n";
  }
  if (!out.empty()) {
    fs::create_directories(out);
    write_file(fs::path(out) / "comparison.json", cmp.dump(1) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"agent-based simulator of a tradable credit scheme with toll design"};
  app.require_subcommand(1);

  CommonArgs base_args, toll_args, bo_args;
  std::string toll_file;
  std::vector<std::string> toll_abc;
  int bo_iterations = 0, bo_initial = 0;
  std::string cmp_a, cmp_b, cmp_out;

  CLI::App* base = app.add_subcommand("base", "untolled reference run");
  add_common(base, base_args);

  CLI::App* toll = app.add_subcommand("toll", "run one fixed toll profile against the base");
  add_common(toll, toll_args);
  toll->add_option("--toll-file", toll_file, "288-bin csv profile")->check(CLI::ExistingFile);
  toll->add_option("--params,--toll", toll_abc,
                   "gaussian profile as amplitude,mu,sigma (mu accepts HH:MM)")
      ->delimiter(',')
      ->expected(3);

  CLI::App* bo = app.add_subcommand("bo", "optimize the toll profile by Bayesian search");
  add_common(bo, bo_args);
  bo->add_option("--iterations", bo_iterations, "surrogate-guided evaluations")
      ->check(CLI::PositiveNumber);
  bo->add_option("--initial-design", bo_initial, "low-discrepancy seed evaluations")
      ->check(CLI::PositiveNumber);

  CLI::App* cmp = app.add_subcommand("compare", "tabulate two run directories side by side");
  cmp->add_option("--a", cmp_a, "first run directory")->required()->check(CLI::ExistingDirectory);
  cmp->add_option("--b", cmp_b, "second run directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmp->add_option("--out", cmp_out, "directory for comparison.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (base->parsed()) return cmd_base(base_args);
    if (toll->parsed()) return cmd_toll(toll_args, toll_file, toll_abc);
    if (bo->parsed()) return cmd_bo(bo_args, bo_iterations, bo_initial);
    if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
