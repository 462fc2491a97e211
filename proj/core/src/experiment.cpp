#include "fleetsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fleetsim/evaluation.hpp"
#include "fleetsim/io.hpp"
#include "fleetsim/rng.hpp"

namespace fleetsim {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (out.empty()) out.push_back("");
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail("'" + key + "' expects a number, got '" + value + "'");
  }
}

long to_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail("'" + key + "' expects an integer, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  fail("'" + key + "' expects on/off, got '" + value + "'");
}

StrategyKind to_strategy(const std::string& key, const std::string& value) {
  if (value == "learning") return StrategyKind::learning;
  if (value == "threshold") return StrategyKind::threshold;
  fail("'" + key + "' expects learning or threshold, got '" + value + "'");
}

WinnerRule to_rule(const std::string& key, const std::string& value) {
  if (value == "least_confident") return WinnerRule::least_confident;
  if (value == "most_confident") return WinnerRule::most_confident;
  if (value == "random") return WinnerRule::random;
  fail("'" + key + "' expects least_confident/most_confident/random, got '" +
       value + "'");
}

// Directory-friendly rendering of a level or interarrival value: whole
// numbers lose the decimal point, others swap it for 'p'.
std::string num_token(double v) {
  std::string s = format_double(v);
  if (auto dot = s.find('.'); dot != std::string::npos) s[dot] = 'p';
  return s;
}

double run_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n == 0) return std::nan("");
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double run_mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string hash_token(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

void apply_setting(ExperimentSpec& spec, const std::string& key,
                   const std::string& value) {
  if (key == "tau_minutes") {
    spec.tau_minutes.clear();
    for (const std::string& s : split_list(value)) {
      double tau = to_double(key, s);
      if (!(tau > 0.0)) fail("'tau_minutes' must be positive, got " + s);
      spec.tau_minutes.push_back(tau);
    }
  } else if (key == "strategies") {
    spec.strategies.clear();
    for (const std::string& s : split_list(value))
      spec.strategies.push_back(to_strategy(key, s));
  } else if (key == "winner_rules") {
    spec.rules.clear();
    for (const std::string& s : split_list(value))
      spec.rules.push_back(to_rule(key, s));
  } else if (key == "threshold_levels") {
    spec.threshold_levels.clear();
    for (const std::string& s : split_list(value)) {
      double lvl = to_double(key, s);
      if (!(lvl > 0.0 && lvl <= 100.0))
        fail("'threshold_levels' must lie in (0, 100], got " + s);
      spec.threshold_levels.push_back(lvl);
    }
  } else if (key == "xi") {
    spec.xi_values.clear();
    for (const std::string& s : split_list(value)) {
      double xi = to_double(key, s);
      if (!(xi > 0.0 && xi < 1.0)) fail("'xi' must lie in (0, 1), got " + s);
      spec.xi_values.push_back(xi);
    }
  } else if (key == "fleet_sizes") {
    spec.fleet_sizes.clear();
    for (const std::string& s : split_list(value)) {
      long n = to_long(key, s);
      if (n < 1) fail("'fleet_sizes' must be at least 1, got " + s);
      spec.fleet_sizes.push_back(static_cast<int>(n));
    }
  } else if (key == "forecasting") {
    spec.forecasting_modes.clear();
    for (const std::string& s : split_list(value))
      spec.forecasting_modes.push_back(to_bool(key, s));
  } else if (key == "seeds_per_cell") {
    long n = to_long(key, value);
    if (n < 1) fail("'seeds_per_cell' must be at least 1, got " + value);
    spec.seeds_per_cell = static_cast<int>(n);
  } else if (key == "master_seed") {
    spec.master_seed = static_cast<std::uint64_t>(to_long(key, value));
  } else if (key == "pretrain_weeks") {
    double w = to_double(key, value);
    if (w < 0.0) fail("'pretrain_weeks' must be non-negative, got " + value);
    spec.pretrain_weeks = w;
  } else if (key == "emit_soh_grid") {
    spec.emit_soh_grid = to_bool(key, value);
  } else if (key == "jobs") {
    long n = to_long(key, value);
    if (n < 0) fail("'jobs' must be non-negative, got " + value);
    spec.jobs = static_cast<int>(n);
  } else if (key == "out_dir") {
    if (value.empty()) fail("'out_dir' must not be empty");
    spec.out_dir = value;
  } else if (key == "weeks") {
    double w = to_double(key, value);
    if (!(w > 0.0)) fail("'weeks' must be positive, got " + value);
    spec.base.horizon_s = w * kSecondsPerWeek;
  } else if (key == "alpha") {
    double a = to_double(key, value);
    if (!(a > 0.0)) fail("'alpha' must be positive, got " + value);
    spec.base.alpha = a;
  } else if (key == "eta0") {
    double e = to_double(key, value);
    if (!(e > 0.0)) fail("'eta0' must be positive, got " + value);
    spec.base.eta0 = e;
  } else if (key == "soh_min") {
    spec.base.soh_min = to_double(key, value);
  } else if (key == "soh_max") {
    spec.base.soh_max = to_double(key, value);
  } else if (key == "orders.distance_min_m") {
    spec.base.order_bounds.distance_min_m = to_double(key, value);
  } else if (key == "orders.distance_max_m") {
    spec.base.order_bounds.distance_max_m = to_double(key, value);
  } else if (key == "orders.mass_min_kg") {
    spec.base.order_bounds.mass_min_kg = to_double(key, value);
  } else if (key == "orders.mass_max_kg") {
    spec.base.order_bounds.mass_max_kg = to_double(key, value);
  } else if (key == "uav.frame_mass_kg") {
    spec.base.uav.frame_mass_kg = to_double(key, value);
  } else if (key == "uav.battery_mass_kg") {
    spec.base.uav.battery_mass_kg = to_double(key, value);
  } else if (key == "uav.rotor_count") {
    spec.base.uav.rotor_count = static_cast<int>(to_long(key, value));
  } else if (key == "uav.blade_disc_area_m2") {
    spec.base.uav.blade_disc_area_m2 = to_double(key, value);
  } else if (key == "uav.speed_mps") {
    spec.base.uav.speed_mps = to_double(key, value);
  } else if (key == "uav.theoretical_capacity_wh") {
    spec.base.uav.theoretical_capacity_wh = to_double(key, value);
  } else if (key == "uav.charger_power_w") {
    spec.base.uav.charger_power_w = to_double(key, value);
  } else if (key == "uav.charger_efficiency") {
    spec.base.uav.charger_efficiency = to_double(key, value);
  } else {
    fail("unknown key '" + key + "'");
  }
}

ExperimentSpec parse_config(
    const std::filesystem::path& file,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  ExperimentSpec spec;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) fail("cannot open '" + file.string() + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string text = trim(line);
      if (text.empty() || text[0] == '#') continue;
      std::size_t eq = text.find('=');
      if (eq == std::string::npos)
        fail("line " + std::to_string(line_no) + " is not key=value: '" +
             text + "'");
      apply_setting(spec, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
  }
  for (const auto& [key, value] : overrides) apply_setting(spec, key, value);
  return spec;
}

std::vector<CellConfig> enumerate_cells(const ExperimentSpec& spec) {
  std::vector<double> xis =
      spec.xi_values.empty() ? std::vector<double>{spec.base.xi}
                             : spec.xi_values;
  std::vector<int> fleets = spec.fleet_sizes.empty()
                                ? std::vector<int>{spec.base.fleet_size}
                                : spec.fleet_sizes;
  std::vector<CellConfig> cells;
  auto push = [&](StrategyKind kind, const std::string& variant_token,
                  WinnerRule rule, double threshold_level, double tau,
                  double xi, int fleet, bool forecasting) {
    CellConfig cell;
    cell.cell_index = static_cast<int>(cells.size());
    cell.config = spec.base;
    cell.config.strategy.kind = kind;
    cell.config.strategy.rule = rule;
    cell.config.strategy.threshold_level_pct = threshold_level;
    cell.config.strategy.forecasting = forecasting;
    cell.config.mean_interarrival_s = tau * 60.0;
    cell.config.xi = xi;
    cell.config.fleet_size = fleet;
    cell.config.validate();

    std::string name =
        (kind == StrategyKind::learning ? "learning_" : "threshold_") +
        variant_token + "_tau" + num_token(tau);
    if (xis.size() > 1)
      name += "_xi" + num_token(std::round(xi * 1e4) / 100.0);
    if (fleets.size() > 1) name += "_s" + std::to_string(fleet);
    if (spec.forecasting_modes.size() > 1)
      name += forecasting ? "_fc_on" : "_fc_off";
    cell.name = name;
    cells.push_back(std::move(cell));
  };

  for (StrategyKind kind : spec.strategies) {
    if (kind == StrategyKind::learning) {
      for (WinnerRule rule : spec.rules)
        for (double tau : spec.tau_minutes)
          for (double xi : xis)
            for (int fleet : fleets)
              for (bool fc : spec.forecasting_modes)
                push(kind, std::string(to_string(rule)), rule, 80.0, tau, xi,
                     fleet, fc);
    } else {
      for (double level : spec.threshold_levels)
        for (double tau : spec.tau_minutes)
          for (double xi : xis)
            for (int fleet : fleets)
              for (bool fc : spec.forecasting_modes)
                push(kind, "thr" + num_token(level),
                     WinnerRule::least_confident, level, tau, xi, fleet, fc);
    }
  }
  return cells;
}

std::uint64_t derive_cell_seed(std::uint64_t master_seed, int cell_index,
                               int seed_index) {
  std::uint64_t h = hash_combine(master_seed, 0x63656c6cULL);  // "cell"
  h = hash_combine(h, static_cast<std::uint64_t>(cell_index));
  h = hash_combine(h, static_cast<std::uint64_t>(seed_index));
  return h;
}

std::filesystem::path run_dir(const ExperimentSpec& spec,
                              const CellConfig& cell, int seed_index) {
  RunConfig cfg = cell.config;
  cfg.seed = derive_cell_seed(spec.master_seed, cell.cell_index, seed_index);
  return spec.out_dir / cell.name /
         (hash_token(config_hash(cfg)) + "_s" + std::to_string(seed_index));
}

namespace {

// One replicate: optional warm-up on a separate order stream whose final
// weights seed the measured run, then the measured run itself.
void run_one(const ExperimentSpec& spec, const CellConfig& cell,
             int seed_index) {
  RunConfig cfg = cell.config;
  cfg.seed = derive_cell_seed(spec.master_seed, cell.cell_index, seed_index);

  if (spec.pretrain_weeks > 0.0 &&
      cfg.strategy.kind == StrategyKind::learning) {
    RunConfig warm = cfg;
    warm.horizon_s = spec.pretrain_weeks * kSecondsPerWeek;
    warm.order_stream_tag = "pretrain";
    // Warm-up is plain operation: reservations only change how a trained
    // fleet is scheduled, so both forecasting arms share the same weights.
    warm.strategy.forecasting = false;
    warm.initial_models.clear();
    RunResult warm_result = run(warm);
    cfg.initial_models.clear();
    cfg.initial_models.reserve(warm_result.uavs.size());
    for (const UavRecord& u : warm_result.uavs) {
      if (!u.final_model) throw std::runtime_error("warm-up lost a UAV");
      cfg.initial_models.push_back(*u.final_model);
    }
  }

  RunResult result = run(cfg);
  MetricsSummary metrics = summarize(result);
  std::filesystem::path dir = run_dir(spec, cell, seed_index);
  write_run_result(dir, result, metrics);

  if (spec.emit_soh_grid && cfg.strategy.kind == StrategyKind::learning) {
    std::vector<FleetMember> fleet;
    fleet.reserve(result.uavs.size());
    for (const UavRecord& u : result.uavs) {
      if (!u.final_model) continue;
      FleetMember m;
      m.uav_id = u.uav_id;
      m.soh = u.soh;
      m.model = *u.final_model;
      fleet.push_back(std::move(m));
    }
    write_soh_grid(dir / "soh_grid.csv",
                   winner_soh_grid(fleet, cfg.strategy.rule,
                                   cfg.strategy.standardizer,
                                   GridSpec::fleet_probe_default()));
  }
}

struct RunStatus {
  const CellConfig* cell = nullptr;
  int seed_index = 0;
  bool ok = false;
  std::string message;
};

std::map<std::string, std::string> summary_map(
    const std::filesystem::path& file) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : read_summary(file)) out[k] = v;
  return out;
}

}  // namespace

int run_experiment(const ExperimentSpec& spec, std::ostream& log) {
  std::vector<CellConfig> cells = enumerate_cells(spec);
  std::vector<RunStatus> statuses;
  for (const CellConfig& cell : cells)
    for (int s = 0; s < spec.seeds_per_cell; ++s)
      statuses.push_back({&cell, s, false, ""});

  std::filesystem::create_directories(spec.out_dir);
  unsigned jobs = spec.jobs > 0
                      ? static_cast<unsigned>(spec.jobs)
                      : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, statuses.size() ? statuses.size() : 1u);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= statuses.size()) return;
      RunStatus& st = statuses[i];
      try {
        run_one(spec, *st.cell, st.seed_index);
        st.ok = true;
      } catch (const std::exception& e) {
        st.message = e.what();
      }
      std::size_t finished = done.fetch_add(1) + 1;
      std::lock_guard<std::mutex> lock(log_mutex);
      log << "[" << finished << "/" << statuses.size() << "] "
          << st.cell->name << " seed " << st.seed_index
          << (st.ok ? "" : " FAILED: " + st.message) << "\n";
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::ofstream manifest(spec.out_dir / "manifest.csv", std::ios::binary);
  manifest << "cell,seed_index,seed,dir,status,message\n";
  int failures = 0;
  for (const RunStatus& st : statuses) {
    std::uint64_t seed = derive_cell_seed(spec.master_seed,
                                          st.cell->cell_index, st.seed_index);
    manifest << st.cell->name << "," << st.seed_index << "," << seed << ","
             << run_dir(spec, *st.cell, st.seed_index).lexically_relative(
                    spec.out_dir).generic_string()
             << "," << (st.ok ? "ok" : "failed") << "," << st.message << "\n";
    if (!st.ok) ++failures;
  }
  manifest.close();

  write_aggregates(spec, log);
  return failures;
}

void write_aggregates(const ExperimentSpec& spec, std::ostream& log) {
  std::vector<CellConfig> cells = enumerate_cells(spec);
  std::filesystem::create_directories(spec.out_dir);

  std::ofstream throughput(spec.out_dir / "throughput.csv", std::ios::binary);
  throughput << "cell,strategy,rule,threshold_level,tau_minutes,xi,"
                "fleet_size,forecasting,seeds,delivered_mean,"
                "delivered_median,delivery_time_p50_min_mean,"
                "delivery_time_p50_min_median,aborted_pct_mean,"
                "attempts_mean,lost_uavs_mean\n";
  std::ofstream backlog(spec.out_dir / "backlog.csv", std::ios::binary);
  backlog << "cell,arrival_week,backlog_age_s_mean\n";
  std::ofstream accuracy(spec.out_dir / "accuracy.csv", std::ios::binary);
  accuracy << "cell,week,mean_accuracy,sample_count\n";
  std::optional<std::ofstream> grid_out;
  if (spec.emit_soh_grid) {
    grid_out.emplace(spec.out_dir / "soh_grid.csv", std::ios::binary);
    *grid_out << "cell,soc_pct,distance_m,mass_kg,mean_winner_soh,"
                 "runs_with_bids\n";
  }

  for (const CellConfig& cell : cells) {
    std::vector<double> delivered, p50_min, aborted, attempts, lost;
    std::map<int, std::vector<double>> backlog_by_week;
    std::map<int, std::vector<double>> accuracy_by_week;
    struct GridAgg {
      GridCell key;
      double soh_sum = 0.0;
      int bid_runs = 0;
    };
    std::vector<GridAgg> grid_agg;
    int found = 0;

    for (int s = 0; s < spec.seeds_per_cell; ++s) {
      std::filesystem::path dir = run_dir(spec, cell, s);
      if (!std::filesystem::exists(dir / "summary.txt")) continue;
      ++found;
      auto kv = summary_map(dir / "summary.txt");
      delivered.push_back(parse_double(kv.at("delivered")));
      p50_min.push_back(parse_double(kv.at("delivery_time_p50_s")) / 60.0);
      aborted.push_back(parse_double(kv.at("aborted_pct")));
      attempts.push_back(parse_double(kv.at("attempts_total")));
      lost.push_back(parse_double(kv.at("lost_uavs")));
      for (int week = 1;; ++week) {
        auto it = kv.find("backlog_age_week" + std::to_string(week) + "_s");
        if (it == kv.end()) break;
        backlog_by_week[week].push_back(parse_double(it->second));
      }
      for (const AccuracyRow& row : read_accuracy_csv(dir / "accuracy.csv"))
        if (!std::isnan(row.accuracy))
          accuracy_by_week[row.week].push_back(row.accuracy);

      if (spec.emit_soh_grid &&
          std::filesystem::exists(dir / "soh_grid.csv")) {
        std::ifstream in(dir / "soh_grid.csv");
        std::string line;
        std::getline(in, line);  // header
        std::size_t idx = 0;
        while (std::getline(in, line)) {
          auto f = split_csv_line(line);
          if (f.size() != 5) continue;
          if (idx >= grid_agg.size()) {
            GridAgg g;
            g.key.soc_pct = parse_double(f[0]);
            g.key.distance_m = parse_double(f[1]);
            g.key.mass_kg = parse_double(f[2]);
            grid_agg.push_back(g);
          }
          if (!f[4].empty()) {
            grid_agg[idx].soh_sum += parse_double(f[4]);
            ++grid_agg[idx].bid_runs;
          }
          ++idx;
        }
      }
    }

    if (found == 0) {
      log << "aggregate: no completed runs for " << cell.name << "\n";
      continue;
    }

    const StrategyConfig& st = cell.config.strategy;
    throughput << cell.name << ","
               << (st.kind == StrategyKind::learning ? "learning"
                                                     : "threshold")
               << ","
               << (st.kind == StrategyKind::learning ? to_string(st.rule)
                                                     : std::string_view(""))
               << ","
               << (st.kind == StrategyKind::threshold
                       ? format_double(st.threshold_level_pct)
                       : std::string(""))
               << "," << format_double(cell.config.mean_interarrival_s / 60.0)
               << "," << format_double(cell.config.xi) << ","
               << cell.config.fleet_size << ","
               << (st.forecasting ? "on" : "off") << "," << found << ","
               << format_double(run_mean(delivered)) << ","
               << format_double(run_median(delivered)) << ","
               << format_double(run_mean(p50_min)) << ","
               << format_double(run_median(p50_min)) << ","
               << format_double(run_mean(aborted)) << ","
               << format_double(run_mean(attempts)) << ","
               << format_double(run_mean(lost)) << "\n";

    for (const auto& [week, ages] : backlog_by_week)
      backlog << cell.name << "," << week << ","
              << format_double(run_mean(ages)) << "\n";
    for (const auto& [week, values] : accuracy_by_week)
      accuracy << cell.name << "," << week << ","
               << format_double(run_mean(values)) << "," << values.size()
               << "\n";
    if (grid_out)
      for (const GridAgg& g : grid_agg)
        *grid_out << cell.name << "," << format_double(g.key.soc_pct) << ","
                  << format_double(g.key.distance_m) << ","
                  << format_double(g.key.mass_kg) << ","
                  << (g.bid_runs > 0
                          ? format_double(g.soh_sum / g.bid_runs)
                          : std::string(""))
                  << "," << g.bid_runs << "\n";
  }
}

}  // namespace fleetsim
