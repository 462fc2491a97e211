#include "fleetsim/config.hpp"

#include <sstream>
#include <stdexcept>

#include "fleetsim/io.hpp"
#include "fleetsim/rng.hpp"

namespace fleetsim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void RunConfig::validate() const {
  require(fleet_size >= 1, "fleet_size must be at least 1");
  require(horizon_s > 0.0, "horizon_s must be positive");
  require(mean_interarrival_s > 0.0, "mean_interarrival_s must be positive");
  require(xi >= 0.0 && xi < 1.0, "xi must be in [0, 1)");
  require(soh_min > 0.0 && soh_min <= soh_max && soh_max <= 1.0,
          "soh bounds must satisfy 0 < min <= max <= 1");
  require(alpha >= 0.0, "alpha must be non-negative");
  require(eta0 > 0.0, "eta0 must be positive");
  require(strategy.threshold_level_pct >= 0.0 &&
              strategy.threshold_level_pct <= 100.0,
          "threshold level must be in [0, 100]");
  require(!strategy.forecasting || strategy.kind == StrategyKind::learning,
          "forecasting requires the learning strategy");
  require(order_bounds.distance_min_m > 0.0 &&
              order_bounds.distance_min_m <= order_bounds.distance_max_m,
          "order distance bounds out of order");
  require(order_bounds.mass_min_kg > 0.0 &&
              order_bounds.mass_min_kg <= order_bounds.mass_max_kg,
          "order mass bounds out of order");
  for (double s : strategy.standardizer.stddev)
    require(s > 0.0, "standardizer stddev must be positive");
  require(initial_models.empty() ||
              initial_models.size() == static_cast<std::size_t>(fleet_size),
          "initial_models must be empty or one per UAV");
  require(initial_models.empty() || strategy.kind == StrategyKind::learning,
          "initial_models only apply to the learning strategy");
  uav.validate();
}

std::string canonical_text(const RunConfig& cfg) {
  std::ostringstream out;
  auto put = [&](const char* key, const std::string& value) {
    out << key << "=" << value << "\n";
  };
  auto putd = [&](const char* key, double v) { put(key, format_double(v)); };

  putd("alpha", cfg.alpha);
  putd("eta0", cfg.eta0);
  put("fleet_size", std::to_string(cfg.fleet_size));
  putd("horizon_s", cfg.horizon_s);
  if (cfg.initial_models.empty()) {
    put("initial_models", "none");
  } else {
    std::ostringstream models;
    for (const BidModel& m : cfg.initial_models) {
      models << format_double(m.w[0]) << "," << format_double(m.w[1]) << ","
             << format_double(m.w[2]) << "," << format_double(m.b) << ","
             << m.step_count << ";";
    }
    put("initial_models",
        std::to_string(cfg.initial_models.size()) + "/" +
            std::to_string(fnv1a(models.str())));
  }
  putd("mean_interarrival_s", cfg.mean_interarrival_s);
  putd("order.distance_max_m", cfg.order_bounds.distance_max_m);
  putd("order.distance_min_m", cfg.order_bounds.distance_min_m);
  putd("order.mass_max_kg", cfg.order_bounds.mass_max_kg);
  putd("order.mass_min_kg", cfg.order_bounds.mass_min_kg);
  put("order_stream_tag", cfg.order_stream_tag);
  put("seed", std::to_string(cfg.seed));
  putd("soh_max", cfg.soh_max);
  putd("soh_min", cfg.soh_min);
  put("strategy.forecasting", cfg.strategy.forecasting ? "true" : "false");
  put("strategy.freeze_models",
      cfg.strategy.freeze_models ? "true" : "false");
  put("strategy.kind", std::string(to_string(cfg.strategy.kind)));
  put("strategy.rule", std::string(to_string(cfg.strategy.rule)));
  putd("strategy.threshold_level_pct", cfg.strategy.threshold_level_pct);
  for (int i = 0; i < 3; ++i) {
    std::string key = "standardizer.mean." + std::to_string(i);
    put(key.c_str(), format_double(cfg.strategy.standardizer.mean[i]));
    key = "standardizer.stddev." + std::to_string(i);
    put(key.c_str(), format_double(cfg.strategy.standardizer.stddev[i]));
  }
  putd("uav.air_density_kgpm3", cfg.uav.air_density_kgpm3);
  putd("uav.battery_mass_kg", cfg.uav.battery_mass_kg);
  putd("uav.blade_disc_area_m2", cfg.uav.blade_disc_area_m2);
  putd("uav.charger_efficiency", cfg.uav.charger_efficiency);
  putd("uav.charger_power_w", cfg.uav.charger_power_w);
  putd("uav.frame_mass_kg", cfg.uav.frame_mass_kg);
  putd("uav.gravity_mps2", cfg.uav.gravity_mps2);
  put("uav.rotor_count", std::to_string(cfg.uav.rotor_count));
  putd("uav.speed_mps", cfg.uav.speed_mps);
  putd("uav.theoretical_capacity_wh", cfg.uav.theoretical_capacity_wh);
  putd("xi", cfg.xi);
  return out.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  return fnv1a(canonical_text(cfg));
}

}  // namespace fleetsim
