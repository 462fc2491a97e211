#include "fleetsim/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fleetsim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double UavParams::charge_constant() const {
  return charger_efficiency * charger_power_w /
         (3600.0 * theoretical_capacity_wh);
}

void UavParams::validate() const {
  require(frame_mass_kg > 0.0, "frame_mass_kg must be positive");
  require(battery_mass_kg > 0.0, "battery_mass_kg must be positive");
  require(rotor_count > 0, "rotor_count must be positive");
  require(blade_disc_area_m2 > 0.0, "blade_disc_area_m2 must be positive");
  require(speed_mps > 0.0, "speed_mps must be positive");
  require(theoretical_capacity_wh > 0.0,
          "theoretical_capacity_wh must be positive");
  require(charger_power_w > 0.0, "charger_power_w must be positive");
  require(charger_efficiency > 0.0 && charger_efficiency <= 1.0,
          "charger_efficiency must be in (0, 1]");
  require(gravity_mps2 > 0.0, "gravity_mps2 must be positive");
  require(air_density_kgpm3 > 0.0, "air_density_kgpm3 must be positive");
}

double consumption_per_second(double payload_mass_kg, const UavParams& p) {
  double thrust_mass = p.frame_mass_kg + p.battery_mass_kg + payload_mass_kg;
  double numerator = std::pow(p.gravity_mps2 * thrust_mass, 1.5);
  double denominator =
      3600.0 * std::sqrt(2.0 * p.rotor_count * p.air_density_kgpm3 *
                         p.blade_disc_area_m2);
  return numerator / denominator;
}

double discharge_rate(double payload_mass_kg, const UavParams& p, double soh) {
  return 100.0 * consumption_per_second(payload_mass_kg, p) /
         (p.theoretical_capacity_wh * soh);
}

double charge_soc(double soc0, double dt_s, const UavParams& p) {
  double soc = 100.0 - (100.0 - soc0) * std::exp(-p.charge_constant() * dt_s);
  return soc >= 100.0 - kFullSocSnapEps ? 100.0 : soc;
}

double time_to_reach_soc(double soc0, double soc_target, const UavParams& p) {
  if (soc_target <= soc0) return 0.0;
  double target = std::min(soc_target, 100.0 - kFullSocSnapEps);
  if (target <= soc0) return 0.0;
  return std::log((100.0 - soc0) / (100.0 - target)) / p.charge_constant();
}

double discharge_soc(double soc0, double dt_s, double rate_pct_per_s) {
  double soc = soc0 - rate_pct_per_s * dt_s;
  return soc > 0.0 ? soc : 0.0;
}

}  // namespace fleetsim
