#pragma once

namespace fleetsim {

// Physical and electrical parameters shared by every UAV in a fleet.
struct UavParams {
  double frame_mass_kg = 10.0;
  double battery_mass_kg = 10.0;
  int rotor_count = 8;
  double blade_disc_area_m2 = 0.27;
  double speed_mps = 10.0;
  double theoretical_capacity_wh = 800.0;
  double charger_power_w = 100.0;
  double charger_efficiency = 0.95;
  double gravity_mps2 = 9.81;
  double air_density_kgpm3 = 1.225;

  // Exponential charging constant k in 1/s: dSoC/dt = (100 - SoC) * k.
  double charge_constant() const;

  // Throws std::invalid_argument on non-physical values.
  void validate() const;
};

// SoC values within this distance of 100 are snapped to exactly 100, so a
// charge target of "full" is reachable in finite time.
inline constexpr double kFullSocSnapEps = 0.01;

// Steady hover-flight consumption in Wh/s for a given payload.
double consumption_per_second(double payload_mass_kg, const UavParams& p);

// SoC drain rate in %/s while flying with a payload; scales with 1/soh.
double discharge_rate(double payload_mass_kg, const UavParams& p, double soh);

// Closed-form SoC after charging for dt seconds from soc0.
double charge_soc(double soc0, double dt_s, const UavParams& p);

// Seconds of charging needed to go from soc0 to soc_target (>= soc0).
// A target of 100 is interpreted as 100 - kFullSocSnapEps.
double time_to_reach_soc(double soc0, double soc_target, const UavParams& p);

// SoC after flying dt seconds at the given drain rate, clamped at 0.
double discharge_soc(double soc0, double dt_s, double rate_pct_per_s);

}  // namespace fleetsim
