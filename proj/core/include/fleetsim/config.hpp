#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fleetsim/agent.hpp"
#include "fleetsim/energy.hpp"
#include "fleetsim/learning.hpp"
#include "fleetsim/orders.hpp"

namespace fleetsim {

inline constexpr double kSecondsPerWeek = 7.0 * 86400.0;

// Everything one simulation run depends on. Identical configs (including
// the seed) produce byte-identical outputs.
struct RunConfig {
  int fleet_size = 25;
  double horizon_s = 8.0 * kSecondsPerWeek;
  double mean_interarrival_s = 15.0 * 60.0;
  double xi = 0.5;  // abort when SoC falls to xi * takeoff SoC
  double soh_min = 0.5;
  double soh_max = 1.0;
  double alpha = 0.01;
  // Initial step size of the inverse-time decay eta_t = eta0/(1+eta0*alpha*t).
  // A hot start lets winners escape the half-success equilibrium that a cold
  // schedule settles into at the decision boundary; see README for the sweep
  // behind this default.
  double eta0 = 2.0;
  StrategyConfig strategy;
  OrderBounds order_bounds;
  UavParams uav;
  std::uint64_t seed = 1;
  // Distinguishes order workloads drawn for the same seed (e.g. a
  // pretraining phase); SoH and per-UAV streams are unaffected by it.
  std::string order_stream_tag;
  // When non-empty, must hold fleet_size models used instead of fresh
  // initialisation (pretrained fleets).
  std::vector<BidModel> initial_models;

  void validate() const;  // throws std::invalid_argument
};

// Canonical key=value rendering of a config, one line per field, sorted.
// Used for the run directory name hash and echoed into summary.txt.
std::string canonical_text(const RunConfig& cfg);

std::uint64_t config_hash(const RunConfig& cfg);

}  // namespace fleetsim
