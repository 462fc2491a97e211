#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fleetsim/engine.hpp"

namespace fleetsim {

struct OracleVerdict {
  bool capable = false;
  double outbound_drop = 0.0;   // SoC spent reaching the destination
  double roundtrip_drop = 0.0;  // SoC spent on the full out-and-back flight
};

// Ground truth for "can this UAV deliver this task from this SoC without
// aborting or being lost": the outbound leg must not trip the abort margin
// and the roundtrip must not exhaust the battery.
OracleVerdict capability_oracle(double distance_m, double mass_kg,
                                double soc_pct, double soh, double xi,
                                const UavParams& p);

using BidPolicy = std::function<bool(const FeatureVector&)>;

// Fraction of n random probe tasks (distance, mass ~ task bounds,
// SoC ~ U(0,100)) on which the policy agrees with the capability oracle.
double decision_accuracy(const BidPolicy& policy, double soh, double xi,
                         const UavParams& p, const OrderBounds& bounds,
                         Substream& probe_rng, int n = 1000);

double decision_accuracy(const BidModel& m, const Standardizer& s, double soh,
                         double xi, const UavParams& p,
                         const OrderBounds& bounds, Substream& probe_rng,
                         int n = 1000);

struct FleetMember {
  int uav_id = -1;
  double soh = 1.0;
  BidModel model;
};

struct GridSpec {
  std::vector<double> soc_values;
  std::vector<double> distances_m;
  std::vector<double> masses_kg;
  static GridSpec fleet_probe_default();  // SoC {20..100 by 20} x d {1500..5500 by 1000} x m {1..5 by 1}
};

struct GridCell {
  double soc_pct = 0.0;
  double distance_m = 0.0;
  double mass_kg = 0.0;
  int bidder_count = 0;
  std::optional<double> winner_soh;  // empty when nobody bids
};

// Probes a frozen fleet on every grid combination: all members consider the
// task at the given SoC, the winner rule picks among the resulting bids.
std::vector<GridCell> winner_soh_grid(const std::vector<FleetMember>& fleet,
                                      WinnerRule rule, const Standardizer& s,
                                      const GridSpec& grid);

struct MetricsSummary {
  long orders_generated = 0;
  long delivered = 0;
  // Quantiles of delivery time (delivered - arrival) in seconds; NaN when
  // nothing was delivered.
  double delivery_time_p25_s = 0.0;
  double delivery_time_p50_s = 0.0;
  double delivery_time_p75_s = 0.0;
  long attempts_total = 0;
  long attempts_success = 0;
  long attempts_aborted = 0;
  long attempts_lost = 0;
  double aborted_pct = 0.0;  // share of attempts that ended in an abort
  int lost_uavs = 0;
  // Cumulative backlog age at the horizon, bucketed by arrival week
  // (index 0 = week 1): sum of (horizon - arrival) over undelivered orders.
  std::vector<double> backlog_age_by_week_s;
  // weekly_accuracy[week-1][uav_id]: decision accuracy of each UAV's model
  // snapshot against the oracle on that week's probe set.
  std::vector<std::vector<double>> weekly_accuracy;
};

// Derives all reported metrics from a finished run. Probe sets are drawn
// from substream "probe/week/<k>" of the run's seed, so the accuracy series
// is deterministic given the config.
MetricsSummary summarize(const RunResult& result);

}  // namespace fleetsim
