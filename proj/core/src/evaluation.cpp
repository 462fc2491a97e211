#include "fleetsim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fleetsim/rng.hpp"

namespace fleetsim {

OracleVerdict capability_oracle(double distance_m, double mass_kg,
                                double soc_pct, double soh, double xi,
                                const UavParams& p) {
  double leg_s = distance_m / p.speed_mps;
  OracleVerdict v;
  v.outbound_drop = leg_s * discharge_rate(mass_kg, p, soh);
  v.roundtrip_drop = v.outbound_drop + leg_s * discharge_rate(0.0, p, soh);
  v.capable = v.outbound_drop < (1.0 - xi) * soc_pct &&
              v.roundtrip_drop < soc_pct;
  return v;
}

double decision_accuracy(const BidPolicy& policy, double soh, double xi,
                         const UavParams& p, const OrderBounds& bounds,
                         Substream& probe_rng, int n) {
  int agreed = 0;
  for (int i = 0; i < n; ++i) {
    FeatureVector probe;
    probe.distance_m =
        probe_rng.uniform(bounds.distance_min_m, bounds.distance_max_m);
    probe.mass_kg = probe_rng.uniform(bounds.mass_min_kg, bounds.mass_max_kg);
    probe.soc_pct = probe_rng.uniform(0.0, 100.0);
    bool truth =
        capability_oracle(probe.distance_m, probe.mass_kg, probe.soc_pct,
                          soh, xi, p)
            .capable;
    if (policy(probe) == truth) ++agreed;
  }
  return static_cast<double>(agreed) / static_cast<double>(n);
}

double decision_accuracy(const BidModel& m, const Standardizer& s, double soh,
                         double xi, const UavParams& p,
                         const OrderBounds& bounds, Substream& probe_rng,
                         int n) {
  return decision_accuracy(
      [&](const FeatureVector& x) { return accepts(m, standardize(x, s)); },
      soh, xi, p, bounds, probe_rng, n);
}

GridSpec GridSpec::fleet_probe_default() {
  return GridSpec{{20, 40, 60, 80, 100},
                  {1500, 2500, 3500, 4500, 5500},
                  {1, 2, 3, 4, 5}};
}

std::vector<GridCell> winner_soh_grid(const std::vector<FleetMember>& fleet,
                                      WinnerRule rule, const Standardizer& s,
                                      const GridSpec& grid) {
  std::vector<GridCell> cells;
  long cell_index = 0;
  for (double soc : grid.soc_values) {
    for (double d : grid.distances_m) {
      for (double m : grid.masses_kg) {
        GridCell cell;
        cell.soc_pct = soc;
        cell.distance_m = d;
        cell.mass_kg = m;
        TaskAnnouncement task{cell_index, d, m};

        std::vector<Bid> bids;
        std::vector<double> sohs;
        Substream draw(0x9Dull, "grid/" + std::to_string(cell_index));
        for (const FleetMember& member : fleet) {
          auto bid = learning_bid(member.model, s, task, member.uav_id, soc);
          if (!bid) continue;
          // The random rule replays its decentralised draw per bidder.
          if (rule == WinnerRule::random) bid->value = draw.uniform01();
          bids.push_back(*bid);
          sohs.push_back(member.soh);
        }
        cell.bidder_count = static_cast<int>(bids.size());
        if (auto idx = evaluate_bids(bids, rule, false))
          cell.winner_soh = sohs[*idx];
        cells.push_back(cell);
        ++cell_index;
      }
    }
  }
  return cells;
}

namespace {

// Linear interpolation between order statistics (inclusive method).
double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return std::nan("");
  double pos = q * static_cast<double>(v.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace

MetricsSummary summarize(const RunResult& result) {
  const RunConfig& cfg = result.config;
  MetricsSummary m;
  m.orders_generated = static_cast<long>(result.orders.size());

  int week_count =
      static_cast<int>(std::ceil(cfg.horizon_s / kSecondsPerWeek));
  m.backlog_age_by_week_s.assign(
      static_cast<std::size_t>(std::max(week_count, 1)), 0.0);

  std::vector<double> delivery_times;
  for (const Order& o : result.orders) {
    if (o.status == OrderStatus::delivered) {
      ++m.delivered;
      delivery_times.push_back(*o.delivered_time_s - o.arrival_time_s);
    } else {
      int bucket = static_cast<int>(o.arrival_time_s / kSecondsPerWeek);
      bucket = std::min(bucket, week_count - 1);
      m.backlog_age_by_week_s[static_cast<std::size_t>(bucket)] +=
          cfg.horizon_s - o.arrival_time_s;
    }
  }
  std::sort(delivery_times.begin(), delivery_times.end());
  m.delivery_time_p25_s = quantile_sorted(delivery_times, 0.25);
  m.delivery_time_p50_s = quantile_sorted(delivery_times, 0.50);
  m.delivery_time_p75_s = quantile_sorted(delivery_times, 0.75);

  m.attempts_total = static_cast<long>(result.attempts.size());
  for (const AttemptRecord& a : result.attempts) {
    switch (a.outcome) {
      case AttemptOutcome::success: ++m.attempts_success; break;
      case AttemptOutcome::abort: ++m.attempts_aborted; break;
      case AttemptOutcome::lost: ++m.attempts_lost; break;
    }
  }
  m.aborted_pct = m.attempts_total == 0
                      ? 0.0
                      : 100.0 * static_cast<double>(m.attempts_aborted) /
                            static_cast<double>(m.attempts_total);

  for (const UavRecord& u : result.uavs)
    if (u.lost) ++m.lost_uavs;

  // Weekly decision accuracy of every snapshotted model against the oracle,
  // all UAVs probed on the same per-week probe set.
  int max_week = 0;
  for (const ModelSnapshot& s : result.snapshots)
    max_week = std::max(max_week, s.week);
  if (max_week > 0) {
    m.weekly_accuracy.assign(
        static_cast<std::size_t>(max_week),
        std::vector<double>(result.uavs.size(),
                            std::nan("")));
    for (const ModelSnapshot& snap : result.snapshots) {
      BidModel model;
      model.w = snap.w;
      model.b = snap.b;
      Substream probe_rng(cfg.seed,
                          "probe/week/" + std::to_string(snap.week));
      double soh = result.uavs[static_cast<std::size_t>(snap.uav_id)].soh;
      m.weekly_accuracy[static_cast<std::size_t>(snap.week - 1)]
                       [static_cast<std::size_t>(snap.uav_id)] =
          decision_accuracy(model, cfg.strategy.standardizer, soh, cfg.xi,
                            cfg.uav, cfg.order_bounds, probe_rng);
    }
  }
  return m;
}

}  // namespace fleetsim
