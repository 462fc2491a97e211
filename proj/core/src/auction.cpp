#include "fleetsim/auction.hpp"

namespace fleetsim {

std::string_view to_string(WinnerRule rule) {
  switch (rule) {
    case WinnerRule::least_confident: return "least_confident";
    case WinnerRule::most_confident: return "most_confident";
    case WinnerRule::random: return "random";
  }
  return "unknown";
}

std::optional<WinnerRule> winner_rule_from_string(std::string_view name) {
  if (name == "least_confident") return WinnerRule::least_confident;
  if (name == "most_confident") return WinnerRule::most_confident;
  if (name == "random") return WinnerRule::random;
  return std::nullopt;
}

namespace {

// Scan for the extreme value; exact comparisons plus the fixed id tie-break
// make the choice independent of input order.
std::optional<std::size_t> pick(std::span<const Bid> bids, BidKind kind,
                                bool want_min) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i].kind != kind) continue;
    if (!best) {
      best = i;
      continue;
    }
    const Bid& cur = bids[i];
    const Bid& top = bids[*best];
    bool better = want_min ? cur.value < top.value : cur.value > top.value;
    if (better || (cur.value == top.value && cur.uav_id > top.uav_id))
      best = i;
  }
  return best;
}

}  // namespace

std::optional<std::size_t> evaluate_bids(std::span<const Bid> bids,
                                         WinnerRule rule,
                                         bool forecasting_enabled) {
  bool want_min = rule == WinnerRule::least_confident;
  if (auto winner = pick(bids, BidKind::immediate, want_min)) return winner;
  if (!forecasting_enabled) return std::nullopt;
  // Reservations compete on forecast charging time; soonest ready wins.
  return pick(bids, BidKind::reservation, /*want_min=*/true);
}

std::optional<Bid> learning_bid(const BidModel& m, const Standardizer& s,
                                const TaskAnnouncement& task, int uav_id,
                                double soc_pct) {
  Vec3 x = standardize({task.distance_m, task.mass_kg, soc_pct}, s);
  auto conf = confidence(m, x);
  if (!conf || *conf < 0.0) return std::nullopt;
  return Bid{task.task_id, uav_id, BidKind::immediate, *conf};
}

std::optional<Bid> threshold_bid(const TaskAnnouncement& task, int uav_id,
                                 double soc_pct, double level_pct) {
  if (soc_pct < level_pct) return std::nullopt;
  return Bid{task.task_id, uav_id, BidKind::immediate, soc_pct};
}

std::optional<double> reservation_target_soc(const BidModel& m,
                                             const Standardizer& s,
                                             const TaskAnnouncement& task) {
  if (m.w[2] <= 0.0) return std::nullopt;  // more charge never helps
  Vec3 x = standardize({task.distance_m, task.mass_kg, 0.0}, s);
  // Solve w . x_std + b = 0 for the SoC coordinate.
  double partial = m.w[0] * x[0] + m.w[1] * x[1] + m.b;
  double soc_std = -partial / m.w[2];
  double soc = s.mean[2] + soc_std * s.stddev[2];
  if (soc > 100.0) return std::nullopt;  // unreachable even when full
  return soc;
}

std::optional<ReservationBid> reservation_bid(const BidModel& m,
                                              const Standardizer& s,
                                              const TaskAnnouncement& task,
                                              int uav_id, double soc_pct,
                                              const UavParams& p) {
  auto target = reservation_target_soc(m, s, task);
  if (!target || *target <= soc_pct) return std::nullopt;
  double forecast_s = time_to_reach_soc(soc_pct, *target, p);
  return ReservationBid{
      Bid{task.task_id, uav_id, BidKind::reservation, forecast_s}, *target};
}

}  // namespace fleetsim
