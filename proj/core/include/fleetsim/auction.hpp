#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fleetsim/energy.hpp"
#include "fleetsim/learning.hpp"

namespace fleetsim {

struct TaskAnnouncement {
  long task_id = -1;
  double distance_m = 0.0;
  double mass_kg = 0.0;
};

enum class BidKind { immediate, reservation };

struct Bid {
  long task_id = -1;
  int uav_id = -1;
  BidKind kind = BidKind::immediate;
  // Confidence for immediate bids under the learning strategy, the uniform
  // draw under the random winner rule, the SoC level under the threshold
  // strategy, or the forecast charging time in seconds for reservations.
  double value = 0.0;
};

enum class WinnerRule { least_confident, most_confident, random };

std::string_view to_string(WinnerRule rule);
std::optional<WinnerRule> winner_rule_from_string(std::string_view name);

// Picks the winning bid index, or empty when no bid may win. Immediate bids
// always beat reservations; reservations are considered only when
// forecasting is enabled. Ties on value go to the highest uav_id. Pure and
// invariant under permutation of the input.
std::optional<std::size_t> evaluate_bids(std::span<const Bid> bids,
                                         WinnerRule rule,
                                         bool forecasting_enabled);

// Learning-strategy immediate bid: accepts when f(x_std) >= 0, bidding the
// confidence value. Empty when the model declines or has no boundary.
std::optional<Bid> learning_bid(const BidModel& m, const Standardizer& s,
                                const TaskAnnouncement& task, int uav_id,
                                double soc_pct);

// Threshold-strategy immediate bid: accepts iff soc >= level, bids the SoC.
std::optional<Bid> threshold_bid(const TaskAnnouncement& task, int uav_id,
                                 double soc_pct, double level_pct);

// SoC at which the model's decision for this task flips to accept, found by
// solving f = 0 for the SoC feature. Empty when no achievable SoC in
// (0, 100] flips the decision.
std::optional<double> reservation_target_soc(const BidModel& m,
                                             const Standardizer& s,
                                             const TaskAnnouncement& task);

struct ReservationBid {
  Bid bid;                  // value = forecast charging seconds
  double target_soc = 0.0;  // SoC the bidder must reach before takeoff
};

// Reservation bid for a declined task: forecasts the charging time from the
// current SoC to the flip point. Empty when no flip point exists.
std::optional<ReservationBid> reservation_bid(const BidModel& m,
                                              const Standardizer& s,
                                              const TaskAnnouncement& task,
                                              int uav_id, double soc_pct,
                                              const UavParams& p);

}  // namespace fleetsim
