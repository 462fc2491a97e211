#pragma once

#include <cstdint>
#include <optional>

#include "fleetsim/auction.hpp"
#include "fleetsim/energy.hpp"
#include "fleetsim/learning.hpp"
#include "fleetsim/rng.hpp"

namespace fleetsim {

enum class UavState {
  waiting,            // at the FC, charging, listening to announcements
  deciding,           // evaluating an announcement (transient within a tick)
  awaiting_outcome,   // bid placed, waiting for the auction result
  delivering,         // outbound leg
  returning,          // return leg (with or without the parcel)
  reserved_charging,  // holds a reservation, charging to the target SoC
  lost,               // battery died in the field; permanently out
};

std::string_view to_string(UavState state);

enum class AttemptOutcome { success, abort, lost };

std::string_view to_string(AttemptOutcome outcome);

// Complete closed-form trajectory of one delivery attempt, fixed at takeoff.
// All times are absolute simulation seconds.
struct FlightPlan {
  long task_id = -1;
  double distance_m = 0.0;
  double mass_kg = 0.0;
  double depart_time_s = 0.0;
  double soc_takeoff = 0.0;
  double outbound_rate = 0.0;  // %/s with parcel
  double return_rate = 0.0;    // %/s empty
  bool aborts = false;
  double turn_time_s = 0.0;      // destination arrival or abort instant
  double turn_distance_m = 0.0;  // distance from the FC at the turn
  double soc_at_turn = 0.0;
  std::optional<double> dest_arrival_time_s;  // set iff the parcel arrives
  std::optional<double> abort_trigger_time_s; // set iff the flight aborts
  double fc_return_time_s = 0.0;
  double soc_at_return = 0.0;  // unclamped; negative means the UAV is lost
  bool lost = false;
  double lost_time_s = 0.0;  // instant SoC hits 0, meaningful iff lost
};

// Plans a radial out-and-back flight. The UAV flies toward the destination
// and turns back early if SoC falls to xi * soc_takeoff before arrival
// (abort margin xi in [0, 1)). Loss can only happen on the return leg.
FlightPlan plan_flight(const TaskAnnouncement& task, double depart_time_s,
                       double soc_takeoff, double xi, double soh,
                       const UavParams& p);

enum class StrategyKind { learning, threshold };

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> strategy_from_string(std::string_view name);

struct StrategyConfig {
  StrategyKind kind = StrategyKind::learning;
  WinnerRule rule = WinnerRule::least_confident;
  double threshold_level_pct = 80.0;  // threshold strategy only
  bool forecasting = false;           // reservation bids allowed
  bool freeze_models = false;         // skip SGD updates (pretrained fleets)
  Standardizer standardizer;
};

// One UAV: battery bookkeeping via closed-form checkpoints plus the bidding
// policy state. The engine drives the state machine; the agent owns SoC,
// model, and its private randomness for the random winner rule.
class UavAgent {
 public:
  UavAgent(int uav_id, double soh, const UavParams& params,
           std::optional<BidModel> model, std::uint64_t master_seed);

  int uav_id() const { return uav_id_; }
  double soh() const { return soh_; }
  UavState state() const { return state_; }
  const std::optional<BidModel>& model() const { return model_; }
  std::uint64_t flight_epoch() const { return epoch_; }

  // True while the given flight is still on its outbound leg; stale turn
  // events from earlier flights or an already-turned flight test false.
  bool outbound(std::uint64_t epoch) const {
    return state_ == UavState::delivering && epoch_ == epoch;
  }

  // SoC at time t >= the last checkpoint, charging or flying.
  double soc_at(double t) const;

  // Pins the battery to a known level at time t while grounded; the agent
  // keeps charging from there.
  void checkpoint(double t, double soc);

  // Announcement while waiting; returns the bid to place, if any. The agent
  // transits waiting -> deciding -> (awaiting_outcome | waiting).
  std::optional<Bid> consider(const TaskAnnouncement& task,
                              const StrategyConfig& strategy, double now);

  // Auction outcome for an agent in awaiting_outcome. Losing returns the
  // agent to waiting. Winning an immediate bid starts a flight; winning a
  // reservation starts charging toward the target.
  struct WinOutcome {
    std::optional<FlightPlan> plan;           // immediate win
    std::optional<double> reservation_ready_s;  // reservation win
  };
  WinOutcome resolve_auction(bool won, double now, double xi);

  // Reservation target reached: take off for the reserved task.
  FlightPlan begin_reserved_flight(double now, double xi);

  // Destination reached or abort triggered; flips to the return leg.
  void turn(double now);

  // Arrival back at the FC; emits the labelled sample for this attempt and
  // updates the model unless frozen. The agent resumes charging.
  LabelledSample complete_flight(const StrategyConfig& strategy, double now);

  // Battery died mid-return.
  void mark_lost(double now);

  const FlightPlan& current_plan() const;

 private:
  void start_flight(const FlightPlan& plan);

  int uav_id_;
  double soh_;
  const UavParams* params_;
  std::optional<BidModel> model_;
  Substream bid_rng_;

  UavState state_ = UavState::waiting;
  std::uint64_t epoch_ = 0;  // increments at each takeoff
  bool turned_ = false;

  // Battery checkpoint; SoC evolves in closed form from here.
  double cp_time_ = 0.0;
  double cp_soc_ = 100.0;
  bool flying_ = false;
  double fly_rate_ = 0.0;

  std::optional<FlightPlan> plan_;
  std::optional<Bid> pending_bid_;
  std::optional<TaskAnnouncement> pending_task_;
  std::optional<double> reservation_target_soc_;
};

}  // namespace fleetsim
