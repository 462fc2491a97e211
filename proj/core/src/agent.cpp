#include "fleetsim/agent.hpp"

#include <stdexcept>
#include <string>

namespace fleetsim {

std::string_view to_string(UavState state) {
  switch (state) {
    case UavState::waiting: return "waiting";
    case UavState::deciding: return "deciding";
    case UavState::awaiting_outcome: return "awaiting_outcome";
    case UavState::delivering: return "delivering";
    case UavState::returning: return "returning";
    case UavState::reserved_charging: return "reserved_charging";
    case UavState::lost: return "lost";
  }
  return "unknown";
}

std::string_view to_string(AttemptOutcome outcome) {
  switch (outcome) {
    case AttemptOutcome::success: return "success";
    case AttemptOutcome::abort: return "abort";
    case AttemptOutcome::lost: return "lost";
  }
  return "unknown";
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::learning: return "learning";
    case StrategyKind::threshold: return "threshold";
  }
  return "unknown";
}

std::optional<StrategyKind> strategy_from_string(std::string_view name) {
  if (name == "learning") return StrategyKind::learning;
  if (name == "threshold") return StrategyKind::threshold;
  return std::nullopt;
}

FlightPlan plan_flight(const TaskAnnouncement& task, double depart_time_s,
                       double soc_takeoff, double xi, double soh,
                       const UavParams& p) {
  FlightPlan plan;
  plan.task_id = task.task_id;
  plan.distance_m = task.distance_m;
  plan.mass_kg = task.mass_kg;
  plan.depart_time_s = depart_time_s;
  plan.soc_takeoff = soc_takeoff;
  plan.outbound_rate = discharge_rate(task.mass_kg, p, soh);
  plan.return_rate = discharge_rate(0.0, p, soh);

  double t_dest = task.distance_m / p.speed_mps;
  // Abort when SoC falls to xi * soc_takeoff, i.e. after spending the
  // (1 - xi) share of the takeoff charge on the outbound leg.
  double t_trig = soc_takeoff * (1.0 - xi) / plan.outbound_rate;
  plan.aborts = t_dest > t_trig;

  double turn_rel = plan.aborts ? t_trig : t_dest;
  plan.turn_time_s = depart_time_s + turn_rel;
  plan.turn_distance_m = plan.aborts ? p.speed_mps * t_trig : task.distance_m;
  plan.soc_at_turn = soc_takeoff - plan.outbound_rate * turn_rel;
  if (plan.aborts)
    plan.abort_trigger_time_s = plan.turn_time_s;
  else
    plan.dest_arrival_time_s = plan.turn_time_s;
  // The trigger instant is defined for successful flights too; the engine
  // schedules it at takeoff and discards it once the turn has happened.
  if (!plan.aborts) plan.abort_trigger_time_s = depart_time_s + t_trig;

  double t_back = plan.turn_distance_m / p.speed_mps;
  plan.fc_return_time_s = plan.turn_time_s + t_back;
  plan.soc_at_return = plan.soc_at_turn - plan.return_rate * t_back;
  if (plan.soc_at_return < 0.0) {
    plan.lost = true;
    plan.lost_time_s = plan.turn_time_s + plan.soc_at_turn / plan.return_rate;
  }
  return plan;
}

UavAgent::UavAgent(int uav_id, double soh, const UavParams& params,
                   std::optional<BidModel> model, std::uint64_t master_seed)
    : uav_id_(uav_id),
      soh_(soh),
      params_(&params),
      model_(std::move(model)),
      bid_rng_(master_seed, "uav/" + std::to_string(uav_id) + "/bids") {}

double UavAgent::soc_at(double t) const {
  if (state_ == UavState::lost) return 0.0;
  double dt = t - cp_time_;
  if (dt < 0.0) throw std::logic_error("soc_at: query before checkpoint");
  if (flying_) return discharge_soc(cp_soc_, dt, fly_rate_);
  return charge_soc(cp_soc_, dt, *params_);
}

void UavAgent::checkpoint(double t, double soc) {
  if (state_ != UavState::waiting)
    throw std::logic_error("checkpoint: agent must be grounded");
  cp_time_ = t;
  cp_soc_ = soc;
  flying_ = false;
}

std::optional<Bid> UavAgent::consider(const TaskAnnouncement& task,
                                      const StrategyConfig& strategy,
                                      double now) {
  if (state_ != UavState::waiting)
    throw std::logic_error("consider: agent not waiting");
  state_ = UavState::deciding;
  double soc = soc_at(now);

  std::optional<Bid> bid;
  std::optional<double> reservation_target;
  if (strategy.kind == StrategyKind::threshold) {
    bid = threshold_bid(task, uav_id_, soc, strategy.threshold_level_pct);
  } else {
    bid = learning_bid(*model_, strategy.standardizer, task, uav_id_, soc);
    if (!bid && strategy.forecasting) {
      if (auto rb = reservation_bid(*model_, strategy.standardizer, task,
                                    uav_id_, soc, *params_)) {
        bid = rb->bid;
        reservation_target = rb->target_soc;
      }
    }
  }
  if (bid && strategy.rule == WinnerRule::random &&
      bid->kind == BidKind::immediate) {
    // Decentralised random rule: every bidder submits its own draw and the
    // largest wins, so no central coin flip is needed.
    bid->value = bid_rng_.uniform01();
  }

  if (!bid) {
    state_ = UavState::waiting;
    return std::nullopt;
  }
  state_ = UavState::awaiting_outcome;
  pending_bid_ = bid;
  pending_task_ = task;
  reservation_target_soc_ = reservation_target;
  return bid;
}

UavAgent::WinOutcome UavAgent::resolve_auction(bool won, double now,
                                               double xi) {
  if (state_ != UavState::awaiting_outcome)
    throw std::logic_error("resolve_auction: no bid outstanding");
  WinOutcome outcome;
  if (!won) {
    state_ = UavState::waiting;
    pending_bid_.reset();
    pending_task_.reset();
    reservation_target_soc_.reset();
    return outcome;
  }
  if (pending_bid_->kind == BidKind::reservation) {
    state_ = UavState::reserved_charging;
    outcome.reservation_ready_s =
        time_to_reach_soc(soc_at(now), *reservation_target_soc_, *params_);
    return outcome;
  }
  FlightPlan plan =
      plan_flight(*pending_task_, now, soc_at(now), xi, soh_, *params_);
  start_flight(plan);
  outcome.plan = plan;
  return outcome;
}

FlightPlan UavAgent::begin_reserved_flight(double now, double xi) {
  if (state_ != UavState::reserved_charging)
    throw std::logic_error("begin_reserved_flight: no reservation held");
  FlightPlan plan =
      plan_flight(*pending_task_, now, soc_at(now), xi, soh_, *params_);
  start_flight(plan);
  return plan;
}

void UavAgent::start_flight(const FlightPlan& plan) {
  plan_ = plan;
  pending_bid_.reset();
  reservation_target_soc_.reset();
  state_ = UavState::delivering;
  ++epoch_;
  turned_ = false;
  cp_time_ = plan.depart_time_s;
  cp_soc_ = plan.soc_takeoff;
  flying_ = true;
  fly_rate_ = plan.outbound_rate;
}

void UavAgent::turn(double now) {
  if (state_ != UavState::delivering || turned_)
    throw std::logic_error("turn: not on the outbound leg");
  turned_ = true;
  state_ = UavState::returning;
  cp_time_ = now;
  cp_soc_ = plan_->soc_at_turn;
  fly_rate_ = plan_->return_rate;
}

LabelledSample UavAgent::complete_flight(const StrategyConfig& strategy,
                                         double now) {
  if (state_ != UavState::returning)
    throw std::logic_error("complete_flight: not returning");
  LabelledSample sample;
  sample.features = {plan_->distance_m, plan_->mass_kg, plan_->soc_takeoff};
  sample.label = plan_->aborts ? 0 : 1;
  if (model_ && !strategy.freeze_models)
    sgd_step(*model_, sample, strategy.standardizer);

  state_ = UavState::waiting;
  cp_time_ = now;
  cp_soc_ = plan_->soc_at_return;
  flying_ = false;
  pending_task_.reset();
  plan_.reset();
  return sample;
}

void UavAgent::mark_lost(double now) {
  if (state_ != UavState::returning)
    throw std::logic_error("mark_lost: loss happens on the return leg");
  state_ = UavState::lost;
  cp_time_ = now;
  cp_soc_ = 0.0;
  flying_ = false;
}

const FlightPlan& UavAgent::current_plan() const {
  if (!plan_) throw std::logic_error("current_plan: no active flight");
  return *plan_;
}

}  // namespace fleetsim
