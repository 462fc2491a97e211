#include "fleetsim/engine.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "fleetsim/rng.hpp"

namespace fleetsim {

namespace {

constexpr double kAdGapS = 2.0;  // minimum spacing between announcements

enum class EventKind : int {
  order_arrival = 0,
  advertisement_tick = 1,
  destination_arrival = 2,
  abort_trigger = 3,
  fc_arrival = 4,
  reservation_ready = 5,
  horizon_end = 6,
};

struct Event {
  double time = 0.0;
  int priority = 0;  // mirrors the kind; breaks same-instant ties
  std::uint64_t seq = 0;
  EventKind kind = EventKind::horizon_end;
  int uav_id = -1;
  long order_id = -1;
  std::uint64_t epoch = 0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.seq > b.seq;
  }
};

class Engine {
 public:
  Engine(const RunConfig& cfg, const EngineOptions& opts)
      : cfg_(cfg), opts_(opts) {
    cfg_.validate();

    std::string order_label = "orders";
    if (!cfg_.order_stream_tag.empty())
      order_label += "/" + cfg_.order_stream_tag;
    Substream order_rng(cfg_.seed, order_label);
    arrivals_ = generate_arrivals(order_rng, cfg_.mean_interarrival_s,
                                  cfg_.horizon_s, cfg_.order_bounds);

    TaskBounds task_bounds{
        cfg_.order_bounds.distance_min_m, cfg_.order_bounds.distance_max_m,
        cfg_.order_bounds.mass_min_kg, cfg_.order_bounds.mass_max_kg};
    agents_.reserve(static_cast<std::size_t>(cfg_.fleet_size));
    for (int i = 0; i < cfg_.fleet_size; ++i) {
      Substream soh_rng(cfg_.seed, "soh/" + std::to_string(i));
      double soh = soh_rng.uniform(cfg_.soh_min, cfg_.soh_max);
      std::optional<BidModel> model;
      if (cfg_.strategy.kind == StrategyKind::learning) {
        model = cfg_.initial_models.empty()
                    ? init_model(cfg_.alpha, cfg_.eta0, task_bounds,
                                 cfg_.strategy.standardizer)
                    : cfg_.initial_models[static_cast<std::size_t>(i)];
      }
      agents_.emplace_back(i, soh, cfg_.uav, std::move(model), cfg_.seed);
    }

    for (const Order& o : arrivals_)
      push(o.arrival_time_s, EventKind::order_arrival, -1, o.order_id);
    push(cfg_.horizon_s, EventKind::horizon_end);
  }

  RunResult run() {
    while (!events_.empty()) {
      Event e = events_.top();
      events_.pop();
      emit_snapshots_before(e.time);
      if (e.kind == EventKind::horizon_end) break;
      dispatch(e);
    }
    emit_snapshots_before(
        std::nextafter(cfg_.horizon_s, std::numeric_limits<double>::max()));
    return finalize();
  }

 private:
  void push(double time, EventKind kind, int uav_id = -1, long order_id = -1,
            std::uint64_t epoch = 0) {
    events_.push(Event{time, static_cast<int>(kind), seq_++, kind, uav_id,
                       order_id, epoch});
  }

  bool any_waiting() const {
    for (const UavAgent& a : agents_)
      if (a.state() == UavState::waiting) return true;
    return false;
  }

  // Re-arms the advertisement ticker after an enabling change (arrival,
  // release, landing) or after an auction, keeping the 2 s spacing.
  void wake_ticker(double now) {
    if (tick_scheduled_) return;
    if (!queue_.has_waiting() || !any_waiting()) return;
    double t = std::max(now, last_announcement_ + kAdGapS);
    if (t > cfg_.horizon_s) return;
    tick_scheduled_ = true;
    push(t, EventKind::advertisement_tick);
  }

  void dispatch(const Event& e) {
    switch (e.kind) {
      case EventKind::order_arrival:
        queue_.add_arrival(arrivals_[static_cast<std::size_t>(e.order_id)]);
        wake_ticker(e.time);
        break;
      case EventKind::advertisement_tick:
        tick_scheduled_ = false;
        run_auction(e.time);
        break;
      case EventKind::destination_arrival:
      case EventKind::abort_trigger:
        handle_turn(e);
        break;
      case EventKind::fc_arrival:
        handle_fc_arrival(e);
        break;
      case EventKind::reservation_ready:
        handle_reservation_ready(e);
        break;
      case EventKind::horizon_end:
        break;
    }
  }

  void run_auction(double now) {
    if (!any_waiting()) return;
    auto candidate = queue_.advertisement_candidate();
    if (!candidate) return;

    last_announcement_ = now;
    ++auction_count_;
    if (opts_.record_announcements) announcement_times_.push_back(now);

    std::vector<Bid> bids;
    std::vector<int> bidders;
    for (UavAgent& agent : agents_) {
      if (agent.state() != UavState::waiting) continue;
      if (auto bid = agent.consider(*candidate, cfg_.strategy, now)) {
        bids.push_back(*bid);
        bidders.push_back(agent.uav_id());
      }
    }

    auto winner_idx =
        evaluate_bids(bids, cfg_.strategy.rule, cfg_.strategy.forecasting);
    if (!winner_idx) {
      queue_.record_no_bids(candidate->task_id);
    } else if (bids[*winner_idx].kind == BidKind::immediate) {
      queue_.mark_allocated(candidate->task_id);
    } else {
      queue_.mark_reserved(candidate->task_id);
      ++reservation_count_;
    }

    int winner_uav = winner_idx ? bids[*winner_idx].uav_id : -1;
    for (int uav_id : bidders) {
      UavAgent& agent = agents_[static_cast<std::size_t>(uav_id)];
      auto outcome =
          agent.resolve_auction(uav_id == winner_uav, now, cfg_.xi);
      if (outcome.plan) schedule_flight(agent, *outcome.plan);
      if (outcome.reservation_ready_s)
        push(now + *outcome.reservation_ready_s,
             EventKind::reservation_ready, uav_id, candidate->task_id);
    }
    wake_ticker(now);
  }

  void schedule_flight(const UavAgent& agent, const FlightPlan& plan) {
    std::uint64_t epoch = agent.flight_epoch();
    // Both turn events go into the queue; the loser of the race is dropped
    // when popped because the flight has already turned.
    if (plan.dest_arrival_time_s)
      push(*plan.dest_arrival_time_s, EventKind::destination_arrival,
           agent.uav_id(), plan.task_id, epoch);
    if (plan.abort_trigger_time_s)
      push(*plan.abort_trigger_time_s, EventKind::abort_trigger,
           agent.uav_id(), plan.task_id, epoch);
    push(plan.lost ? plan.lost_time_s : plan.fc_return_time_s,
         EventKind::fc_arrival, agent.uav_id(), plan.task_id, epoch);
  }

  void handle_turn(const Event& e) {
    UavAgent& agent = agents_[static_cast<std::size_t>(e.uav_id)];
    if (!agent.outbound(e.epoch)) return;  // stale twin of a done turn
    if (e.kind == EventKind::destination_arrival) {
      queue_.mark_delivered(e.order_id, e.time);
      agent.turn(e.time);
    } else {
      queue_.release(e.order_id);
      agent.turn(e.time);
      wake_ticker(e.time);
    }
  }

  void handle_fc_arrival(const Event& e) {
    UavAgent& agent = agents_[static_cast<std::size_t>(e.uav_id)];
    if (agent.flight_epoch() != e.epoch ||
        agent.state() != UavState::returning)
      throw std::logic_error("fc_arrival: inconsistent flight state");
    FlightPlan plan = agent.current_plan();

    AttemptRecord rec;
    rec.depart_time_s = plan.depart_time_s;
    rec.uav_id = e.uav_id;
    rec.task_id = plan.task_id;
    rec.soc_takeoff = plan.soc_takeoff;
    rec.distance_m = plan.distance_m;
    rec.mass_kg = plan.mass_kg;
    rec.dest_arrival_time_s = plan.dest_arrival_time_s;

    if (plan.lost) {
      agent.mark_lost(e.time);
      rec.outcome = AttemptOutcome::lost;
    } else {
      agent.complete_flight(cfg_.strategy, e.time);
      rec.outcome =
          plan.aborts ? AttemptOutcome::abort : AttemptOutcome::success;
      rec.fc_return_time_s = plan.fc_return_time_s;
    }
    attempts_.push_back(rec);
    wake_ticker(e.time);
  }

  void handle_reservation_ready(const Event& e) {
    UavAgent& agent = agents_[static_cast<std::size_t>(e.uav_id)];
    FlightPlan plan = agent.begin_reserved_flight(e.time, cfg_.xi);
    schedule_flight(agent, plan);
  }

  void emit_snapshots_before(double t) {
    while (next_week_ * kSecondsPerWeek < t &&
           next_week_ * kSecondsPerWeek <= cfg_.horizon_s) {
      for (const UavAgent& agent : agents_) {
        if (!agent.model()) continue;
        const BidModel& m = *agent.model();
        snapshots_.push_back(
            ModelSnapshot{next_week_, agent.uav_id(), m.w, m.b, m.step_count});
      }
      ++next_week_;
    }
  }

  RunResult finalize() {
    RunResult r;
    r.config = cfg_;
    r.orders = queue_.snapshot();
    r.attempts = std::move(attempts_);
    r.snapshots = std::move(snapshots_);
    r.auction_count = auction_count_;
    r.reservation_count = reservation_count_;
    r.announcement_times = std::move(announcement_times_);
    for (const UavAgent& agent : agents_) {
      UavRecord u;
      u.uav_id = agent.uav_id();
      u.soh = agent.soh();
      u.lost = agent.state() == UavState::lost;
      u.final_soc = agent.soc_at(cfg_.horizon_s);
      u.final_model = agent.model();
      r.uavs.push_back(u);
    }
    return r;
  }

  RunConfig cfg_;
  EngineOptions opts_;
  std::vector<Order> arrivals_;
  std::vector<UavAgent> agents_;
  OrderQueue queue_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::uint64_t seq_ = 0;
  double last_announcement_ = -std::numeric_limits<double>::infinity();
  bool tick_scheduled_ = false;
  std::vector<AttemptRecord> attempts_;
  std::vector<ModelSnapshot> snapshots_;
  std::vector<double> announcement_times_;
  int next_week_ = 1;
  long auction_count_ = 0;
  long reservation_count_ = 0;
};

}  // namespace

RunResult run(const RunConfig& cfg, const EngineOptions& opts) {
  Engine engine(cfg, opts);
  return engine.run();
}

}  // namespace fleetsim
