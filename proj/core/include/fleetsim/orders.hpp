#pragma once

#include <optional>
#include <set>
#include <vector>

#include "fleetsim/auction.hpp"
#include "fleetsim/rng.hpp"

namespace fleetsim {

enum class OrderStatus { unallocated, allocated, reserved, delivered };

std::string_view to_string(OrderStatus status);

struct Order {
  long order_id = -1;
  double arrival_time_s = 0.0;
  double mass_kg = 0.0;
  double distance_m = 0.0;
  OrderStatus status = OrderStatus::unallocated;
  std::optional<double> delivered_time_s;
  int attempt_count = 0;  // delivery attempts that have terminated
};

struct OrderBounds {
  double distance_min_m = 1000.0;
  double distance_max_m = 6000.0;
  double mass_min_kg = 0.5;
  double mass_max_kg = 5.0;
};

// Poisson arrival schedule over [0, horizon]: first order at t = 0, then
// exponential gaps with the given mean. Ids are assigned in arrival order.
// A non-finite mean yields an empty schedule (no demand).
std::vector<Order> generate_arrivals(Substream& rng, double mean_gap_s,
                                     double horizon_s,
                                     const OrderBounds& bounds);

// FIFO advertisement queue over the orders that have arrived and are not
// currently assigned. A cursor walks the queue so that a task nobody bids on
// is retried only after every other waiting task has had a turn (wrapping to
// the front); any successful allocation resets the cursor to the front.
class OrderQueue {
 public:
  // The order with the advertisement turn, if any order is waiting.
  std::optional<TaskAnnouncement> advertisement_candidate() const;

  void add_arrival(const Order& order);
  void record_no_bids(long order_id);   // pass over, advance the cursor
  void mark_allocated(long order_id);
  void mark_reserved(long order_id);
  // Failed attempt: back to unallocated, keeping the original arrival
  // position; bumps attempt_count.
  void release(long order_id);
  void mark_delivered(long order_id, double time_s);

  bool has_waiting() const { return !waiting_.empty(); }
  const Order& order(long order_id) const;
  std::vector<Order> snapshot() const;  // all known orders, by id

 private:
  std::vector<Order> orders_;     // index == order_id
  std::set<long> waiting_;        // arrived, unallocated; id order == FIFO
  std::optional<long> cursor_;    // next id to advertise; empty = front
};

}  // namespace fleetsim
