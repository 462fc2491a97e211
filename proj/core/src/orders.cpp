#include "fleetsim/orders.hpp"

#include <cmath>
#include <stdexcept>

namespace fleetsim {

std::string_view to_string(OrderStatus status) {
  switch (status) {
    case OrderStatus::unallocated: return "unallocated";
    case OrderStatus::allocated: return "allocated";
    case OrderStatus::reserved: return "reserved";
    case OrderStatus::delivered: return "delivered";
  }
  return "unknown";
}

std::vector<Order> generate_arrivals(Substream& rng, double mean_gap_s,
                                     double horizon_s,
                                     const OrderBounds& bounds) {
  std::vector<Order> orders;
  if (!std::isfinite(mean_gap_s)) return orders;
  double t = 0.0;
  while (t <= horizon_s) {
    Order o;
    o.order_id = static_cast<long>(orders.size());
    o.arrival_time_s = t;
    o.distance_m = rng.uniform(bounds.distance_min_m, bounds.distance_max_m);
    o.mass_kg = rng.uniform(bounds.mass_min_kg, bounds.mass_max_kg);
    orders.push_back(o);
    t += rng.exponential(mean_gap_s);
  }
  return orders;
}

std::optional<TaskAnnouncement> OrderQueue::advertisement_candidate() const {
  if (waiting_.empty()) return std::nullopt;
  auto it = waiting_.begin();
  if (cursor_) {
    it = waiting_.upper_bound(*cursor_);
    if (it == waiting_.end()) it = waiting_.begin();  // cycle complete, wrap
  }
  const Order& o = orders_[static_cast<std::size_t>(*it)];
  return TaskAnnouncement{o.order_id, o.distance_m, o.mass_kg};
}

void OrderQueue::add_arrival(const Order& order) {
  if (order.order_id != static_cast<long>(orders_.size()))
    throw std::logic_error("orders must arrive in id order");
  orders_.push_back(order);
  waiting_.insert(order.order_id);
}

void OrderQueue::record_no_bids(long order_id) {
  cursor_ = order_id;
}

void OrderQueue::mark_allocated(long order_id) {
  Order& o = orders_.at(static_cast<std::size_t>(order_id));
  o.status = OrderStatus::allocated;
  waiting_.erase(order_id);
  cursor_.reset();
}

void OrderQueue::mark_reserved(long order_id) {
  Order& o = orders_.at(static_cast<std::size_t>(order_id));
  o.status = OrderStatus::reserved;
  waiting_.erase(order_id);
  cursor_.reset();
}

void OrderQueue::release(long order_id) {
  Order& o = orders_.at(static_cast<std::size_t>(order_id));
  o.status = OrderStatus::unallocated;
  ++o.attempt_count;
  waiting_.insert(order_id);
}

void OrderQueue::mark_delivered(long order_id, double time_s) {
  Order& o = orders_.at(static_cast<std::size_t>(order_id));
  o.status = OrderStatus::delivered;
  o.delivered_time_s = time_s;
  ++o.attempt_count;
}

const Order& OrderQueue::order(long order_id) const {
  return orders_.at(static_cast<std::size_t>(order_id));
}

std::vector<Order> OrderQueue::snapshot() const { return orders_; }

}  // namespace fleetsim
