#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fleetsim/agent.hpp"
#include "fleetsim/config.hpp"
#include "fleetsim/orders.hpp"

namespace fleetsim {

struct AttemptRecord {
  double depart_time_s = 0.0;
  int uav_id = -1;
  long task_id = -1;
  double soc_takeoff = 0.0;
  double distance_m = 0.0;
  double mass_kg = 0.0;
  AttemptOutcome outcome = AttemptOutcome::success;
  std::optional<double> dest_arrival_time_s;
  std::optional<double> fc_return_time_s;
};

// Model parameters of one UAV at the end of a simulated week.
struct ModelSnapshot {
  int week = 0;  // 1-based
  int uav_id = -1;
  Vec3 w{0.0, 0.0, 0.0};
  double b = 0.0;
  std::int64_t step_count = 0;
};

struct UavRecord {
  int uav_id = -1;
  double soh = 1.0;
  double final_soc = 100.0;
  bool lost = false;
  std::optional<BidModel> final_model;
};

struct RunResult {
  RunConfig config;
  std::vector<Order> orders;           // final states at the horizon
  std::vector<AttemptRecord> attempts; // in completion order
  std::vector<ModelSnapshot> snapshots;
  std::vector<UavRecord> uavs;
  long auction_count = 0;
  long reservation_count = 0;  // auctions won by a reservation bid
  // Announcement instants, recorded only when config asks for it via
  // record_announcements (test instrumentation).
  std::vector<double> announcement_times;
};

struct EngineOptions {
  bool record_announcements = false;
};

// Runs one simulation to the horizon. Deterministic: equal configs give
// equal results, field by field.
RunResult run(const RunConfig& cfg, const EngineOptions& opts = {});

}  // namespace fleetsim
