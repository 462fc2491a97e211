// End-to-end acceptance battery. Each criterion prints one PASS/FAIL line to
// stdout; progress goes to stderr. The exit status is the number of failed
// criteria, so the harness can gate releases on it. Full-scale criteria run
// 20 seeds per condition and take a few minutes on one core; simulation
// results are cached by canonical config so overlapping criteria share runs.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fleetsim/auction.hpp"
#include "fleetsim/config.hpp"
#include "fleetsim/energy.hpp"
#include "fleetsim/engine.hpp"
#include "fleetsim/evaluation.hpp"
#include "fleetsim/io.hpp"
#include "fleetsim/learning.hpp"
#include "fleetsim/rng.hpp"

namespace fs = std::filesystem;
using namespace fleetsim;

namespace {

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[1024];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return std::string(buf);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

CriterionResult g_results[15];

void note(int id, bool pass, std::string detail) {
  g_results[id] = {pass, std::move(detail)};
  std::fprintf(stderr, "acceptance: %s criterion-%d\n",
               pass ? "pass" : "FAIL", id);
}

// Cache of completed simulations keyed by canonical config text, so criteria
// sharing a condition do not re-run it. Only the summary is kept; full run
// records are dropped after summarisation to bound memory.
struct RunStats {
  MetricsSummary metrics;
  double xi = 0.5;
};

std::map<std::string, RunStats> g_cache;

void record(const RunConfig& cfg, const MetricsSummary& m) {
  g_cache.insert_or_assign(canonical_text(cfg), RunStats{m, cfg.xi});
}

const RunStats& cached_run(const RunConfig& cfg) {
  std::string key = canonical_text(cfg);
  auto it = g_cache.find(key);
  if (it != g_cache.end()) return it->second;
  RunResult r = run(cfg);
  std::fprintf(stderr, ".");
  std::fflush(stderr);
  return g_cache.emplace(std::move(key), RunStats{summarize(r), cfg.xi})
      .first->second;
}

// Seed-indexed stats of one full-scale condition (20 seeds, 8 weeks).
struct CellStats {
  std::vector<double> delivered;
  std::vector<double> p50_s;
  std::vector<double> final_week_accuracy;
};

constexpr int kSeeds = 20;

CellStats learning_cell(double tau_min, WinnerRule rule) {
  std::fprintf(stderr, "acceptance: learning tau=%g %s x%d seeds ", tau_min,
               std::string(to_string(rule)).c_str(), kSeeds);
  CellStats c;
  for (int s = 1; s <= kSeeds; ++s) {
    RunConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(s);
    cfg.mean_interarrival_s = tau_min * 60.0;
    cfg.strategy.rule = rule;
    const RunStats& st = cached_run(cfg);
    c.delivered.push_back(static_cast<double>(st.metrics.delivered));
    c.p50_s.push_back(st.metrics.delivery_time_p50_s);
    if (!st.metrics.weekly_accuracy.empty())
      c.final_week_accuracy.push_back(mean(st.metrics.weekly_accuracy.back()));
  }
  std::fprintf(stderr, "\n");
  return c;
}

CellStats threshold_cell(double tau_min, double level_pct) {
  std::fprintf(stderr, "acceptance: threshold %g tau=%g x%d seeds ", level_pct,
               tau_min, kSeeds);
  CellStats c;
  for (int s = 1; s <= kSeeds; ++s) {
    RunConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(s);
    cfg.mean_interarrival_s = tau_min * 60.0;
    cfg.strategy.kind = StrategyKind::threshold;
    cfg.strategy.threshold_level_pct = level_pct;
    const RunStats& st = cached_run(cfg);
    c.delivered.push_back(static_cast<double>(st.metrics.delivered));
    c.p50_s.push_back(st.metrics.delivery_time_p50_s);
  }
  std::fprintf(stderr, "\n");
  return c;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// --- criterion 1 & 2: endurance and duty cycle ------------------------------

void check_endurance_and_duty() {
  UavParams p;
  double rate = discharge_rate(5.0, p, 1.0);  // %/s, full-health battery
  double endurance_min = 100.0 / rate / 60.0;
  bool ok1 = std::abs(endurance_min - 28.75) <= 0.005 * 28.75;
  note(1, ok1,
       fmt("full-battery endurance with 5 kg payload = %.4f min "
           "(target 28.75 within 0.5%%)",
           endurance_min));

  double recharge_min =
      p.theoretical_capacity_wh / (p.charger_efficiency * p.charger_power_w) *
      60.0;
  double duty_pct = 100.0 * endurance_min / (endurance_min + recharge_min);
  bool ok2 = std::abs(duty_pct - 5.4) <= 0.1;
  note(2, ok2,
       fmt("duty cycle endurance/(endurance + %.1f min recharge) = %.4f%% "
           "(target 5.4 within 0.1 pp)",
           recharge_min, duty_pct));
}

// --- criterion 3: charging curve vs numerical integration -------------------

void check_charging_curve() {
  UavParams p;
  double k = p.charge_constant();
  const double dt = 0.1;
  const long steps = 10000000;  // 1e6 s
  double max_diff = 0.0;
  bool snap_consistent = true;
  for (double soc0 : {0.0, 37.5, 80.0}) {
    double s = soc0;
    for (long i = 1; i <= steps; ++i) {
      s += dt * (100.0 - s) * k;
      double t = dt * static_cast<double>(i);
      // Raw solution of dSoC/dt = k (100 - SoC); the production function
      // equals it except inside the snap-to-full band, which it may shortcut
      // by at most the band width.
      double closed = 100.0 - (100.0 - soc0) * std::exp(-k * t);
      max_diff = std::max(max_diff, std::abs(closed - s));
      if (i % 100000 == 0) {
        double prod = charge_soc(soc0, t, p);
        if (closed < 100.0 - kFullSocSnapEps) {
          if (prod != closed) snap_consistent = false;
        } else if (std::abs(prod - closed) > kFullSocSnapEps) {
          snap_consistent = false;
        }
      }
    }
  }
  double one_tau = charge_soc(0.0, 1.0 / k, p);
  bool ok = max_diff <= 1e-3 && std::abs(one_tau - 63.212) <= 1e-3 &&
            snap_consistent;
  note(3, ok,
       fmt("closed form vs 0.1 s Euler over 1e6 s: max |diff| = %.3g "
           "(tol 1e-3); SoC after one time constant = %.5f%% "
           "(target 63.212 within 1e-3)%s",
           max_diff, one_tau,
           snap_consistent ? "" : "; snap band inconsistent"));
}

// --- criterion 4: analytic gradients vs finite differences ------------------

void check_gradients() {
  Substream rng(31, "acceptance/gradients");
  double max_rel = 0.0;
  int checked = 0;
  while (checked < 1000) {
    BidModel m;
    for (int j = 0; j < 3; ++j) m.w[j] = rng.uniform(-2.0, 2.0);
    m.b = rng.uniform(-2.0, 2.0);
    Vec3 x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
           rng.uniform(-3.0, 3.0)};
    int label = rng.uniform01() < 0.5 ? 0 : 1;
    double z = (2 * label - 1) * decision_value(m, x);
    // Central differences straddle the hinge points; stay clear of them.
    if (std::abs(z - 1.0) < 1e-4 || std::abs(z + 1.0) < 1e-4) continue;

    LossGradient g = loss_gradient(m, x, label);
    auto objective = [&](const BidModel& mm) {
      double reg = 0.5 * mm.alpha *
                   (mm.w[0] * mm.w[0] + mm.w[1] * mm.w[1] + mm.w[2] * mm.w[2]);
      return modified_huber_loss(label, decision_value(mm, x)) + reg;
    };
    for (int j = 0; j < 4; ++j) {
      double base = j < 3 ? m.w[j] : m.b;
      double h = 1e-6 * std::max(1.0, std::abs(base));
      BidModel plus = m, minus = m;
      (j < 3 ? plus.w[j] : plus.b) += h;
      (j < 3 ? minus.w[j] : minus.b) -= h;
      double numeric = (objective(plus) - objective(minus)) / (2.0 * h);
      double analytic = j < 3 ? g.w[j] : g.b;
      double rel = std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric));
      max_rel = std::max(max_rel, rel);
    }
    ++checked;
  }

  // Hinge points of the margin loss: continuous at both, smooth (matching
  // one-sided slopes) at z = 1 and z = -1 with slope 0 and -4.
  auto loss_at = [](double z) { return modified_huber_loss(1, z); };
  const double eps = 1e-7;
  bool kinks_ok = true;
  for (double z0 : {1.0, -1.0}) {
    double at = loss_at(z0);
    kinks_ok = kinks_ok && std::abs(loss_at(z0 + eps) - at) <= 5.0 * eps &&
               std::abs(loss_at(z0 - eps) - at) <= 5.0 * eps;
    double left = (at - loss_at(z0 - eps)) / eps;
    double right = (loss_at(z0 + eps) - at) / eps;
    double slope = z0 > 0 ? 0.0 : -4.0;
    kinks_ok = kinks_ok && std::abs(left - right) <= 1e-5 &&
               std::abs(left - slope) <= 1e-5;
  }

  bool ok = max_rel <= 1e-6 && kinks_ok;
  note(4, ok,
       fmt("analytic vs central-difference gradients over 1000 draws: "
           "max rel err = %.3g (tol 1e-6); margin-loss hinge points %s",
           max_rel, kinks_ok ? "continuous and smooth" : "INCONSISTENT"));
}

// --- criterion 5: winner rules and decentralised consistency ----------------

void check_auction_protocol() {
  auto winner = [](const std::vector<Bid>& bids, WinnerRule rule,
                   bool forecasting) -> std::optional<int> {
    auto idx = evaluate_bids(bids, rule, forecasting);
    if (!idx) return std::nullopt;
    return bids[*idx].uav_id;
  };
  auto imm = [](int id, double v) { return Bid{0, id, BidKind::immediate, v}; };
  auto res = [](int id, double v) {
    return Bid{0, id, BidKind::reservation, v};
  };

  bool examples_ok = true;
  std::vector<Bid> three{imm(3, 0.3), imm(7, 0.7), imm(5, 0.5)};
  examples_ok &= winner(three, WinnerRule::least_confident, false) == 3;
  examples_ok &= winner(three, WinnerRule::most_confident, false) == 7;
  std::vector<Bid> tie{imm(2, 0.5), imm(9, 0.5)};
  examples_ok &= winner(tie, WinnerRule::least_confident, false) == 9;
  examples_ok &= winner(tie, WinnerRule::most_confident, false) == 9;
  std::vector<Bid> mixed{res(1, 5.0), imm(2, 0.9), res(3, 1.0)};
  examples_ok &= winner(mixed, WinnerRule::least_confident, true) == 2;
  examples_ok &= winner(mixed, WinnerRule::most_confident, true) == 2;
  std::vector<Bid> reservations{res(1, 300.0), res(6, 90.0)};
  examples_ok &=
      !winner(reservations, WinnerRule::least_confident, false).has_value();
  examples_ok &= winner(reservations, WinnerRule::least_confident, true) == 6;
  examples_ok &= winner(reservations, WinnerRule::random, true) == 6;
  examples_ok &= !winner({}, WinnerRule::least_confident, true).has_value();

  // Decentralised consistency: every agent evaluates the same broadcast bid
  // set locally, each seeing it in its own order; all must agree. A coarse
  // value grid keeps ties frequent.
  Substream rng(53, "acceptance/auctions");
  std::mt19937 shuffler(4242);
  const long kRounds = 100000;
  long disagreements = 0;
  for (long round = 0; round < kRounds; ++round) {
    int n = 1 + static_cast<int>(rng.uniform(0.0, 25.0));
    std::vector<Bid> bids;
    for (int i = 0; i < n; ++i) {
      bool reservation = rng.uniform01() < 0.3;
      double value = reservation
                         ? 60.0 * std::floor(rng.uniform01() * 6.0)
                         : std::floor(rng.uniform01() * 8.0) / 8.0;
      bids.push_back(reservation ? res(i, value) : imm(i, value));
    }
    bool forecasting = rng.uniform01() < 0.5;
    WinnerRule rule = static_cast<WinnerRule>(round % 3);
    auto reference = winner(bids, rule, forecasting);
    for (int s = 0; s < 3; ++s) {
      std::shuffle(bids.begin(), bids.end(), shuffler);
      if (winner(bids, rule, forecasting) != reference) ++disagreements;
    }
  }

  bool ok = examples_ok && disagreements == 0;
  note(5, ok,
       fmt("winner-rule examples %s; %ld disagreements across %ld fuzzed "
           "auctions evaluated in shuffled order",
           examples_ok ? "pass" : "FAIL", disagreements, kRounds));
}

// --- criterion 6: simulated outcomes match the capability oracle ------------

void check_oracle_agreement() {
  RunConfig cfg;
  cfg.seed = 3;
  cfg.horizon_s = kSecondsPerWeek;
  RunResult r = run(cfg);
  record(cfg, summarize(r));

  std::map<int, double> soh;
  for (const UavRecord& u : r.uavs) soh[u.uav_id] = u.soh;

  long mismatches = 0;
  for (const AttemptRecord& a : r.attempts) {
    OracleVerdict v = capability_oracle(a.distance_m, a.mass_kg, a.soc_takeoff,
                                        soh.at(a.uav_id), cfg.xi, cfg.uav);
    if (v.capable != (a.outcome == AttemptOutcome::success)) ++mismatches;
  }
  note(6, mismatches == 0,
       fmt("%ld oracle mismatches across %zu executed attempts in a 1-week "
           "run",
           mismatches, r.attempts.size()));
}

// --- criterion 8 & 9: accuracy trend and throughput orderings ---------------

void check_accuracy_and_orderings() {
  CellStats least15 = learning_cell(15.0, WinnerRule::least_confident);
  CellStats most15 = learning_cell(15.0, WinnerRule::most_confident);
  CellStats random15 = learning_cell(15.0, WinnerRule::random);

  double acc_least = mean(least15.final_week_accuracy);
  double acc_most = mean(most15.final_week_accuracy);
  bool ok8 = acc_least >= 0.90 && acc_least > acc_most;
  note(8, ok8,
       fmt("week-8 mean decision accuracy: least-confident %.4f "
           "(required >= 0.90), most-confident %.4f (required below least)",
           acc_least, acc_most));

  std::string detail;
  bool ok9 = true;
  for (double tau : {15.0, 25.0, 40.0}) {
    CellStats L = tau == 15.0 ? least15
                              : learning_cell(tau, WinnerRule::least_confident);
    CellStats R =
        tau == 15.0 ? random15 : learning_cell(tau, WinnerRule::random);
    CellStats M = tau == 15.0 ? most15
                              : learning_cell(tau, WinnerRule::most_confident);
    double dl = mean(L.delivered), dr = mean(R.delivered),
           dm = mean(M.delivered);
    double tl = mean(L.p50_s) / 60.0, tr = mean(R.p50_s) / 60.0,
           tm = mean(M.p50_s) / 60.0;
    bool ord = dl > dr && dr > dm && tl < tr && tr < tm;
    ok9 = ok9 && ord;
    detail += fmt("%stau=%g delivered least/random/most %.1f/%.1f/%.1f "
                  "p50 min %.1f/%.1f/%.1f %s",
                  detail.empty() ? "" : "; ", tau, dl, dr, dm, tl, tr, tm,
                  ord ? "ordered" : "NOT ORDERED");
  }
  note(9, ok9, detail);
}

// --- criterion 10 & 11: learning vs tuned threshold baseline ----------------

void check_threshold_baseline() {
  CellStats learn20 = learning_cell(20.0, WinnerRule::least_confident);
  std::vector<double> levels{50.0, 60.0, 70.0, 80.0, 90.0, 100.0};
  std::map<double, CellStats> thr;
  for (double level : levels) thr[level] = threshold_cell(20.0, level);

  double med_del_learn = median(learn20.delivered);
  double med_del_thr80 = median(thr[80.0].delivered);
  double med_p50_learn = median(learn20.p50_s);
  double med_p50_thr80 = median(thr[80.0].p50_s);
  double del_ratio = med_del_learn / med_del_thr80;
  double time_ratio = med_p50_thr80 / med_p50_learn;
  bool ok10 = del_ratio >= 1.15 && time_ratio >= 10.0;
  note(10, ok10,
       fmt("learning vs threshold-80 at tau=20: median delivered %.1f vs "
           "%.1f (ratio %.3f, required >= 1.15); median delivery time "
           "%.1f vs %.1f min (ratio %.1f, required >= 10)",
           med_del_learn, med_del_thr80, del_ratio, med_p50_learn / 60.0,
           med_p50_thr80 / 60.0, time_ratio));

  double mean80 = mean(thr[80.0].delivered);
  int better = 0;
  std::string table;
  for (double level : levels) {
    double m = mean(thr[level].delivered);
    if (m > mean80) ++better;
    table += fmt("%s%g:%.1f", table.empty() ? "" : " ", level, m);
  }
  bool ok11 = better <= 1;
  note(11, ok11,
       fmt("seed-mean deliveries by threshold level at tau=20: %s; level 80 "
           "ranked %d of %zu (top-2 required)",
           table.c_str(), better + 1, levels.size()));
}

// --- criterion 12: reservations cut old backlog for pretrained fleets -------

void check_forecasting_effect() {
  std::fprintf(stderr, "acceptance: forecasting arms x%d seeds ", kSeeds);
  double off_sum = 0.0, on_sum = 0.0;
  for (int s = 1; s <= kSeeds; ++s) {
    RunConfig pre;
    pre.seed = static_cast<std::uint64_t>(s);
    pre.order_stream_tag = "pretrain";
    RunResult trained = run(pre);
    record(pre, summarize(trained));
    std::fprintf(stderr, ".");
    std::fflush(stderr);

    std::vector<BidModel> models;
    for (const UavRecord& u : trained.uavs)
      models.push_back(u.final_model.value_or(BidModel{}));

    for (bool forecasting : {false, true}) {
      RunConfig ev;
      ev.seed = static_cast<std::uint64_t>(s);
      ev.initial_models = models;
      ev.strategy.forecasting = forecasting;
      const RunStats& st = cached_run(ev);
      double age_w14 = 0.0;
      for (int w = 0; w < 4; ++w) age_w14 += st.metrics.backlog_age_by_week_s[w];
      (forecasting ? on_sum : off_sum) += age_w14;
    }
  }
  std::fprintf(stderr, "\n");
  double off_mean = off_sum / kSeeds, on_mean = on_sum / kSeeds;
  note(12, on_mean < off_mean,
       fmt("pretrained fleets at tau=15: seed-mean backlog age from weeks "
           "1-4 arrivals = %.3g s with reservations vs %.3g s without",
           on_mean, off_mean));
}

// --- criterion 13: byte-level determinism ------------------------------------

void check_determinism(const fs::path& tmp) {
  RunConfig cfg;
  cfg.seed = 7;
  cfg.fleet_size = 10;
  cfg.horizon_s = kSecondsPerWeek;
  cfg.mean_interarrival_s = 20.0 * 60.0;

  RunResult a = run(cfg);
  RunResult b = run(cfg);
  record(cfg, summarize(a));
  fs::path dir_a = tmp / "det_a", dir_b = tmp / "det_b";
  write_run_result(dir_a, a, summarize(a));
  write_run_result(dir_b, b, summarize(b));

  bool identical = true;
  for (const char* name : {"orders.csv", "attempts.csv", "models.csv",
                           "accuracy.csv", "summary.txt"}) {
    if (read_file(dir_a / name) != read_file(dir_b / name)) identical = false;
  }

  RunConfig other = cfg;
  other.strategy.rule = WinnerRule::most_confident;
  RunResult c = run(other);
  record(other, summarize(c));
  bool stream_unchanged = a.orders.size() == c.orders.size();
  if (stream_unchanged) {
    for (std::size_t i = 0; i < a.orders.size(); ++i) {
      const Order& x = a.orders[i];
      const Order& y = c.orders[i];
      if (x.order_id != y.order_id || x.arrival_time_s != y.arrival_time_s ||
          x.mass_kg != y.mass_kg || x.distance_m != y.distance_m) {
        stream_unchanged = false;
        break;
      }
    }
  }

  note(13, identical && stream_unchanged,
       fmt("repeated runs byte-identical across all five output files: %s; "
           "winner-rule change leaves the %zu-order stream unchanged: %s",
           identical ? "yes" : "NO", a.orders.size(),
           stream_unchanged ? "yes" : "NO"));
}

// --- criterion 14: summary metrics vs brute-force recomputation -------------

void check_metrics_oracle(const fs::path& tmp) {
  Substream rng(2468, "acceptance/fuzz");
  const int kInstances = 100;
  int exact = 0;
  for (int i = 0; i < kInstances; ++i) {
    RunConfig cfg;
    cfg.fleet_size = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
    cfg.horizon_s = rng.uniform(0.15, 1.2) * kSecondsPerWeek;
    cfg.mean_interarrival_s = rng.uniform(8.0, 50.0) * 60.0;
    cfg.seed = rng.next_u64();
    cfg.strategy.rule = static_cast<WinnerRule>(i % 3);
    if (i % 2 == 1) {
      cfg.strategy.kind = StrategyKind::threshold;
      cfg.strategy.threshold_level_pct =
          50.0 + 10.0 * static_cast<int>(rng.uniform(0.0, 6.0));
    }

    RunResult r = run(cfg);
    MetricsSummary m = summarize(r);
    record(cfg, m);
    fs::path dir = tmp / fmt("fuzz_%03d", i);
    write_run_result(dir, r, m);
    std::vector<OrderRow> rows = read_orders_csv(dir / "orders.csv");

    long delivered = 0;
    std::vector<double> times;
    int weeks = std::max(
        1, static_cast<int>(std::ceil(cfg.horizon_s / kSecondsPerWeek)));
    std::vector<double> backlog(static_cast<std::size_t>(weeks), 0.0);
    for (const OrderRow& row : rows) {
      if (row.delivered) {
        ++delivered;
        times.push_back(row.delivered_time_s - row.arrival_time_s);
      } else {
        int bucket = std::min(
            static_cast<int>(row.arrival_time_s / kSecondsPerWeek), weeks - 1);
        backlog[static_cast<std::size_t>(bucket)] +=
            cfg.horizon_s - row.arrival_time_s;
      }
    }
    std::sort(times.begin(), times.end());
    auto quantile = [&](double q) {
      if (times.empty()) return std::nan("");
      double pos = q * static_cast<double>(times.size() - 1);
      std::size_t lo = static_cast<std::size_t>(pos);
      if (lo + 1 >= times.size()) return times.back();
      return times[lo] + (pos - static_cast<double>(lo)) *
                             (times[lo + 1] - times[lo]);
    };
    auto same = [](double x, double y) {
      return (std::isnan(x) && std::isnan(y)) || x == y;
    };

    bool match = m.orders_generated == static_cast<long>(rows.size()) &&
                 m.delivered == delivered &&
                 same(m.delivery_time_p25_s, quantile(0.25)) &&
                 same(m.delivery_time_p50_s, quantile(0.50)) &&
                 same(m.delivery_time_p75_s, quantile(0.75)) &&
                 m.backlog_age_by_week_s.size() == backlog.size();
    if (match)
      for (std::size_t w = 0; w < backlog.size(); ++w)
        if (m.backlog_age_by_week_s[w] != backlog[w]) match = false;
    if (match) ++exact;

    if (i % 10 == 9) {
      std::fprintf(stderr, ".");
      std::fflush(stderr);
    }
  }
  std::fprintf(stderr, "\n");
  note(14, exact == kInstances,
       fmt("summary metrics equal an independent recomputation from the "
           "written order files on %d of %d fuzzed runs",
           exact, kInstances));
}

// --- criterion 7: no UAV losses at the default abort fraction ---------------

void check_safety() {
  long runs = 0, lost = 0;
  for (const auto& [key, stats] : g_cache) {
    if (stats.xi != 0.5) continue;
    ++runs;
    lost += stats.metrics.lost_uavs;
  }
  note(7, runs > 0 && lost == 0,
       fmt("%ld UAVs lost across %ld recorded runs at abort fraction 0.5",
           lost, runs));
}

}  // namespace

int main() {
  fs::path tmp = fs::temp_directory_path() / "fleetsim_acceptance";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  check_endurance_and_duty();
  check_charging_curve();
  check_gradients();
  check_auction_protocol();
  check_oracle_agreement();
  check_determinism(tmp);
  check_metrics_oracle(tmp);
  check_accuracy_and_orderings();
  check_threshold_baseline();
  check_forecasting_effect();
  check_safety();

  fs::remove_all(tmp);

  int failures = 0;
  for (int id = 1; id <= 14; ++id) {
    const CriterionResult& r = g_results[id];
    if (!r.pass) ++failures;
    std::printf("%s criterion-%d: %s\n", r.pass ? "PASS" : "FAIL", id,
                r.detail.c_str());
  }
  std::printf("acceptance: %d/14 criteria passed\n", 14 - failures);
  return failures;
}
