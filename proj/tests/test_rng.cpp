#include <doctest.h>

#include <cmath>
#include <vector>

#include "fleetsim/rng.hpp"
#include "oracles.hpp"

using namespace fleetsim;

TEST_CASE("fnv1a matches published reference values") {
  CHECK(fnv1a("") == 14695981039346656037ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("substreams are deterministic per (seed, label)") {
  Substream a(42, "orders");
  Substream b(42, "orders");
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different labels give independent streams") {
  Substream a(42, "orders");
  Substream b(42, "uav/0");
  bool any_diff = false;
  std::vector<double> xs, ys;
  for (int i = 0; i < 100000; ++i) {
    double x = a.uniform01();
    double y = b.uniform01();
    any_diff = any_diff || x != y;
    xs.push_back(x);
    ys.push_back(y);
  }
  CHECK(any_diff);
  CHECK(std::abs(oracles::pearson(xs, ys)) < 0.01);
}

TEST_CASE("nearby master seeds do not correlate") {
  Substream a(1000, "orders");
  Substream b(1001, "orders");
  std::vector<double> xs, ys;
  for (int i = 0; i < 100000; ++i) {
    xs.push_back(a.uniform01());
    ys.push_back(b.uniform01());
  }
  CHECK(std::abs(oracles::pearson(xs, ys)) < 0.01);
}

TEST_CASE("uniform01 stays in [0, 1) and uniform respects bounds") {
  Substream s(7, "test");
  for (int i = 0; i < 10000; ++i) {
    double u = s.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double v = s.uniform(1000.0, 6000.0);
    CHECK(v >= 1000.0);
    CHECK(v < 6000.0);
  }
}

TEST_CASE("exponential draws follow the target distribution") {
  Substream s(123, "orders");
  const double mean = 900.0;
  std::vector<double> draws;
  for (int i = 0; i < 5000; ++i) draws.push_back(s.exponential(mean));

  // KS test at alpha = 0.001: D_crit = 1.9495 / sqrt(n).
  double d = oracles::ks_statistic(
      draws, [&](double x) { return 1.0 - std::exp(-x / mean); });
  CHECK(d < 1.9495 / std::sqrt(5000.0));

  // Law of large numbers: sample mean within 4 sigma of the true mean.
  double m = oracles::mean(draws);
  CHECK(std::abs(m - mean) < 4.0 * mean / std::sqrt(5000.0));
}
