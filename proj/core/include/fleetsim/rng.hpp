#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fleetsim {

// 64-bit FNV-1a, used to turn substream labels into seed material.
std::uint64_t fnv1a(std::string_view s);

// splitmix64 step; also the mixer for combining seed words.
std::uint64_t splitmix64_next(std::uint64_t& state);

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

// A named, independent random substream derived from (master_seed, label).
// Two substreams with different labels never share state, so adding or
// removing consumers of one stream cannot perturb another.
class Substream {
 public:
  Substream(std::uint64_t master_seed, std::string_view label);

  std::uint64_t next_u64();
  double uniform01();                      // [0, 1)
  double uniform(double lo, double hi);    // [lo, hi)
  double exponential(double mean);         // inverse CDF of -mean*ln(1-u)

 private:
  std::mt19937_64 gen_;
};

}  // namespace fleetsim
