#include "fleetsim/rng.hpp"

#include <array>
#include <cmath>

namespace fleetsim {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  std::uint64_t state = seed ^ (value * 0xFF51AFD7ED558CCDull);
  return splitmix64_next(state);
}

namespace {

std::mt19937_64 make_generator(std::uint64_t master_seed,
                               std::string_view label) {
  // Expand to four words so nearby master seeds do not produce correlated
  // mt19937 states.
  std::uint64_t state = hash_combine(master_seed, fnv1a(label));
  std::array<std::uint32_t, 8> words;
  for (std::size_t i = 0; i < words.size(); i += 2) {
    std::uint64_t v = splitmix64_next(state);
    words[i] = static_cast<std::uint32_t>(v);
    words[i + 1] = static_cast<std::uint32_t>(v >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

Substream::Substream(std::uint64_t master_seed, std::string_view label)
    : gen_(make_generator(master_seed, label)) {}

std::uint64_t Substream::next_u64() { return gen_(); }

double Substream::uniform01() {
  // 53 random bits into [0, 1); avoids distribution implementation drift.
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Substream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double Substream::exponential(double mean) {
  // Inverse CDF; 1 - u is in (0, 1] so the log argument never hits zero.
  return -mean * std::log(1.0 - uniform01());
}

}  // namespace fleetsim
