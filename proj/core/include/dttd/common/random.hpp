#pragma once

#include <cstdint>
#include <vector>

namespace dttd::rng {

// Deterministic splitmix64 stream. Unlike the std:: distributions, every draw
// is fully specified here, so identical seeds give identical bytes on any
// platform or standard library. Independent sub-streams derive from
// (seed, stream_id) pairs, which keeps parallel frame generation reproducible
// regardless of scheduling.
class Stream {
 public:
  explicit Stream(uint64_t seed) : state_(seed) {}

  static uint64_t mix(uint64_t x);
  static Stream derive(uint64_t seed, uint64_t stream_id);

  uint64_t next_u64();

  // [0, 1) with 53 random mantissa bits.
  double uniform01();
  double uniform(double lo, double hi);
  // [0, n); n must be > 0.
  uint64_t uniform_int(uint64_t n);
  // Box-Muller; consumes two draws per value.
  double normal(double mean, double sigma);
  double exponential(double scale);

  // Partial Fisher-Yates: k distinct indices out of [0, n), order randomized.
  std::vector<int> sample_without_replacement(int n, int k);
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = uniform_int(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace dttd::rng
