#pragma once

#include <array>
#include <cstdint>

namespace sqlr {

// SplitMix64 finalizer. Used both to expand seeds into xoshiro state and to
// derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t x);

// Seed for stream `stream` under `base`: mix64(base ^ mix64(stream + golden)).
// A pure function, so replications can be run in any order or in parallel.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// xoshiro256** 1.0 (Blackman & Vigna). The output sequence is fixed across
// platforms; the derived uniform/normal transforms below are documented so
// that simulated datasets are reproducible bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  // Top 53 bits scaled by 2^-53: uniform on [0, 1).
  double uniform01();
  // lo + (hi - lo) * uniform01().
  double uniform(double lo, double hi);
  // Box-Muller on two uniforms u1 = 1 - uniform01() (in (0,1]) and
  // u2 = uniform01(): returns sqrt(-2 ln u1) cos(2 pi u2), then caches
  // sqrt(-2 ln u1) sin(2 pi u2) for the following call.
  double normal();

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace sqlr
