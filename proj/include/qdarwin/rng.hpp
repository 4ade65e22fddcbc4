#pragma once

#include <cstdint>
#include <random>

namespace qdarwin {

// Seed splitting.
//
// Every stochastic choice in the library draws from a generator seeded by
//
//   derive_seed(master, stream, index)
//     = mix(mix(master + G * (stream + 1)) + G * (index + 1))
//
// where mix is the SplitMix64 finalizer and G = 0x9e3779b97f4a7c15. Streams
// name a purpose (see SeedStream), index enumerates tasks within it. Results
// never depend on which worker ran a task.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

enum class SeedStream : std::uint64_t {
  fragments = 1,
  strategy_basis = 2,
  monte_carlo = 3,
  replicas = 4,
  povm_search = 5,
  random_actions = 6,
  verify = 7,
};

inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream, std::uint64_t index) {
  return derive_seed(master, static_cast<std::uint64_t>(stream), index);
}

/// mt19937_64 with hand-written distributions so that draws are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qdarwin
