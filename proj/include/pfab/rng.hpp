#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace pfab {

// Source of randomness consumed by bandits, agents and PFA execution.
// Every draw goes through uniform() unless a subclass intercepts the
// higher-level calls (tests use this to enumerate coin outcomes).
class RandomStream {
 public:
  virtual ~RandomStream() = default;

  // Uniform on [0, 1).
  virtual double uniform() = 0;

  virtual bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  virtual std::size_t index(std::size_t n);

  // Standard normal (Box-Muller, no caching).
  virtual double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang; boosted for shape < 1.
  virtual double gamma(double shape);

  double beta(double a, double b);
};

// mt19937_64 with 53-bit mantissa extraction. The algorithm identifier is
// written into experiment metadata so results can be regenerated elsewhere.
class SeededStream final : public RandomStream {
 public:
  static constexpr std::string_view kAlgorithm =
      "mt19937_64/u53;normal=box-muller;gamma=marsaglia-tsang;beta=gamma-ratio";

  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() override {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// Replication r of an experiment seeded with `base` uses this seed.
constexpr std::uint64_t replication_seed(std::uint64_t base, std::size_t replication) {
  return base + static_cast<std::uint64_t>(replication);
}

}  // namespace pfab
