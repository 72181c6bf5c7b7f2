#pragma once

namespace pfab {

template <class T>
struct Weighted {
  T value;
  double probability;

  friend bool operator==(const Weighted&, const Weighted&) = default;
};

inline constexpr double kDistributionTolerance = 1e-9;

}  // namespace pfab
