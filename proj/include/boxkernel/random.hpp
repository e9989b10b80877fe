#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "boxkernel/grid.hpp"

namespace boxkernel {

/// Seeded pseudorandom source. The engine is std::mt19937_64 and doubles are
/// formed from the top 53 bits of each draw, (x >> 11) * 2^-53, so streams are
/// reproducible across standard libraries (std distributions are not).
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  int index(int n) { return static_cast<int>(uniform() * n); }

  cplx complex_uniform() {
    const double re = uniform(-1.0, 1.0);
    return {re, uniform(-1.0, 1.0)};
  }

  /// Real signal with samples uniform in [-1, 1].
  Signal real_signal(const Grid& grid);
  /// Complex signal with real and imaginary parts uniform in [-1, 1].
  Signal complex_signal(const Grid& grid);

  /// k distinct indices from [0, n), in draw order.
  std::vector<int> distinct_indices(int n, int k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace boxkernel
