#include "boxkernel/random.hpp"

#include <algorithm>

namespace boxkernel {

Signal Random::real_signal(const Grid& grid) {
  CVector v(grid.size());
  for (int k = 0; k < grid.size(); ++k) v[k] = uniform(-1.0, 1.0);
  return Signal(grid, std::move(v));
}

Signal Random::complex_signal(const Grid& grid) {
  CVector v(grid.size());
  for (int k = 0; k < grid.size(); ++k) v[k] = complex_uniform();
  return Signal(grid, std::move(v));
}

std::vector<int> Random::distinct_indices(int n, int k) {
  if (k > n) throw InvalidArgument("distinct_indices: more indices requested than available");
  std::vector<int> out;
  out.reserve(k);
  while (static_cast<int>(out.size()) < k) {
    const int c = index(n);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

}  // namespace boxkernel
