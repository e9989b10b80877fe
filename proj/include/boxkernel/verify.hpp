#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace boxkernel {

struct PropertyResult {
  std::string name;
  double value = 0.0;      // measured error or violation
  double tolerance = 0.0;  // pass iff value <= tolerance
  bool pass = false;
};

/// The invariant suite behind `boxkernel verify`: spectra, box algebra,
/// filter equivalence, graphon Fourier identities, digraphons, localization
/// and representer fits at desk scale. Every random draw comes from `seed`.
std::vector<PropertyResult> verify_properties(std::uint64_t seed);

}  // namespace boxkernel
