#pragma once

#include "boxkernel/common.hpp"

namespace boxkernel::detail {

struct HermitianEigen {
  Vector values;    // ascending
  CMatrix vectors;  // columns, orthonormal
};

// Dense Hermitian eigensolve. Real symmetric input takes the real path, which
// is both faster and returns real eigenvectors.
HermitianEigen hermitian_eigen(const CMatrix& a);

// Symmetric part scaled by sqrt-weights on both sides: D^1/2 A D^1/2.
CMatrix weight_symmetrize(const CMatrix& a, const Vector& weights);

}  // namespace boxkernel::detail
