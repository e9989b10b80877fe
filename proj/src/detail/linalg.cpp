#include "detail/linalg.hpp"

#include "boxkernel/kernel.hpp"

namespace boxkernel::detail {

HermitianEigen hermitian_eigen(const CMatrix& a) {
  HermitianEigen out;
  if (max_imag(a) == 0.0) {
    Matrix re = a.real();
    re = 0.5 * (re + re.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(re);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors().cast<cplx>();
  } else {
    CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  return out;
}

CMatrix weight_symmetrize(const CMatrix& a, const Vector& weights) {
  const Vector s = weights.cwiseSqrt();
  return s.asDiagonal() * a * s.asDiagonal();
}

}  // namespace boxkernel::detail
