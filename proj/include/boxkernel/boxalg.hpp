#pragma once

#include <initializer_list>
#include <vector>

#include "boxkernel/spectral.hpp"

namespace boxkernel {

/// Element sum_r a_r K^{box r} of the box-power algebra, stored by its
/// coefficients a_0 ... a_R. Trailing zeros are trimmed, so the zero
/// polynomial has no coefficients and two polynomials are equal iff their
/// coefficient lists are.
class BoxPolynomial {
 public:
  BoxPolynomial() = default;
  explicit BoxPolynomial(std::vector<cplx> coeffs);
  BoxPolynomial(std::initializer_list<cplx> coeffs);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree R; the zero polynomial reports 0.
  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  cplx coeff(int r) const { return r < static_cast<int>(coeffs_.size()) ? coeffs_[r] : cplx(0.0); }

  /// Scalar evaluation p(t) by Horner's rule.
  cplx operator()(cplx t) const;

  /// Coefficient-wise complex conjugate.
  BoxPolynomial conjugate() const;

  bool operator==(const BoxPolynomial& other) const { return coeffs_ == other.coeffs_; }
  bool operator!=(const BoxPolynomial& other) const { return !(*this == other); }

 private:
  std::vector<cplx> coeffs_;
};

/// alpha p + beta q.
BoxPolynomial poly_linear(const BoxPolynomial& p, const BoxPolynomial& q, cplx alpha, cplx beta);

/// Product in the algebra: coefficient convolution, K^{box r} . K^{box l} = K^{box (r + l)}.
BoxPolynomial poly_mul(const BoxPolynomial& p, const BoxPolynomial& q);

/// Largest coefficient-wise distance between two polynomials.
double poly_distance(const BoxPolynomial& p, const BoxPolynomial& q);

/// Discrete identity of the box product: diag(1 / w_j).
GridKernel box_delta(const Grid& grid);

/// K^{box r}; r = 0 gives box_delta.
GridKernel box_power(const GridKernel& k, int r);

/// p(K^box) = sum_r a_r K^{box r}.
GridKernel realize(const BoxPolynomial& p, const GridKernel& k);

/// sum_i p(sigma_i) theta_i theta_i^H. A nonzero constant term needs a full
/// decomposition, since the identity is only representable on a complete basis.
GridKernel spectral_transfer(const BoxPolynomial& p, const SpectralDecomposition& dec);

/// Symbol sum_i c_i theta_i theta_i^H sharing dec's eigenbasis.
GridKernel diagonal_symbol(const CVector& diag, const SpectralDecomposition& dec);

}  // namespace boxkernel
