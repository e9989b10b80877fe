#include "boxkernel/boxalg.hpp"

#include <algorithm>
#include <sstream>

namespace boxkernel {

namespace {

void trim(std::vector<cplx>& c) {
  while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
}

}  // namespace

BoxPolynomial::BoxPolynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(coeffs_); }

BoxPolynomial::BoxPolynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(coeffs_); }

cplx BoxPolynomial::operator()(cplx t) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

BoxPolynomial BoxPolynomial::conjugate() const {
  std::vector<cplx> c(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), c.begin(), [](cplx z) { return std::conj(z); });
  return BoxPolynomial(std::move(c));
}

BoxPolynomial poly_linear(const BoxPolynomial& p, const BoxPolynomial& q, cplx alpha, cplx beta) {
  const std::size_t len = std::max(p.coeffs().size(), q.coeffs().size());
  std::vector<cplx> c(len);
  for (std::size_t r = 0; r < len; ++r) c[r] = alpha * p.coeff(int(r)) + beta * q.coeff(int(r));
  return BoxPolynomial(std::move(c));
}

BoxPolynomial poly_mul(const BoxPolynomial& p, const BoxPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<cplx> c(p.coeffs().size() + q.coeffs().size() - 1, cplx(0.0));
  for (std::size_t r = 0; r < p.coeffs().size(); ++r)
    for (std::size_t l = 0; l < q.coeffs().size(); ++l) c[r + l] += p.coeffs()[r] * q.coeffs()[l];
  return BoxPolynomial(std::move(c));
}

double poly_distance(const BoxPolynomial& p, const BoxPolynomial& q) {
  const std::size_t len = std::max(p.coeffs().size(), q.coeffs().size());
  double d = 0.0;
  for (std::size_t r = 0; r < len; ++r) d = std::max(d, std::abs(p.coeff(int(r)) - q.coeff(int(r))));
  return d;
}

GridKernel box_delta(const Grid& grid) {
  CMatrix d = grid.weights().cwiseInverse().cast<cplx>().asDiagonal();
  return GridKernel(grid, std::move(d), KernelRole::symbol);
}

GridKernel box_power(const GridKernel& k, int r) {
  if (r < 0) throw InvalidArgument("box_power: exponent must be nonnegative");
  if (r == 0) return box_delta(k.grid());
  CMatrix acc = k.matrix();
  const auto w = k.grid().weights().asDiagonal();
  for (int i = 1; i < r; ++i) acc = (acc * w * k.matrix()).eval();
  return GridKernel(k.grid(), std::move(acc), KernelRole::symbol);
}

GridKernel realize(const BoxPolynomial& p, const GridKernel& k) {
  const int n = k.size();
  CMatrix out = CMatrix::Zero(n, n);
  if (p.is_zero()) return GridKernel(k.grid(), std::move(out), KernelRole::symbol);
  const auto w = k.grid().weights().asDiagonal();
  const auto& c = p.coeffs();
  if (c[0] != cplx(0.0)) out += c[0] * box_delta(k.grid()).matrix();
  CMatrix power = k.matrix();
  for (std::size_t r = 1; r < c.size(); ++r) {
    if (r > 1) power = (power * w * k.matrix()).eval();
    if (c[r] != cplx(0.0)) out += c[r] * power;
  }
  return GridKernel(k.grid(), std::move(out), KernelRole::symbol);
}

GridKernel spectral_transfer(const BoxPolynomial& p, const SpectralDecomposition& dec) {
  if (p.coeff(0) != cplx(0.0) && !dec.is_full()) {
    std::ostringstream os;
    os << "spectral_transfer: constant term needs a full decomposition (" << dec.size() << " of "
       << dec.grid().size() << " modes stored)";
    throw InvalidArgument(os.str());
  }
  CVector d(dec.size());
  for (int i = 0; i < dec.size(); ++i) d[i] = p(dec.eigenvalue(i));
  return diagonal_symbol(d, dec);
}

GridKernel diagonal_symbol(const CVector& diag, const SpectralDecomposition& dec) {
  if (diag.size() != dec.size()) throw InvalidArgument("diagonal_symbol: one coefficient per mode");
  const CMatrix& theta = dec.modes();
  CMatrix out = theta * diag.asDiagonal() * theta.adjoint();
  return GridKernel(dec.grid(), std::move(out), KernelRole::symbol);
}

}  // namespace boxkernel
