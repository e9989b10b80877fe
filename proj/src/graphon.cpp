#include "boxkernel/graphon.hpp"

#include <sstream>

#include "boxkernel/boxalg.hpp"
#include "boxkernel/random.hpp"

namespace boxkernel {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kTrivialKernel = 1e-12;

}  // namespace

GridKernel induced_graphon_kernel(const GridKernel& w, int n) {
  if (w.role() != KernelRole::graphon)
    throw InvalidArgument("induced_graphon_kernel: input must be tagged graphon");
  if (n < 1) throw InvalidArgument("induced_graphon_kernel: power n must be >= 1");
  if (!w.is_hermitian(kSymmetryTol))
    throw InvalidArgument("induced_graphon_kernel: graphon is not symmetric; use digraphon_kernel");
  CMatrix k = box_power(w, 2 * n).matrix();
  k = 0.5 * (k + k.adjoint()).eval();
  return GridKernel(w.grid(), std::move(k), KernelRole::kernel);
}

FourierCoefficients gft(const Signal& f, const SpectralDecomposition& dec) {
  return {dec.coefficients(f)};
}

Signal igft(const FourierCoefficients& coeffs, const SpectralDecomposition& dec) {
  if (coeffs.size() != dec.size()) {
    std::ostringstream os;
    os << "igft: " << coeffs.size() << " coefficients for " << dec.size() << " modes";
    throw InvalidArgument(os.str());
  }
  return Signal(dec.grid(), dec.modes() * coeffs.values);
}

FourierCoefficients kv_fourier(const SpectralDecomposition& dec_w, int v_index) {
  return expansion_fourier(dec_w, {v_index}, {cplx(1.0)});
}

FourierCoefficients expansion_fourier(const SpectralDecomposition& dec_w,
                                      const std::vector<int>& centers,
                                      const std::vector<cplx>& coeffs) {
  if (centers.size() != coeffs.size())
    throw InvalidArgument("expansion_fourier: centers and coefficients differ in length");
  const CMatrix& phi = dec_w.modes();
  CVector out = CVector::Zero(dec_w.size());
  for (int i = 0; i < dec_w.size(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const int v = centers[j];
      if (v < 0 || v >= dec_w.grid().size()) {
        std::ostringstream os;
        os << "expansion_fourier: center index " << v << " out of range";
        throw InvalidArgument(os.str());
      }
      acc += coeffs[j] * std::conj(phi(v, i));
    }
    const double l = dec_w.eigenvalue(i);
    out[i] = l * l * acc;
  }
  return {std::move(out)};
}

DigraphonKernel digraphon_kernel(const GridKernel& w, int probes, std::uint64_t seed, double tol) {
  if (w.role() != KernelRole::graphon)
    throw InvalidArgument("digraphon_kernel: input must be tagged graphon");
  CMatrix km = box_product(w, adjoint(w)).matrix();
  km = 0.5 * (km + km.adjoint()).eval();
  const double peak = km.cwiseAbs().maxCoeff();
  if (peak < kTrivialKernel) {
    std::ostringstream os;
    os << "digraphon_kernel: induced kernel is trivial (max entry " << peak << ")";
    throw NumericalError(os.str());
  }
  GridKernel k(w.grid(), std::move(km), KernelRole::kernel);

  DigraphonCheck check;
  Random rng(seed);
  const CVector wts = w.grid().weights().cast<cplx>();
  const CMatrix tw = w.matrix() * wts.asDiagonal();
  const CMatrix tw_adj = w.matrix().adjoint() * wts.asDiagonal();
  for (int p = 0; p < probes; ++p) {
    const CVector x = rng.complex_signal(w.grid()).values();
    const CVector lhs = tw * (tw_adj * x);
    const CVector rhs = k.matrix() * wts.cwiseProduct(x);
    check.operator_identity_error = std::max(check.operator_identity_error, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  const PsdReport psd = validate_psd(k);
  check.psd_min_eigenvalue = psd.min_eigenvalue;
  check.psd = psd.pass;
  check.pass = check.psd && check.operator_identity_error <= tol;
  return {std::move(k), check};
}

}  // namespace boxkernel
