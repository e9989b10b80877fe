#include "boxkernel/localize.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "boxkernel/rkhs.hpp"

namespace boxkernel {

namespace {

constexpr double kModeFloor = 1e-8;

void check_centers(const std::vector<int>& centers, int n, const char* what) {
  for (int c : centers) {
    if (c < 0 || c >= n) {
      std::ostringstream os;
      os << what << ": center index " << c << " out of range [0, " << n << ")";
      throw InvalidArgument(os.str());
    }
  }
}

// rows i in [first, last): sigma_i conj(theta_i(t)) over the centers
CMatrix coefficient_map(const SpectralDecomposition& dec, const std::vector<int>& centers, int first,
                        int last) {
  CMatrix a(last - first, static_cast<Eigen::Index>(centers.size()));
  for (int i = first; i < last; ++i)
    for (std::size_t t = 0; t < centers.size(); ++t)
      a(i - first, t) = dec.eigenvalue(i) * std::conj(dec.modes()(centers[t], i));
  return a;
}

}  // namespace

RkhsFiniteSignal::RkhsFiniteSignal(std::vector<int> c, std::vector<cplx> a, GridKernel k)
    : centers(std::move(c)), coeffs(std::move(a)), kernel(std::move(k)) {
  if (centers.size() != coeffs.size())
    throw InvalidArgument("RkhsFiniteSignal: centers and coefficients differ in length");
  check_centers(centers, kernel.size(), "RkhsFiniteSignal");
  if (std::set<int>(centers.begin(), centers.end()).size() != centers.size())
    throw InvalidArgument("RkhsFiniteSignal: centers must be distinct");
}

Signal RkhsFiniteSignal::expand() const { return boxkernel::expand(centers, coeffs, kernel); }

BandlimitResult bandlimit_check(const Signal& f, const SpectralDecomposition& dec, int B, double tol) {
  if (B < 0 || B > dec.size()) {
    std::ostringstream os;
    os << "bandlimit_check: B=" << B << " outside [0, " << dec.size() << "]";
    throw InvalidArgument(os.str());
  }
  const CVector c = dec.coefficients(f);
  BandlimitResult r;
  for (int i = B; i < c.size(); ++i) r.max_out_of_band = std::max(r.max_out_of_band, std::abs(c[i]));
  r.pass = r.max_out_of_band <= tol * norm_l2(f);
  return r;
}

const char* to_string(Band band) {
  switch (band) {
    case Band::low:
      return "low";
    case Band::mid:
      return "mid";
    case Band::tail:
      return "tail";
  }
  return "tail";
}

Band BandReport::band_of(int i) const {
  if (i < B) return Band::low;
  if (i < support) return Band::mid;
  return Band::tail;
}

BandReport uncertainty_residuals(const RkhsFiniteSignal& fs, const SpectralDecomposition& dec, int B) {
  require_same_grid(fs.kernel.grid(), dec.grid(), "uncertainty_residuals");
  if (B < 0 || B > dec.size()) throw InvalidArgument("uncertainty_residuals: B outside the stored modes");
  BandReport r;
  r.B = B;
  r.support = static_cast<int>(fs.centers.size());
  const CVector a = Eigen::Map<const CVector>(fs.coeffs.data(), static_cast<Eigen::Index>(fs.coeffs.size()));
  r.fhat = coefficient_map(dec, fs.centers, 0, dec.size()) * a;
  r.magnitudes = r.fhat.cwiseAbs();
  for (int i = 0; i < dec.size(); ++i) {
    const double e = std::norm(r.fhat[i]);
    switch (r.band_of(i)) {
      case Band::low:
        r.low_energy += e;
        break;
      case Band::mid:
        r.mid_energy += e;
        break;
      case Band::tail:
        r.tail_energy += e;
        break;
    }
  }
  return r;
}

CoefficientDesign design_coeffs(const std::vector<int>& centers, const SpectralDecomposition& dec, int B,
                                const std::vector<cplx>& targets) {
  const int support = static_cast<int>(centers.size());
  check_centers(centers, dec.grid().size(), "design_coeffs");
  if (B < 1 || B > dec.size()) throw InvalidArgument("design_coeffs: B must lie in [1, modes]");
  if (support < B) {
    std::ostringstream os;
    os << "design_coeffs: need at least B=" << B << " centers, got " << support;
    throw InvalidArgument(os.str());
  }
  if (static_cast<int>(targets.size()) != B)
    throw InvalidArgument("design_coeffs: one target per constrained mode");

  const CMatrix c = coefficient_map(dec, centers, 0, B);
  const int mid_end = std::min(support, dec.size());
  const CMatrix mid = coefficient_map(dec, centers, B, mid_end);
  const CVector t = Eigen::Map<const CVector>(targets.data(), B);

  // Null-space method: a = a_p + N z with C a_p = t and C N = 0, then z
  // minimizes ||mid (a_p + N z)|| in the least-squares sense.
  Eigen::JacobiSVD<CMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double thresh = std::max(B, support) * std::numeric_limits<double>::epsilon() * s[0];
  int rank = 0;
  while (rank < s.size() && s[rank] > thresh) ++rank;
  if (rank < B) {
    std::ostringstream os;
    os << "design_coeffs: constraint matrix is rank deficient (numerical rank " << rank << " < B=" << B << ")";
    throw NumericalError(os.str());
  }
  const CMatrix& v = svd.matrixV();
  CVector ap = v.leftCols(B) * (s.head(B).cwiseInverse().cast<cplx>().asDiagonal() * (svd.matrixU().adjoint() * t));
  CVector a = ap;
  if (support > B && mid.rows() > 0) {
    const CMatrix null = v.rightCols(support - B);
    const CMatrix mn = mid * null;
    const CVector z = -mn.completeOrthogonalDecomposition().solve(mid * ap);
    a += null * z;
  }

  CoefficientDesign d;
  d.coeffs.assign(a.data(), a.data() + a.size());
  const CMatrix full = coefficient_map(dec, centers, 0, dec.size());
  const CVector fhat = full * a;
  for (int i = 0; i < dec.size(); ++i) {
    if (i < B)
      d.constraint_residual = std::max(d.constraint_residual, std::abs(fhat[i] - t[i]));
    else if (i < support)
      d.mid_energy += std::norm(fhat[i]);
    else
      d.tail_energy += std::norm(fhat[i]);
  }
  return d;
}

SpectralResponse spectral_response(const std::vector<cplx>& alpha, const std::vector<int>& centers,
                                   const SpectralDecomposition& dec, int v_index) {
  if (alpha.size() != centers.size())
    throw InvalidArgument("spectral_response: coefficients and centers differ in length");
  check_centers(centers, dec.grid().size(), "spectral_response");
  check_centers({v_index}, dec.grid().size(), "spectral_response");
  SpectralResponse r;
  r.estimates = CVector::Zero(dec.size());
  r.valid.assign(dec.size(), false);
  const CMatrix& theta = dec.modes();
  for (int i = 0; i < dec.size(); ++i) {
    const cplx at_v = theta(v_index, i);
    if (std::abs(at_v) <= kModeFloor) continue;
    cplx acc = 0.0;
    for (std::size_t l = 0; l < centers.size(); ++l) acc += alpha[l] * std::conj(theta(centers[l], i));
    r.estimates[i] = acc / std::conj(at_v);
    r.valid[i] = true;
  }
  return r;
}

}  // namespace boxkernel
