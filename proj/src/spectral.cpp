#include "boxkernel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "detail/linalg.hpp"

namespace boxkernel {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdDrift = 1e-10;
constexpr double kPhaseFloor = 1e-8;

// Rotate each column so its first non-negligible entry is real positive.
void fix_phases(CMatrix& modes) {
  for (Eigen::Index c = 0; c < modes.cols(); ++c) {
    for (Eigen::Index r = 0; r < modes.rows(); ++r) {
      const cplx z = modes(r, c);
      if (std::abs(z) > kPhaseFloor) {
        const cplx phase = std::conj(z) / std::abs(z);
        modes.col(c) *= phase;
        modes(r, c) = std::abs(z);
        break;
      }
    }
  }
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(Grid grid, Vector eigenvalues, CMatrix modes,
                                             SpectrumKind kind)
    : grid_(std::move(grid)), eigenvalues_(std::move(eigenvalues)), modes_(std::move(modes)),
      kind_(kind) {
  if (modes_.rows() != grid_.size() || modes_.cols() != eigenvalues_.size())
    throw InvalidArgument("spectral decomposition: mode matrix shape does not match grid/eigenvalues");
}

Signal SpectralDecomposition::eigenfunction(int i) const {
  if (i < 0 || i >= size()) {
    std::ostringstream os;
    os << "eigenfunction index " << i << " out of range [0, " << size() << ")";
    throw InvalidArgument(os.str());
  }
  return Signal(grid_, modes_.col(i));
}

CVector SpectralDecomposition::coefficients(const Signal& f) const {
  require_same_grid(grid_, f.grid(), "spectral coefficients");
  // <f, theta_i> = sum_k f_k conj(theta_i,k) w_k
  return modes_.adjoint() * grid_.weights().cast<cplx>().cwiseProduct(f.values());
}

SpectrumKind default_kind(KernelRole role) {
  return role == KernelRole::graphon ? SpectrumKind::graphon : SpectrumKind::kernel;
}

SpectralDecomposition decompose(const GridKernel& k, std::optional<int> modes) {
  return decompose(k, modes, default_kind(k.role()));
}

SpectralDecomposition decompose(const GridKernel& k, std::optional<int> modes, SpectrumKind kind) {
  const int n = k.size();
  const double scale = std::max(1.0, k.matrix().cwiseAbs().maxCoeff());
  if (!k.is_hermitian(kHermitianTol * scale))
    throw InvalidArgument("decompose: operator symbol is not Hermitian");
  const int m = modes.value_or(n);
  if (m < 1 || m > n) {
    std::ostringstream os;
    os << "decompose: requested " << m << " modes but grid has " << n << " nodes";
    throw InvalidArgument(os.str());
  }

  const auto eig = detail::hermitian_eigen(detail::weight_symmetrize(k.matrix(), k.grid().weights()));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const Vector& ev = eig.values;
  if (kind == SpectrumKind::kernel) {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ev[a] > ev[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = std::abs(ev[a]), db = std::abs(ev[b]);
      if (da != db) return da > db;
      return ev[a] > ev[b];
    });
  }

  Vector values(m);
  CMatrix vecs(n, m);
  const Vector inv_sqrt_w = k.grid().sqrt_weights().cwiseInverse();
  for (int i = 0; i < m; ++i) {
    values[i] = ev[order[i]];
    vecs.col(i) = inv_sqrt_w.cast<cplx>().cwiseProduct(eig.vectors.col(order[i]));
  }

  if (kind == SpectrumKind::kernel) {
    const double top = std::max(1.0, ev.maxCoeff());
    const double floor = ev.minCoeff();
    if (floor < -kPsdDrift * top) {
      std::ostringstream os;
      os << "decompose: kernel-kind operator has negative eigenvalue " << floor
         << " (not positive semidefinite)";
      throw NumericalError(os.str());
    }
    for (int i = 0; i < m; ++i) values[i] = std::max(values[i], 0.0);
  }
  fix_phases(vecs);
  return SpectralDecomposition(k.grid(), std::move(values), std::move(vecs), kind);
}

std::pair<double, Signal> min_graphon_oracle(int i, const Grid& grid) {
  if (grid.lo() != 0.0 || grid.hi() != 1.0)
    throw InvalidArgument("min_graphon_oracle: grid must span [0, 1]");
  if (i < 1) throw InvalidArgument("min_graphon_oracle: mode index is one-based");
  const double freq = (i - 0.5) * std::numbers::pi;
  const double lambda = 1.0 / (freq * freq);
  Signal phi = Signal::sample(grid, [freq](double u) { return cplx(std::sqrt(2.0) * std::sin(freq * u)); });
  return {lambda, std::move(phi)};
}

GridKernel mercer_reconstruct(const SpectralDecomposition& dec, int r) {
  if (r < 0 || r > dec.size()) {
    std::ostringstream os;
    os << "mercer_reconstruct: r=" << r << " exceeds the " << dec.size() << " stored modes";
    throw InvalidArgument(os.str());
  }
  const auto theta = dec.modes().leftCols(r);
  CMatrix k = theta * dec.eigenvalues().head(r).cast<cplx>().asDiagonal() * theta.adjoint();
  const KernelRole role = KernelRole::kernel;
  return GridKernel(dec.grid(), std::move(k), role);
}

GridKernel sqrt_symbol(const SpectralDecomposition& dec) {
  const Vector& s = dec.eigenvalues();
  const double top = std::max(1.0, s.cwiseAbs().maxCoeff());
  Vector root(s.size());
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] < -kPsdDrift * top) {
      std::ostringstream os;
      os << "sqrt_symbol: eigenvalue " << s[i] << " at index " << i
         << " is negative; the square-root symbol needs a positive semidefinite operator";
      throw InvalidArgument(os.str());
    }
    root[i] = std::sqrt(std::max(s[i], 0.0));
  }
  CMatrix out = dec.modes() * root.cast<cplx>().asDiagonal() * dec.modes().adjoint();
  return GridKernel(dec.grid(), std::move(out), KernelRole::kernel);
}

double subspace_angle(const CMatrix& a, const CMatrix& b, const Grid& grid) {
  if (a.rows() != grid.size() || b.rows() != grid.size())
    throw InvalidArgument("subspace_angle: mode sets must be sampled on the grid");
  const CVector w = grid.weights().cast<cplx>();
  const CMatrix proj = a.adjoint() * w.asDiagonal() * b;
  const CMatrix resid = b - a * proj;
  const CMatrix scaled = grid.sqrt_weights().cast<cplx>().asDiagonal() * resid;
  Eigen::JacobiSVD<CMatrix> svd(scaled);
  double s = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  s = std::min(1.0, s);
  double angle = std::asin(s);
  if (b.cols() > a.cols()) angle = std::numbers::pi / 2;
  return angle;
}

std::vector<std::pair<int, int>> eigenvalue_clusters(const Vector& values, double gap) {
  std::vector<std::pair<int, int>> out;
  int start = 0;
  for (int i = 1; i <= values.size(); ++i) {
    if (i == values.size() || std::abs(values[i] - values[i - 1]) >= gap) {
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

}  // namespace boxkernel
