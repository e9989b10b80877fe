#pragma once

#include <optional>
#include <utility>

#include "boxkernel/kernel.hpp"

namespace boxkernel {

/// Ordering convention of a decomposition.
///   kernel:  eigenvalues >= 0, nonincreasing
///   graphon: eigenvalues in [-1, 1], nonincreasing in |lambda|
enum class SpectrumKind { kernel, graphon };

/// Eigenpairs of a discretized integral operator. Eigenfunctions are stored as
/// columns of an n x m matrix and are orthonormal in the quadrature L2 product.
/// Each column's first entry with magnitude above 1e-8 is real and positive.
class SpectralDecomposition {
 public:
  SpectralDecomposition(Grid grid, Vector eigenvalues, CMatrix modes, SpectrumKind kind);

  const Grid& grid() const { return grid_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  double eigenvalue(int i) const { return eigenvalues_[i]; }
  const CMatrix& modes() const { return modes_; }
  SpectrumKind kind() const { return kind_; }
  int size() const { return static_cast<int>(eigenvalues_.size()); }
  bool is_full() const { return size() == grid_.size(); }

  /// i-th eigenfunction, zero-based.
  Signal eigenfunction(int i) const;

  /// Quadrature coefficients <f, theta_i> for all stored modes.
  CVector coefficients(const Signal& f) const;

 private:
  Grid grid_;
  Vector eigenvalues_;
  CMatrix modes_;
  SpectrumKind kind_;
};

/// Default kind for a role: graphon -> graphon ordering, anything else -> kernel.
SpectrumKind default_kind(KernelRole role);

/// Nystrom eigendecomposition of T_K. `modes` keeps the leading m pairs under
/// the kind's ordering; std::nullopt keeps all n.
SpectralDecomposition decompose(const GridKernel& k, std::optional<int> modes = std::nullopt);
SpectralDecomposition decompose(const GridKernel& k, std::optional<int> modes, SpectrumKind kind);

/// Closed-form eigenpair of T_W for W = min(u, v) on [0, 1]:
/// lambda_i = 1 / ((i - 1/2)^2 pi^2), phi_i(u) = sqrt(2) sin((i - 1/2) pi u). i is one-based.
std::pair<double, Signal> min_graphon_oracle(int i, const Grid& grid);

/// sum_{i < r} sigma_i theta_i theta_i^H.
GridKernel mercer_reconstruct(const SpectralDecomposition& dec, int r);

/// S = sum sqrt(sigma_i) theta_i theta_i^H so that S box S reproduces K.
GridKernel sqrt_symbol(const SpectralDecomposition& dec);

/// Largest principal angle (radians) between the column spans of two
/// L2-orthonormal mode sets on the same grid.
double subspace_angle(const CMatrix& a, const CMatrix& b, const Grid& grid);

/// Groups consecutive eigenvalue indices whose gap is below `gap`.
std::vector<std::pair<int, int>> eigenvalue_clusters(const Vector& values, double gap);

}  // namespace boxkernel
