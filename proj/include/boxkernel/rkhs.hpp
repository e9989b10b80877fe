#pragma once

#include <vector>

#include "boxkernel/spectral.hpp"

namespace boxkernel {

/// H(K) seen through a kernel-kind decomposition. Only modes with
/// sigma_i > rank_tol * sigma_1 take part in inner products.
class RkhsContext {
 public:
  explicit RkhsContext(SpectralDecomposition dec, double rank_tol = 1e-10);

  const SpectralDecomposition& decomposition() const { return dec_; }
  const Grid& grid() const { return dec_.grid(); }
  double rank_tol() const { return rank_tol_; }
  int effective_rank() const { return rank_; }

  /// Effective modes as columns (n x effective_rank).
  auto effective_modes() const { return dec_.modes().leftCols(rank_); }
  auto effective_eigenvalues() const { return dec_.eigenvalues().head(rank_); }

  /// <f, theta_i> over the effective modes.
  CVector coefficients(const Signal& f) const;

  /// L2 energy of f outside the effective span.
  double out_of_span_energy(const Signal& f) const;

  /// Fraction of ||f||^2 lying outside the effective span.
  double out_of_span_ratio(const Signal& f) const;

 private:
  SpectralDecomposition dec_;
  double rank_tol_;
  int rank_;
};

/// <f, g>_H = sum_i <f, theta_i> conj(<g, theta_i>) / sigma_i over effective modes.
cplx h_inner(const RkhsContext& ctx, const Signal& f, const Signal& g);

/// k_v(u) = K(u, v): column v of the kernel matrix.
Signal kernel_section(const GridKernel& k, int v_index);

/// f = sum_j coeffs_j k_{centers_j}. Repeated centers accumulate.
Signal expand(const std::vector<int>& centers, const std::vector<cplx>& coeffs, const GridKernel& k);

struct MembershipReport {
  double score = 0.0;     // sum |<f, theta_i>|^2 / sigma_i over effective modes
  double residual = 0.0;  // L2 energy of f outside the effective span
};

MembershipReport membership_score(const RkhsContext& ctx, const Signal& f);

}  // namespace boxkernel
