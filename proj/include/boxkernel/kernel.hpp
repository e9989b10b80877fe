#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "boxkernel/grid.hpp"

namespace boxkernel {

/// Semantic role of a two-variable function. Roles carry invariants that are
/// checked whenever a GridKernel is constructed:
///   graphon: real entries in [0, 1]
///   kernel:  Hermitian
enum class KernelRole { symbol, graphon, kernel };

std::string_view to_string(KernelRole role);
KernelRole parse_role(std::string_view name);

/// Two-variable function sampled on a grid, entry (i, j) = F(node_i, node_j).
class GridKernel {
 public:
  GridKernel(Grid grid, CMatrix matrix, KernelRole role);

  const Grid& grid() const { return grid_; }
  const CMatrix& matrix() const { return matrix_; }
  KernelRole role() const { return role_; }
  int size() const { return grid_.size(); }
  cplx operator()(int i, int j) const { return matrix_(i, j); }

  /// Same samples under a different role; the new role's invariants are checked.
  GridKernel with_role(KernelRole role) const;

  bool is_real(double tol = 0.0) const;
  bool is_hermitian(double tol) const;

 private:
  Grid grid_;
  CMatrix matrix_;
  KernelRole role_;
};

/// A named closed-form rule (u, v) -> value, total on [domain_lo, domain_hi].
struct KernelCatalogEntry {
  std::string name;
  std::map<std::string, double> params;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  std::function<cplx(double, double)> rule;

  cplx operator()(double u, double v) const { return rule(u, v); }
  bool in_domain(double x) const { return x >= domain_lo && x <= domain_hi; }
};

/// Builds a catalog entry by identifier. Unknown names or parameters throw.
///
///   constant            value (default 1)
///   uv                  u v
///   min                 min(u, v)
///   min_one_minus_max   min(u, v) (1 - max(u, v))
///   one_minus_max       1 - max(u, v)
///   column              u                        (asymmetric digraphon)
///   poly2               (1 + u v)^2
///   exp_abs             exp(-|u - v| / sigma)
///   periodic_exp        exp(-(2 / ell^2) sin^2(pi (u - v)))
///   gaussian            exp(-(u - v)^2 / (2 sigma^2))
///   sinc                (B / pi) sinc((B / pi)(u - v)), normalized sinc
///   cos_diff, sin_diff  cos(u - v), sin(u - v)
KernelCatalogEntry catalog_entry(const std::string& name,
                                 const std::map<std::string, double>& params = {});

std::vector<std::string> catalog_names();

GridKernel sample(const KernelCatalogEntry& entry, const Grid& grid, KernelRole role);

/// Wraps an externally supplied n x n table sampled on the same midpoint grid.
GridKernel sample(const CMatrix& table, const Grid& grid, KernelRole role);

/// S*(u, v) = conj(S(v, u)); result is tagged symbol.
GridKernel adjoint(const GridKernel& s);

/// (A box B)(u, v) = integral of A(u, z) B(z, v) dz, discretized as A diag(w) B.
/// The result is tagged symbol; callers re-tag with with_role() after checking.
GridKernel box_product(const GridKernel& a, const GridKernel& b);

/// K = S box S*, tagged kernel.
GridKernel induced_kernel(const GridKernel& s);

struct PsdReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool pass = false;
};

/// Eigenvalues of diag(sqrt w) K diag(sqrt w); pass iff
/// min >= -tol * max(1, max eigenvalue).
PsdReport validate_psd(const GridKernel& k, double tol = 1e-10);

/// W = K / C with C the largest sampled value of K.
GridKernel kernel_to_graphon(const GridKernel& k);

/// Largest |imag| entry; used to route real inputs to real solvers.
double max_imag(const CMatrix& m);

}  // namespace boxkernel
