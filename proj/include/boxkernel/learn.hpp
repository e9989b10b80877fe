#pragma once

#include <vector>

#include "boxkernel/kernel.hpp"
#include "boxkernel/spectral.hpp"

namespace boxkernel {

/// p*(u) = sum_i a_i K(u, sigma_i): a filter response learned as an element
/// of the RKHS of `design_kernel`, centered at operator eigenvalues.
struct FilterModel {
  std::vector<double> abscissae;
  std::vector<double> targets;  // after duplicate collapsing, aligned with abscissae
  std::vector<double> coeffs;
  KernelCatalogEntry design_kernel;
  double reg = 0.0;

  int size() const { return static_cast<int>(abscissae.size()); }
};

/// Regularized least squares with penalty reg * ||p||_H^2: solves
/// (G + reg * q * I) a = y with G_ij = K(sigma_i, sigma_j). Abscissae closer
/// than 1e-12 are merged into one with the mean target.
FilterModel fit_filter(const std::vector<double>& sigmas, const std::vector<double>& targets,
                       const KernelCatalogEntry& design_kernel, double reg);

double eval_filter(const FilterModel& model, double u);

/// sum_i p*(sigma_i) <f, theta_i> theta_i over dec's modes. Every stored
/// eigenvalue must lie in the design kernel's domain.
Signal apply_learned(const FilterModel& model, const SpectralDecomposition& dec, const Signal& f);

/// Same multiplier with the per-mode gains supplied explicitly.
Signal apply_spectral_gains(const Vector& gains, const SpectralDecomposition& dec, const Signal& f);

/// Gram matrix K(sigma_i, sigma_j) of the model's abscissae.
Matrix model_gram(const FilterModel& model);

/// Gaussian bump exp(-(sigma - center)^2 / gamma).
double gaussian_bump(double sigma, double center, double gamma);

}  // namespace boxkernel
