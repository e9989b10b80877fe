#pragma once

#include <cstdint>
#include <vector>

#include "boxkernel/spectral.hpp"

namespace boxkernel {

/// Graphon Fourier coefficients, entry i = <f, phi_i>_L2 for the modes of a
/// decomposition.
struct FourierCoefficients {
  CVector values;

  int size() const { return static_cast<int>(values.size()); }
  cplx operator[](int i) const { return values[i]; }
};

/// K = W^{box 2n}, with T_K = T_W^{2n}; n = 1 gives W box W. Tagged kernel.
GridKernel induced_graphon_kernel(const GridKernel& w, int n = 1);

FourierCoefficients gft(const Signal& f, const SpectralDecomposition& dec);
Signal igft(const FourierCoefficients& coeffs, const SpectralDecomposition& dec);

/// Fourier coefficients of the kernel section k_v of K = W box W, from the
/// graphon spectrum alone: lambda_i^2 conj(phi_i(v)). For a real graphon the
/// eigenfunctions are real and this is lambda_i^2 phi_i(v).
FourierCoefficients kv_fourier(const SpectralDecomposition& dec_w, int v_index);

/// Same for an expansion f = sum_j alpha_j k_{v_j}.
FourierCoefficients expansion_fourier(const SpectralDecomposition& dec_w,
                                      const std::vector<int>& centers,
                                      const std::vector<cplx>& coeffs);

struct DigraphonCheck {
  double operator_identity_error = 0.0;  // max over probes of ||T_W T_W* x - T_K x||_inf
  double psd_min_eigenvalue = 0.0;
  bool psd = false;
  bool pass = false;
};

struct DigraphonKernel {
  GridKernel kernel;
  DigraphonCheck check;
};

/// K(u, v) = integral of W(u, z) conj(W(v, z)) dz = (W box W*)(u, v), for a
/// possibly asymmetric W. The check compares (W D)(W^H D) x against K D x on
/// `probes` seeded random signals.
DigraphonKernel digraphon_kernel(const GridKernel& w, int probes = 8, std::uint64_t seed = 1,
                                 double tol = 1e-10);

}  // namespace boxkernel
