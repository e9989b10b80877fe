#pragma once

#include <vector>

#include "boxkernel/spectral.hpp"

namespace boxkernel {

/// f = sum_{t in T} a_t k_t over a finite set of distinct centers.
struct RkhsFiniteSignal {
  RkhsFiniteSignal(std::vector<int> centers, std::vector<cplx> coeffs, GridKernel kernel);

  std::vector<int> centers;
  std::vector<cplx> coeffs;
  GridKernel kernel;

  Signal expand() const;
};

struct BandlimitResult {
  bool pass = false;
  double max_out_of_band = 0.0;  // max_{i >= B} |f_i|, zero-based i
};

/// Passes iff every coefficient beyond the first B is at most tol * ||f||.
BandlimitResult bandlimit_check(const Signal& f, const SpectralDecomposition& dec, int B, double tol = 1e-3);

enum class Band { low, mid, tail };

const char* to_string(Band band);

/// Per-mode spectrum of an RKHS-finite signal binned into the low band
/// [1, B], the mid band [B + 1, |T|] and the tail [|T| + 1, m] (one-based).
struct BandReport {
  int B = 0;
  int support = 0;  // |T|
  CVector fhat;
  Vector magnitudes;
  double low_energy = 0.0;
  double mid_energy = 0.0;
  double tail_energy = 0.0;

  Band band_of(int i) const;  // zero-based mode index
};

/// fhat_i = sigma_i sum_t a_t conj(theta_i(t)), from the expansion coefficients.
BandReport uncertainty_residuals(const RkhsFiniteSignal& fs, const SpectralDecomposition& dec, int B);

struct CoefficientDesign {
  std::vector<cplx> coeffs;
  double mid_energy = 0.0;
  double tail_energy = 0.0;
  double constraint_residual = 0.0;  // max_i<B |fhat_i - target_i|
};

/// Chooses a_t so the first B coefficients hit `targets` exactly while the
/// mid-band energy sum_{B < i <= |T|} |fhat_i|^2 is minimal.
CoefficientDesign design_coeffs(const std::vector<int>& centers, const SpectralDecomposition& dec, int B,
                                const std::vector<cplx>& targets);

struct SpectralResponse {
  CVector estimates;        // p(sigma_i); zero where invalid
  std::vector<bool> valid;  // false where |theta_i(v)| <= 1e-8
};

/// p(sigma_i) = (1 / conj(theta_i(v))) sum_l alpha_l conj(theta_i(l)) for an
/// expansion q_v = sum_l alpha_l k_l.
SpectralResponse spectral_response(const std::vector<cplx>& alpha, const std::vector<int>& centers,
                                   const SpectralDecomposition& dec, int v_index);

}  // namespace boxkernel
