#pragma once

#include <vector>

#include "boxkernel/boxalg.hpp"
#include "boxkernel/rkhs.hpp"

namespace boxkernel {

/// A polynomial filter p(T_K) over a Hermitian kernel.
struct FilterSpec {
  FilterSpec(BoxPolynomial poly, GridKernel kernel);

  BoxPolynomial poly;
  GridKernel kernel;
};

/// T_K f = K diag(w) f.
Signal apply_operator(const GridKernel& k, const Signal& f);

/// p(T_K) f by Horner's rule on repeated operator applications.
Signal filter_operator(const FilterSpec& spec, const Signal& f);

/// q_v = (p(K^box) box K)(., v) in spectral form: column v of
/// sum_i p(sigma_i) sigma_i theta_i theta_i^H. No full decomposition is needed
/// because delta box K = K folds the constant term into the sigma^1 coefficient.
Signal q_section(const FilterSpec& spec, const SpectralDecomposition& dec, int v_index);

/// Coefficients of q_v in the kernel sections k_l over every grid node l:
/// q_v = sum_l alpha_l k_l with alpha = diag(w) p(K^box)(:, v).
CVector q_section_expansion(const FilterSpec& spec, int v_index);

/// Point-wise implementation g(v) = conj(<q_v, f>_H(K)), evaluated for every
/// node at once. Construction assembles the q_v sections and their H(K)
/// coefficients once; each apply() then costs O(m n).
class PointwiseFilter {
 public:
  PointwiseFilter(const FilterSpec& spec, const RkhsContext& ctx);

  struct Result {
    Signal output;
    double out_of_span_ratio;  // relative L2 energy of f outside H(K)'s effective span
  };

  Result apply(const Signal& f) const;

 private:
  Grid grid_;
  CMatrix modes_;  // effective modes of the context
  // row v holds <q_v, theta_i>_L2 / sigma_i over effective modes
  CMatrix section_coeffs_;
};

Signal filter_pointwise(const FilterSpec& spec, const RkhsContext& ctx, const Signal& f);

/// Filter-bank terms: a_0 f for r = 0 and a_r T_{K^{box r}} f for r >= 1.
/// Their sum is p(T_K) f.
std::vector<Signal> bank_decompose(const FilterSpec& spec, const Signal& f);

/// Signals whose relative energy outside the effective span exceeds this
/// are filtered as their projection, with a warning.
inline constexpr double kPointwiseSpanWarn = 1e-6;

}  // namespace boxkernel
