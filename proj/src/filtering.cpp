#include "boxkernel/filtering.hpp"

#include <sstream>

#include "boxkernel/log.hpp"

namespace boxkernel {

namespace {

// sum_i p(sigma_i) sigma_i theta_i theta_i^H restricted to column v
CVector spectral_q_column(const BoxPolynomial& p, const SpectralDecomposition& dec, int v) {
  const CMatrix& theta = dec.modes();
  CVector d(dec.size());
  for (int i = 0; i < dec.size(); ++i) {
    const double s = dec.eigenvalue(i);
    d[i] = p(s) * s * std::conj(theta(v, i));
  }
  return theta * d;
}

void check_index(int v, int n, const char* what) {
  if (v < 0 || v >= n) {
    std::ostringstream os;
    os << what << ": node index " << v << " out of range [0, " << n << ")";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

FilterSpec::FilterSpec(BoxPolynomial p, GridKernel k) : poly(std::move(p)), kernel(std::move(k)) {
  if (kernel.role() != KernelRole::kernel)
    throw InvalidArgument("FilterSpec: kernel must be tagged kernel (Hermitian)");
}

Signal apply_operator(const GridKernel& k, const Signal& f) {
  require_same_grid(k.grid(), f.grid(), "apply_operator");
  CVector wf = k.grid().weights().cast<cplx>().cwiseProduct(f.values());
  return Signal(f.grid(), k.matrix() * wf);
}

Signal filter_operator(const FilterSpec& spec, const Signal& f) {
  require_same_grid(spec.kernel.grid(), f.grid(), "filter_operator");
  const auto& c = spec.poly.coeffs();
  if (c.empty()) return Signal::zeros(f.grid());
  Signal g = c.back() * f;
  for (int r = static_cast<int>(c.size()) - 2; r >= 0; --r) g = apply_operator(spec.kernel, g) + c[r] * f;
  return g;
}

Signal q_section(const FilterSpec& spec, const SpectralDecomposition& dec, int v_index) {
  require_same_grid(spec.kernel.grid(), dec.grid(), "q_section");
  check_index(v_index, dec.grid().size(), "q_section");
  return Signal(dec.grid(), spectral_q_column(spec.poly, dec, v_index));
}

CVector q_section_expansion(const FilterSpec& spec, int v_index) {
  check_index(v_index, spec.kernel.size(), "q_section_expansion");
  const GridKernel pk = realize(spec.poly, spec.kernel);
  return spec.kernel.grid().weights().cast<cplx>().cwiseProduct(pk.matrix().col(v_index));
}

PointwiseFilter::PointwiseFilter(const FilterSpec& spec, const RkhsContext& ctx)
    : grid_(ctx.grid()), modes_(ctx.effective_modes()) {
  require_same_grid(spec.kernel.grid(), ctx.grid(), "PointwiseFilter");
  const SpectralDecomposition& dec = ctx.decomposition();
  // The H(K) product is conjugate-linear in its second slot, so the outer
  // conjugation returns conj(p(sigma)). Building q_v from the conjugated
  // coefficients makes g(v) = (p(T_K) f)(v) for complex p as well.
  const BoxPolynomial pq = spec.poly.conjugate();
  const int n = grid_.size();
  const int m = ctx.effective_rank();

  // all q_v at once: Q = sum_i pq(sigma_i) sigma_i theta_i theta_i^H
  CVector d(dec.size());
  for (int i = 0; i < dec.size(); ++i) {
    const double s = dec.eigenvalue(i);
    d[i] = pq(s) * s;
  }
  const CMatrix q = dec.modes() * d.asDiagonal() * dec.modes().adjoint();

  // <q_v, theta_i>_L2 for every v (columns of q), then scale by 1 / sigma_i
  const CMatrix coeffs = modes_.adjoint() * grid_.weights().cast<cplx>().asDiagonal() * q;  // m x n
  section_coeffs_.resize(n, m);
  const auto sigma = ctx.effective_eigenvalues();
  for (int i = 0; i < m; ++i) section_coeffs_.col(i) = coeffs.row(i).transpose() / sigma[i];
}

PointwiseFilter::Result PointwiseFilter::apply(const Signal& f) const {
  require_same_grid(grid_, f.grid(), "filter_pointwise");
  const CVector fc = modes_.adjoint() * grid_.weights().cast<cplx>().cwiseProduct(f.values());
  // h(v) = <q_v, f>_H = sum_i <q_v, theta_i> conj(<f, theta_i>) / sigma_i
  const CVector h = section_coeffs_ * fc.conjugate();
  Signal out(grid_, h.conjugate());

  const double total = std::pow(norm_l2(f), 2);
  const CVector resid = f.values() - modes_ * fc;
  const double outside = std::pow(norm_l2(Signal(grid_, resid)), 2);
  const double ratio = total > 0.0 ? outside / total : 0.0;
  if (ratio > kPointwiseSpanWarn) {
    std::ostringstream os;
    os << "filter_pointwise: " << ratio
       << " of the signal energy lies outside the effective RKHS span; returning the filtered projection";
    log::warn(os.str());
  }
  return {std::move(out), ratio};
}

Signal filter_pointwise(const FilterSpec& spec, const RkhsContext& ctx, const Signal& f) {
  return PointwiseFilter(spec, ctx).apply(f).output;
}

std::vector<Signal> bank_decompose(const FilterSpec& spec, const Signal& f) {
  require_same_grid(spec.kernel.grid(), f.grid(), "bank_decompose");
  const int degree = spec.poly.degree();
  std::vector<Signal> terms;
  terms.reserve(degree + 1);
  terms.push_back(spec.poly.coeff(0) * f);
  if (degree == 0) return terms;
  const auto w = spec.kernel.grid().weights().asDiagonal();
  CMatrix power = spec.kernel.matrix();
  for (int r = 1; r <= degree; ++r) {
    if (r > 1) power = (power * w * spec.kernel.matrix()).eval();
    const GridKernel kr(spec.kernel.grid(), power, KernelRole::symbol);
    terms.push_back(spec.poly.coeff(r) * apply_operator(kr, f));
  }
  return terms;
}

}  // namespace boxkernel
