#include "boxkernel/rkhs.hpp"

#include <cmath>
#include <sstream>

namespace boxkernel {

RkhsContext::RkhsContext(SpectralDecomposition dec, double rank_tol)
    : dec_(std::move(dec)), rank_tol_(rank_tol), rank_(0) {
  if (dec_.kind() != SpectrumKind::kernel)
    throw InvalidArgument("RkhsContext needs a kernel-kind decomposition");
  if (!(rank_tol_ >= 0.0)) throw InvalidArgument("RkhsContext: rank_tol must be nonnegative");
  const Vector& s = dec_.eigenvalues();
  if (s.size() == 0 || !(s[0] > 0.0)) return;
  const double cutoff = rank_tol_ * s[0];
  while (rank_ < s.size() && s[rank_] > cutoff) ++rank_;
}

CVector RkhsContext::coefficients(const Signal& f) const {
  require_same_grid(grid(), f.grid(), "RKHS coefficients");
  return effective_modes().adjoint() * grid().weights().cast<cplx>().cwiseProduct(f.values());
}

double RkhsContext::out_of_span_energy(const Signal& f) const {
  const CVector inside = effective_modes() * coefficients(f);
  return std::pow(norm_l2(Signal(grid(), f.values() - inside)), 2);
}

double RkhsContext::out_of_span_ratio(const Signal& f) const {
  const double total = std::pow(norm_l2(f), 2);
  if (total == 0.0) return 0.0;
  return out_of_span_energy(f) / total;
}

cplx h_inner(const RkhsContext& ctx, const Signal& f, const Signal& g) {
  const CVector cf = ctx.coefficients(f);
  const CVector cg = ctx.coefficients(g);
  const auto sigma = ctx.effective_eigenvalues();
  cplx acc = 0.0;
  for (int i = 0; i < ctx.effective_rank(); ++i) acc += cf[i] * std::conj(cg[i]) / sigma[i];
  return acc;
}

Signal kernel_section(const GridKernel& k, int v_index) {
  if (v_index < 0 || v_index >= k.size()) {
    std::ostringstream os;
    os << "kernel_section: index " << v_index << " out of range [0, " << k.size() << ")";
    throw InvalidArgument(os.str());
  }
  return Signal(k.grid(), k.matrix().col(v_index));
}

Signal expand(const std::vector<int>& centers, const std::vector<cplx>& coeffs, const GridKernel& k) {
  if (centers.size() != coeffs.size()) {
    std::ostringstream os;
    os << "expand: " << centers.size() << " centers but " << coeffs.size() << " coefficients";
    throw InvalidArgument(os.str());
  }
  CVector out = CVector::Zero(k.size());
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const int v = centers[j];
    if (v < 0 || v >= k.size()) {
      std::ostringstream os;
      os << "expand: center index " << v << " out of range [0, " << k.size() << ")";
      throw InvalidArgument(os.str());
    }
    out += coeffs[j] * k.matrix().col(v);
  }
  return Signal(k.grid(), std::move(out));
}

MembershipReport membership_score(const RkhsContext& ctx, const Signal& f) {
  const CVector c = ctx.coefficients(f);
  const auto sigma = ctx.effective_eigenvalues();
  MembershipReport r;
  for (int i = 0; i < ctx.effective_rank(); ++i) r.score += std::norm(c[i]) / sigma[i];
  r.residual = ctx.out_of_span_energy(f);
  return r;
}

}  // namespace boxkernel
