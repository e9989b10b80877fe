#include "boxkernel/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace boxkernel {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kAbscissaMatch = 1e-9;

void require_in_domain(const KernelCatalogEntry& k, double x, const char* what) {
  if (!std::isfinite(x) || !k.in_domain(x)) {
    std::ostringstream os;
    os << what << ": " << x << " lies outside the design kernel domain [" << k.domain_lo << ", "
       << k.domain_hi << "]";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

FilterModel fit_filter(const std::vector<double>& sigmas, const std::vector<double>& targets,
                       const KernelCatalogEntry& design_kernel, double reg) {
  if (sigmas.size() != targets.size())
    throw InvalidArgument("fit_filter: sigmas and targets differ in length");
  if (sigmas.empty()) throw InvalidArgument("fit_filter: need at least one abscissa");
  if (!(reg >= 0.0) || !std::isfinite(reg)) throw InvalidArgument("fit_filter: reg must be finite and >= 0");
  for (double s : sigmas) require_in_domain(design_kernel, s, "fit_filter");

  // merge near-duplicate abscissae (degenerate eigenvalues) keeping first-seen order
  FilterModel m;
  m.design_kernel = design_kernel;
  m.reg = reg;
  std::vector<int> counts;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    auto it = std::find_if(m.abscissae.begin(), m.abscissae.end(),
                           [&](double a) { return std::abs(a - sigmas[i]) < kMergeTol; });
    if (it == m.abscissae.end()) {
      m.abscissae.push_back(sigmas[i]);
      m.targets.push_back(targets[i]);
      counts.push_back(1);
    } else {
      const auto j = static_cast<std::size_t>(it - m.abscissae.begin());
      m.targets[j] += targets[i];
      ++counts[j];
    }
  }
  for (std::size_t j = 0; j < m.targets.size(); ++j) m.targets[j] /= counts[j];

  const int q = m.size();
  Matrix g = model_gram(m);
  g.diagonal().array() += reg * q;
  const Vector y = Eigen::Map<const Vector>(m.targets.data(), q);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success)
    throw NumericalError("fit_filter: regularized Gram matrix is not positive definite");
  const Vector a = llt.solve(y);
  if (!a.allFinite()) throw NumericalError("fit_filter: solve produced non-finite coefficients");
  m.coeffs.assign(a.data(), a.data() + q);
  return m;
}

Matrix model_gram(const FilterModel& model) {
  const int q = model.size();
  Matrix g(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      g(i, j) = model.design_kernel(model.abscissae[i], model.abscissae[j]).real();
  return g;
}

double eval_filter(const FilterModel& model, double u) {
  require_in_domain(model.design_kernel, u, "eval_filter");
  double acc = 0.0;
  for (int i = 0; i < model.size(); ++i)
    acc += model.coeffs[i] * model.design_kernel(u, model.abscissae[i]).real();
  return acc;
}

Signal apply_spectral_gains(const Vector& gains, const SpectralDecomposition& dec, const Signal& f) {
  if (gains.size() != dec.size()) throw InvalidArgument("apply_spectral_gains: one gain per mode");
  const CVector c = dec.coefficients(f);
  return Signal(dec.grid(), dec.modes() * gains.cast<cplx>().cwiseProduct(c));
}

Signal apply_learned(const FilterModel& model, const SpectralDecomposition& dec, const Signal& f) {
  const Vector& s = dec.eigenvalues();
  for (double a : model.abscissae) {
    const bool found = (s.array() - a).abs().minCoeff() <= kAbscissaMatch;
    if (!found) {
      std::ostringstream os;
      os << "apply_learned: abscissa " << a << " is not an eigenvalue of the decomposition";
      throw InvalidArgument(os.str());
    }
  }
  Vector gains(dec.size());
  for (int i = 0; i < dec.size(); ++i) gains[i] = eval_filter(model, s[i]);
  return apply_spectral_gains(gains, dec, f);
}

double gaussian_bump(double sigma, double center, double gamma) {
  const double d = sigma - center;
  return std::exp(-d * d / gamma);
}

}  // namespace boxkernel
