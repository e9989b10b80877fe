#include "boxkernel/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "detail/linalg.hpp"

namespace boxkernel {

namespace {

constexpr double kGraphonSlack = 1e-12;
constexpr double kHermitianTol = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermitian_defect(const CMatrix& m) { return max_abs(m - m.adjoint()); }

void check_role(const CMatrix& m, KernelRole role) {
  switch (role) {
    case KernelRole::symbol:
      return;
    case KernelRole::graphon: {
      const double im = max_imag(m);
      if (im > kGraphonSlack) {
        std::ostringstream os;
        os << "graphon invariant violated: entries must be real (max |imag| = " << im << ")";
        throw InvalidArgument(os.str());
      }
      const double lo = m.real().minCoeff();
      const double hi = m.real().maxCoeff();
      if (lo < -kGraphonSlack || hi > 1.0 + kGraphonSlack) {
        std::ostringstream os;
        os << "graphon invariant violated: entries must lie in [0, 1] (range [" << lo << ", "
           << hi << "])";
        throw InvalidArgument(os.str());
      }
      return;
    }
    case KernelRole::kernel: {
      const double defect = hermitian_defect(m);
      if (defect > kHermitianTol * std::max(1.0, max_abs(m))) {
        std::ostringstream os;
        os << "kernel invariant violated: matrix is not Hermitian (max |K - K^H| = " << defect
           << ")";
        throw InvalidArgument(os.str());
      }
      return;
    }
  }
}

double param(const std::map<std::string, double>& params, const std::string& key,
             double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double normalized_sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

std::string_view to_string(KernelRole role) {
  switch (role) {
    case KernelRole::symbol:
      return "symbol";
    case KernelRole::graphon:
      return "graphon";
    case KernelRole::kernel:
      return "kernel";
  }
  return "symbol";
}

KernelRole parse_role(std::string_view name) {
  if (name == "symbol") return KernelRole::symbol;
  if (name == "graphon") return KernelRole::graphon;
  if (name == "kernel") return KernelRole::kernel;
  throw InvalidArgument("unknown kernel role '" + std::string(name) +
                        "' (expected symbol, graphon or kernel)");
}

double max_imag(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff(); }

GridKernel::GridKernel(Grid grid, CMatrix matrix, KernelRole role)
    : grid_(std::move(grid)), matrix_(std::move(matrix)), role_(role) {
  if (matrix_.rows() != grid_.size() || matrix_.cols() != grid_.size()) {
    std::ostringstream os;
    os << "kernel matrix is " << matrix_.rows() << "x" << matrix_.cols() << " but grid has "
       << grid_.size() << " nodes";
    throw InvalidArgument(os.str());
  }
  check_role(matrix_, role_);
}

GridKernel GridKernel::with_role(KernelRole role) const { return GridKernel(grid_, matrix_, role); }

bool GridKernel::is_real(double tol) const { return max_imag(matrix_) <= tol; }

bool GridKernel::is_hermitian(double tol) const { return hermitian_defect(matrix_) <= tol; }

KernelCatalogEntry catalog_entry(const std::string& name,
                                 const std::map<std::string, double>& params) {
  static const std::map<std::string, std::set<std::string>> allowed = {
      {"constant", {"value"}},  {"uv", {}},
      {"min", {}},              {"min_one_minus_max", {}},
      {"one_minus_max", {}},    {"column", {}},
      {"poly2", {}},            {"exp_abs", {"sigma"}},
      {"periodic_exp", {"ell"}}, {"gaussian", {"sigma"}},
      {"sinc", {"B"}},          {"cos_diff", {}},
      {"sin_diff", {}},
  };
  auto found = allowed.find(name);
  if (found == allowed.end()) throw InvalidArgument("unknown catalog kernel '" + name + "'");
  for (const auto& [key, value] : params) {
    if (!found->second.count(key))
      throw InvalidArgument("catalog kernel '" + name + "' has no parameter '" + key + "'");
    if (!std::isfinite(value))
      throw InvalidArgument("catalog kernel '" + name + "' parameter '" + key + "' is not finite");
  }

  KernelCatalogEntry e;
  e.name = name;
  e.params = params;
  if (name == "constant") {
    const double c = param(params, "value", 1.0);
    e.params["value"] = c;
    e.domain_lo = -kInf;
    e.domain_hi = kInf;
    e.rule = [c](double, double) { return cplx(c); };
  } else if (name == "uv") {
    e.rule = [](double u, double v) { return cplx(u * v); };
  } else if (name == "min") {
    e.rule = [](double u, double v) { return cplx(std::min(u, v)); };
  } else if (name == "min_one_minus_max") {
    e.rule = [](double u, double v) { return cplx(std::min(u, v) * (1.0 - std::max(u, v))); };
  } else if (name == "one_minus_max") {
    e.rule = [](double u, double v) { return cplx(1.0 - std::max(u, v)); };
  } else if (name == "column") {
    e.rule = [](double u, double) { return cplx(u); };
  } else if (name == "poly2") {
    e.rule = [](double u, double v) { return cplx((1.0 + u * v) * (1.0 + u * v)); };
  } else if (name == "exp_abs" || name == "gaussian") {
    const double s = param(params, "sigma", 1.0);
    if (!(s > 0.0)) throw InvalidArgument(name + ": sigma must be positive");
    e.params["sigma"] = s;
    e.domain_lo = -kInf;
    e.domain_hi = kInf;
    if (name == "exp_abs")
      e.rule = [s](double u, double v) { return cplx(std::exp(-std::abs(u - v) / s)); };
    else
      e.rule = [s](double u, double v) { return cplx(std::exp(-(u - v) * (u - v) / (2 * s * s))); };
  } else if (name == "periodic_exp") {
    const double ell = param(params, "ell", 1.0);
    if (!(ell > 0.0)) throw InvalidArgument("periodic_exp: ell must be positive");
    e.params["ell"] = ell;
    e.domain_lo = -kInf;
    e.domain_hi = kInf;
    e.rule = [ell](double u, double v) {
      const double s = std::sin(std::numbers::pi * (u - v));
      return cplx(std::exp(-2.0 / (ell * ell) * s * s));
    };
  } else if (name == "sinc") {
    const double b = param(params, "B", std::numbers::pi);
    if (!(b > 0.0)) throw InvalidArgument("sinc: B must be positive");
    e.params["B"] = b;
    e.domain_lo = -kInf;
    e.domain_hi = kInf;
    e.rule = [b](double u, double v) {
      const double c = b / std::numbers::pi;
      return cplx(c * normalized_sinc(c * (u - v)));
    };
  } else if (name == "cos_diff" || name == "sin_diff") {
    e.domain_lo = -kInf;
    e.domain_hi = kInf;
    if (name == "cos_diff")
      e.rule = [](double u, double v) { return cplx(std::cos(u - v)); };
    else
      e.rule = [](double u, double v) { return cplx(std::sin(u - v)); };
  }
  return e;
}

std::vector<std::string> catalog_names() {
  return {"constant", "uv",      "min",     "min_one_minus_max", "one_minus_max",
          "column",   "poly2",   "exp_abs", "periodic_exp",      "gaussian",
          "sinc",     "cos_diff", "sin_diff"};
}

GridKernel sample(const KernelCatalogEntry& entry, const Grid& grid, KernelRole role) {
  if (grid.lo() < entry.domain_lo || grid.hi() > entry.domain_hi) {
    std::ostringstream os;
    os << "catalog kernel '" << entry.name << "' is defined on [" << entry.domain_lo << ", "
       << entry.domain_hi << "] but the grid spans [" << grid.lo() << ", " << grid.hi() << "]";
    throw InvalidArgument(os.str());
  }
  const int n = grid.size();
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = entry(grid.node(i), grid.node(j));
  return GridKernel(grid, std::move(m), role);
}

GridKernel sample(const CMatrix& table, const Grid& grid, KernelRole role) {
  return GridKernel(grid, table, role);
}

GridKernel adjoint(const GridKernel& s) {
  return GridKernel(s.grid(), s.matrix().adjoint(), KernelRole::symbol);
}

GridKernel box_product(const GridKernel& a, const GridKernel& b) {
  require_same_grid(a.grid(), b.grid(), "box_product");
  const auto& w = a.grid().weights();
  CMatrix out = a.matrix() * w.asDiagonal() * b.matrix();
  return GridKernel(a.grid(), std::move(out), KernelRole::symbol);
}

GridKernel induced_kernel(const GridKernel& s) {
  CMatrix k = box_product(s, adjoint(s)).matrix();
  // exact Hermitian symmetry; the product is Hermitian up to rounding only
  k = 0.5 * (k + k.adjoint()).eval();
  return GridKernel(s.grid(), std::move(k), KernelRole::kernel);
}

PsdReport validate_psd(const GridKernel& k, double tol) {
  const double defect = hermitian_defect(k.matrix());
  if (defect > kHermitianTol * std::max(1.0, max_abs(k.matrix()))) {
    std::ostringstream os;
    os << "validate_psd: input is not Hermitian (max |K - K^H| = " << defect << ")";
    throw InvalidArgument(os.str());
  }
  const auto eig = detail::hermitian_eigen(detail::weight_symmetrize(k.matrix(), k.grid().weights()));
  PsdReport r;
  r.min_eigenvalue = eig.values[0];
  r.max_eigenvalue = eig.values[eig.values.size() - 1];
  r.pass = r.min_eigenvalue >= -tol * std::max(1.0, r.max_eigenvalue);
  return r;
}

GridKernel kernel_to_graphon(const GridKernel& k) {
  if (k.role() != KernelRole::kernel)
    throw InvalidArgument("kernel_to_graphon: input must be tagged kernel");
  if (!k.is_real(kGraphonSlack)) throw InvalidArgument("kernel_to_graphon: kernel must be real");
  const Matrix re = k.matrix().real();
  const double lo = re.minCoeff();
  if (lo < 0.0) {
    std::ostringstream os;
    os << "kernel_to_graphon: kernel has negative entries (min " << lo << ")";
    throw InvalidArgument(os.str());
  }
  const double c = re.maxCoeff();
  if (!(c > 0.0)) throw InvalidArgument("kernel_to_graphon: kernel is identically zero");
  Matrix w = re / c;
  return GridKernel(k.grid(), w.cast<cplx>(), KernelRole::graphon);
}

}  // namespace boxkernel
