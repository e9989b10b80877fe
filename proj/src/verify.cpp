#include "boxkernel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "boxkernel/boxalg.hpp"
#include "boxkernel/filtering.hpp"
#include "boxkernel/graphon.hpp"
#include "boxkernel/learn.hpp"
#include "boxkernel/localize.hpp"
#include "boxkernel/log.hpp"
#include "boxkernel/random.hpp"

namespace boxkernel {

namespace {

double max_abs(const CMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

double max_abs_diff(const Signal& a, const Signal& b) { return max_abs(a.values() - b.values()); }

BoxPolynomial random_poly(Random& rng, int degree, bool zero_constant = false) {
  std::vector<cplx> c(degree + 1);
  for (auto& x : c) x = rng.complex_uniform();
  if (zero_constant) c[0] = 0.0;
  return BoxPolynomial(std::move(c));
}

GridKernel named(const std::string& name, const Grid& g, KernelRole role) {
  return sample(catalog_entry(name), g, role);
}

double min_lambda(int i) {
  const double f = (i - 0.5) * M_PI;
  return 1.0 / (f * f);
}

class Suite {
 public:
  void add(std::string name, double value, double tol) {
    const bool pass = std::isfinite(value) && value <= tol;
    log::info(name + (pass ? " pass" : " FAIL"));
    results_.push_back({std::move(name), value, tol, pass});
  }

  std::vector<PropertyResult> take() { return std::move(results_); }

 private:
  std::vector<PropertyResult> results_;
};

void min_spectrum(Suite& s) {
  const Grid g(0, 1, 512);
  const SpectralDecomposition dec = decompose(named("min", g, KernelRole::graphon), 5);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(dec.eigenvalue(i) - min_lambda(i + 1)) / min_lambda(i + 1));
  s.add("min_spectrum_top5_relative", worst, 1e-3);
}

void squared_spectrum(Suite& s, Random& rng) {
  const Grid g(0, 1, 256);
  for (const char* name : {"min", "min_one_minus_max", "one_minus_max"}) {
    const GridKernel w = named(name, g, KernelRole::graphon);
    const GridKernel k = induced_graphon_kernel(w);
    const SpectralDecomposition dw = decompose(w, 10), dk = decompose(k, 10);
    double eig = 0.0;
    for (int i = 0; i < 10; ++i) eig = std::max(eig, std::abs(dk.eigenvalue(i) - dw.eigenvalue(i) * dw.eigenvalue(i)));
    s.add(std::string("squared_spectrum_") + name, eig, 1e-5);
    double op = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Signal f = rng.complex_signal(g);
      op = std::max(op, max_abs_diff(apply_operator(k, f), apply_operator(w, apply_operator(w, f))));
    }
    s.add(std::string("squared_operator_") + name, op, 1e-10);
  }
}

void pointwise_equivalence(Suite& s, Random& rng) {
  const Grid g(0, 1, 256);
  const GridKernel k = induced_graphon_kernel(named("min", g, KernelRole::graphon));
  const RkhsContext ctx(decompose(k));
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const FilterSpec spec(random_poly(rng, rng.index(5)), k);
    const Signal f = apply_operator(k, rng.complex_signal(g));
    const PointwiseFilter pf(spec, ctx);
    worst = std::max(worst, relative_l2(pf.apply(f).output, filter_operator(spec, f)));
  }
  s.add("pointwise_operator_equivalence", worst, 1e-6);
}

void box_algebra(Suite& s, Random& rng) {
  const Grid g(0, 1, 64);
  const GridKernel k = induced_graphon_kernel(named("min", g, KernelRole::graphon));
  double assoc = 0.0, dist = 0.0, ident = 0.0, hom = 0.0;
  for (int t = 0; t < 100; ++t) {
    const BoxPolynomial p = random_poly(rng, rng.index(4)), q = random_poly(rng, rng.index(4)),
                        r = random_poly(rng, rng.index(4));
    const cplx a = rng.complex_uniform(), b = rng.complex_uniform();
    assoc = std::max(assoc, poly_distance(poly_mul(poly_mul(p, q), r), poly_mul(p, poly_mul(q, r))));
    dist = std::max(dist, poly_distance(poly_mul(p, poly_linear(q, r, a, b)),
                                        poly_linear(poly_mul(p, q), poly_mul(p, r), a, b)));
    ident = std::max(ident, poly_distance(poly_mul(p, BoxPolynomial{1.0}), p));
    const CMatrix rhs = box_product(realize(p, k), realize(q, k)).matrix();
    hom = std::max(hom, max_abs_diff(realize(poly_mul(p, q), k).matrix(), rhs) / std::max(1.0, max_abs(rhs)));
  }
  s.add("algebra_associativity", assoc, 1e-8);
  s.add("algebra_distributivity", dist, 1e-8);
  s.add("algebra_identity", ident, 1e-8);
  s.add("realization_homomorphism", hom, 1e-8);
}

void spectral_transfer_check(Suite& s, Random& rng) {
  const Grid g(0, 1, 64);
  const GridKernel k = named("min_one_minus_max", g, KernelRole::kernel);
  const SpectralDecomposition dec = decompose(k);
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const BoxPolynomial p = random_poly(rng, 1 + rng.index(3), true);
    worst = std::max(worst, max_abs_diff(spectral_transfer(p, dec).matrix(), realize(p, k).matrix()));
  }
  s.add("spectral_transfer_vs_realize", worst, 1e-6);

  double pair = 0.0;
  for (int t = 0; t < 20; ++t) {
    CVector a(64), b(64);
    for (int i = 0; i < 64; ++i) {
      a[i] = rng.complex_uniform();
      b[i] = rng.complex_uniform();
    }
    const CMatrix prod = box_product(diagonal_symbol(a, dec), diagonal_symbol(b, dec)).matrix();
    const CMatrix expect = diagonal_symbol(a.cwiseProduct(b), dec).matrix();
    pair = std::max(pair, max_abs_diff(prod, expect) / std::max(1.0, max_abs(expect)));
  }
  s.add("shared_basis_product", pair, 1e-8);
}

void filter_bank(Suite& s, Random& rng) {
  const Grid g(0, 1, 128);
  const GridKernel k = induced_graphon_kernel(named("min", g, KernelRole::graphon));
  double bank = 0.0, powers = 0.0;
  for (int t = 0; t < 20; ++t) {
    const FilterSpec spec(random_poly(rng, rng.index(5)), k);
    const Signal f = rng.complex_signal(g);
    Signal sum = Signal::zeros(g);
    for (const auto& term : bank_decompose(spec, f)) sum += term;
    bank = std::max(bank, max_abs_diff(sum, filter_operator(spec, f)));
    Signal iter = f;
    for (int r = 1; r <= 4; ++r) {
      iter = apply_operator(k, iter);
      powers = std::max(powers, max_abs_diff(iter, apply_operator(box_power(k, r), f)));
    }
  }
  s.add("filter_bank_sum", bank, 1e-8);
  s.add("operator_power_vs_box_power", powers, 1e-8);
}

void kernel_section_fourier(Suite& s, Random& rng) {
  const Grid g(0, 1, 512);
  const GridKernel w = named("min", g, KernelRole::graphon);
  const SpectralDecomposition dw = decompose(w);
  const GridKernel k = induced_graphon_kernel(w);
  double worst = 0.0;
  for (int t = 0; t < 8; ++t) {
    const int v = rng.index(512);
    worst = std::max(worst, max_abs(kv_fourier(dw, v).values - gft(kernel_section(k, v), dw).values));
  }
  s.add("kernel_section_fourier", worst, 1e-6);

  std::vector<int> centers;
  for (double x : {0.2, 0.45, 0.7, 0.86}) centers.push_back(g.nearest_index(x));
  const std::vector<cplx> a{-2.0, 1.0, -0.5, 0.2};
  double closed = 0.0;
  for (int j = 0; j < 4; ++j) closed += a[j].real() * std::sqrt(2.0) * std::sin(0.5 * M_PI * g.node(centers[j]));
  closed *= min_lambda(1) * min_lambda(1);
  const cplx got = gft(expand(centers, a, k), dw)[0];
  s.add("example_signal_first_coefficient", std::abs(got - closed), 1e-4);
}

void digraphons(Suite& s, Random& rng) {
  const Grid g(0, 1, 32);
  double identity = 0.0, herm = 0.0, psd = 0.0;
  for (int t = 0; t < 20; ++t) {
    CMatrix m(32, 32);
    for (int j = 0; j < 32; ++j)
      for (int i = 0; i < 32; ++i) m(i, j) = rng.uniform();
    const DigraphonKernel d = digraphon_kernel(GridKernel(g, m, KernelRole::graphon), 8, 1 + t, 1e-12);
    identity = std::max(identity, d.check.operator_identity_error);
    herm = std::max(herm, max_abs_diff(d.kernel.matrix(), d.kernel.matrix().adjoint()));
    const PsdReport r = validate_psd(d.kernel);
    if (!r.pass) psd = std::max(psd, -r.min_eigenvalue);
  }
  s.add("digraphon_operator_identity", identity, 1e-12);
  s.add("digraphon_hermitian", herm, 1e-12);
  s.add("digraphon_psd_violation", psd, 0.0);
}

void uncertainty(Suite& s, Random& rng) {
  const Grid g(0, 1, 128);
  const GridKernel k = named("min", g, KernelRole::kernel);
  const SpectralDecomposition dec = decompose(k);
  double closed = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto centers = rng.distinct_indices(128, 1 + rng.index(8));
    std::vector<cplx> a(centers.size());
    for (auto& x : a) x = rng.complex_uniform();
    const RkhsFiniteSignal fs(centers, a, k);
    const BandReport r = uncertainty_residuals(fs, dec, 3);
    closed = std::max(closed, max_abs(r.fhat - gft(fs.expand(), dec).values));
  }
  s.add("uncertainty_closed_formula", closed, 1e-6);

  const int B = 3;
  double violation = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto pool = rng.distinct_indices(128, B + 6);
    std::vector<cplx> targets(B);
    double scale = 0.0;
    for (auto& x : targets) {
      x = 0.01 * rng.complex_uniform();
      scale += std::norm(x);
    }
    double prev = std::numeric_limits<double>::infinity();
    for (int extra = 0; extra <= 6; ++extra) {
      const std::vector<int> centers(pool.begin(), pool.begin() + B + extra);
      const double e = design_coeffs(centers, dec, B, targets).mid_energy;
      if (std::isfinite(prev)) violation = std::max(violation, (e - prev) / scale);
      prev = e;
    }
  }
  s.add("design_mid_energy_monotone", violation, 1e-18);
}

void representer(Suite& s) {
  const Grid g(0, 1, 512);
  const SpectralDecomposition dec = decompose(named("min", g, KernelRole::graphon), 35);
  const std::vector<double> all(dec.eigenvalues().data(), dec.eigenvalues().data() + 35);
  const KernelCatalogEntry design = catalog_entry("min");
  auto bump = [](double x) { return gaussian_bump(x, 0.05, 0.001); };

  double interp = 0.0, monotone = 0.0, prev = std::numeric_limits<double>::infinity();
  for (int q : {15, 20, 25, 30, 35}) {
    const std::vector<double> sig(all.begin(), all.begin() + q);
    std::vector<double> y(q);
    std::transform(sig.begin(), sig.end(), y.begin(), bump);
    const FilterModel m = fit_filter(sig, y, design, 0.0);
    for (int i = 0; i < q; ++i) interp = std::max(interp, std::abs(eval_filter(m, sig[i]) - y[i]));
    double worst = 0.0;
    for (double x : all) worst = std::max(worst, std::abs(eval_filter(m, x) - bump(x)));
    if (std::isfinite(prev)) monotone = std::max(monotone, worst - prev);
    prev = worst;
  }
  s.add("fit_interpolation", interp, 1e-8);
  s.add("fit_residual_monotone_in_q", monotone, 0.0);

  const std::vector<double> sig(all.begin(), all.begin() + 25);
  std::vector<double> y(25);
  std::transform(sig.begin(), sig.end(), y.begin(), bump);
  double res_violation = 0.0, norm_violation = 0.0;
  double prev_res = -1.0, prev_norm = std::numeric_limits<double>::infinity();
  for (double reg : {0.0, 1e-4, 1e-2, 1.0}) {
    const FilterModel m = fit_filter(sig, y, design, reg);
    double res = 0.0;
    for (int i = 0; i < m.size(); ++i) res += std::pow(eval_filter(m, m.abscissae[i]) - m.targets[i], 2);
    const Vector a = Eigen::Map<const Vector>(m.coeffs.data(), m.size());
    const double nrm = a.dot(model_gram(m) * a);
    res_violation = std::max(res_violation, prev_res - res);
    norm_violation = std::max(norm_violation, nrm - prev_norm);
    prev_res = res;
    prev_norm = nrm;
  }
  s.add("regularization_residual_nondecreasing", res_violation, 1e-14);
  s.add("regularization_norm_nonincreasing", norm_violation, 1e-12);
}

}  // namespace

std::vector<PropertyResult> verify_properties(std::uint64_t seed) {
  Suite s;
  Random rng(seed);
  min_spectrum(s);
  squared_spectrum(s, rng);
  pointwise_equivalence(s, rng);
  box_algebra(s, rng);
  spectral_transfer_check(s, rng);
  filter_bank(s, rng);
  kernel_section_fourier(s, rng);
  digraphons(s, rng);
  uncertainty(s, rng);
  representer(s);
  return s.take();
}

}  // namespace boxkernel
