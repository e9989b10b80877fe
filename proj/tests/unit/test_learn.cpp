#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "boxkernel/filtering.hpp"
#include "boxkernel/learn.hpp"
#include "test_support.hpp"

using namespace boxkernel;
using namespace boxkernel::testing;

namespace {

std::vector<double> head(const Vector& v, int q) { return std::vector<double>(v.data(), v.data() + q); }

double sq_residual(const FilterModel& m) {
  double s = 0.0;
  for (int i = 0; i < m.size(); ++i) s += std::pow(eval_filter(m, m.abscissae[i]) - m.targets[i], 2);
  return s;
}

double h_norm2(const FilterModel& m) {
  const Vector a = Eigen::Map<const Vector>(m.coeffs.data(), m.size());
  return a.dot(model_gram(m) * a);
}

}  // namespace

TEST_CASE("scalar fit") {
  const KernelCatalogEntry kern = catalog_entry("gaussian", {{"sigma", 0.5}});
  const FilterModel m = fit_filter({0.3}, {2.0}, kern, 0.0);
  CHECK(m.coeffs[0] == doctest::Approx(2.0 / kern(0.3, 0.3).real()));
  CHECK(eval_filter(m, 0.3) == doctest::Approx(2.0));
}

TEST_CASE("interpolation without regularization") {
  const Grid g(0, 1, 128);
  const SpectralDecomposition dec = decompose(catalog("min", g, KernelRole::graphon), 30);
  const auto sig = head(dec.eigenvalues(), 30);
  std::vector<double> y(30), c(30, 0.7);
  for (int i = 0; i < 30; ++i) y[i] = gaussian_bump(sig[i], 0.05, 0.001);
  const FilterModel m = fit_filter(sig, y, catalog_entry("min"), 0.0);
  for (int i = 0; i < 30; ++i) CHECK(std::abs(eval_filter(m, sig[i]) - y[i]) < 1e-8);
  const FilterModel mc = fit_filter(sig, c, catalog_entry("min"), 0.0);
  for (int i = 0; i < 30; ++i) CHECK(std::abs(eval_filter(mc, sig[i]) - 0.7) < 1e-8);

  FilterModel zero = m;
  std::fill(zero.coeffs.begin(), zero.coeffs.end(), 0.0);
  for (double u : {0.0, 0.1, 0.5}) CHECK(eval_filter(zero, u) == 0.0);

  // a small Gaussian design also interpolates
  const FilterModel mg = fit_filter(head(dec.eigenvalues(), 5), head(Vector(Vector::Ones(5)), 5),
                                    catalog_entry("gaussian", {{"sigma", 0.05}}), 0.0);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(eval_filter(mg, dec.eigenvalue(i)) - 1.0) < 1e-8);
}

TEST_CASE("normal equations and the regularization path") {
  const Grid g(0, 1, 128);
  const SpectralDecomposition dec = decompose(catalog("min", g, KernelRole::graphon), 25);
  const auto sig = head(dec.eigenvalues(), 25);
  std::vector<double> y(25);
  Random rng(3);
  for (int i = 0; i < 25; ++i) y[i] = gaussian_bump(sig[i], 0.02, 0.0005) + 0.05 * rng.uniform(-1, 1);
  double prev_res = -1.0, prev_norm = std::numeric_limits<double>::infinity();
  for (double reg : {0.0, 1e-4, 1e-2, 1.0}) {
    const FilterModel m = fit_filter(sig, y, catalog_entry("min"), reg);
    const Vector a = Eigen::Map<const Vector>(m.coeffs.data(), 25);
    Matrix sys = model_gram(m);
    sys.diagonal().array() += reg * 25;
    const Vector yv = Eigen::Map<const Vector>(y.data(), 25);
    CHECK((sys * a - yv).norm() <= 1e-8 * yv.norm());
    const double res = sq_residual(m), nrm = h_norm2(m);
    CHECK(res >= prev_res - 1e-14);
    CHECK(nrm <= prev_norm * (1 + 1e-12));
    prev_res = res;
    prev_norm = nrm;
  }
}

TEST_CASE("bump residual shrinks with more abscissae") {
  const Grid g(0, 1, 512);
  const SpectralDecomposition dec = decompose(catalog("min", g, KernelRole::graphon), 35);
  const auto all = head(dec.eigenvalues(), 35);
  double prev = std::numeric_limits<double>::infinity();
  for (int q : {15, 20, 25, 30, 35}) {
    const std::vector<double> sig(all.begin(), all.begin() + q);
    std::vector<double> y(q);
    for (int i = 0; i < q; ++i) y[i] = gaussian_bump(sig[i], 0.05, 0.001);
    const FilterModel m = fit_filter(sig, y, catalog_entry("min"), 0.0);
    double worst = 0.0;
    for (double s : all) worst = std::max(worst, std::abs(eval_filter(m, s) - gaussian_bump(s, 0.05, 0.001)));
    CHECK(worst <= prev);
    prev = worst;
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("fit preconditions") {
  const KernelCatalogEntry kmin = catalog_entry("min");
  CHECK_THROWS_AS(fit_filter({0.1, 1.5}, {1.0, 1.0}, kmin, 0.0), InvalidArgument);
  CHECK_THROWS_AS(fit_filter({-0.1}, {1.0}, kmin, 0.0), InvalidArgument);
  CHECK_THROWS_AS(fit_filter({0.1}, {1.0, 2.0}, kmin, 0.0), InvalidArgument);
  CHECK_THROWS_AS(fit_filter({}, {}, kmin, 0.0), InvalidArgument);
  CHECK_THROWS_AS(fit_filter({0.1}, {1.0}, kmin, -1.0), InvalidArgument);
  const FilterModel m = fit_filter({0.1, 0.2}, {1.0, 2.0}, kmin, 0.0);
  CHECK_THROWS_AS(eval_filter(m, 2.0), InvalidArgument);
  // min(0, 0) = 0 makes the Gram singular
  CHECK_THROWS_AS(fit_filter({0.0, 0.2}, {1.0, 2.0}, kmin, 0.0), NumericalError);

  const FilterModel merged = fit_filter({0.1, 0.1 + 1e-14, 0.3}, {1.0, 3.0, 5.0}, kmin, 0.0);
  REQUIRE(merged.size() == 2);
  CHECK(merged.targets[0] == doctest::Approx(2.0));
  CHECK(eval_filter(merged, 0.1) == doctest::Approx(2.0));
}

TEST_CASE("apply learned filters") {
  Random rng(4);
  const Grid g(0, 1, 64);
  const GridKernel k = catalog("min", g, KernelRole::kernel);
  const SpectralDecomposition dec = decompose(k, 20);
  const auto sig = head(dec.eigenvalues(), 20);
  CVector c(20);
  for (int i = 0; i < 20; ++i) c[i] = rng.complex_uniform();
  const Signal f(g, dec.modes() * c);

  const FilterModel ones = fit_filter(sig, std::vector<double>(20, 1.0), catalog_entry("min"), 0.0);
  CHECK(max_abs_diff(apply_learned(ones, dec, f), f) < 1e-6);

  const FilterModel id = fit_filter(sig, sig, catalog_entry("min"), 0.0);
  CHECK(max_abs_diff(apply_learned(id, dec, f), apply_operator(k, f)) < 1e-6);

  const double gamma = 1e-5;
  std::vector<double> y(20);
  for (int i = 0; i < 20; ++i) y[i] = gaussian_bump(sig[i], sig[1], gamma);
  const FilterModel bump = fit_filter(sig, y, catalog_entry("min"), 0.0);
  const CVector out = dec.coefficients(apply_learned(bump, dec, f));
  CHECK(std::abs(out[1] - c[1]) < 1e-8);
  for (int i = 0; i < 20; ++i) {
    if (i == 1) continue;
    CHECK(std::abs(out[i]) <= (gaussian_bump(sig[i], sig[1], gamma) + 1e-8) * std::abs(c[i]));
  }

  const FilterModel off = fit_filter({0.123}, {1.0}, catalog_entry("min"), 0.0);
  CHECK_THROWS_AS(apply_learned(off, dec, f), InvalidArgument);
  CHECK_THROWS_AS(apply_spectral_gains(Vector::Ones(3), dec, f), InvalidArgument);
}
