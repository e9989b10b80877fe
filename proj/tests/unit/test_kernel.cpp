#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "boxkernel/kernel.hpp"
#include "test_support.hpp"

using namespace boxkernel;
using namespace boxkernel::testing;

TEST_CASE("sample catalog entries") {
  const Grid g4(0, 1, 4);
  const GridKernel one = catalog("constant", g4, KernelRole::kernel);
  CHECK(max_abs_diff(one.matrix(), CMatrix::Ones(4, 4)) == 0.0);

  const GridKernel m = catalog("min", Grid(0, 1, 2), KernelRole::graphon);
  CMatrix expect(2, 2);
  expect << 0.25, 0.25, 0.25, 0.75;
  CHECK(max_abs_diff(m.matrix(), expect) < 1e-15);

  const GridKernel sinc = catalog("sinc", Grid(-1, 1, 33), KernelRole::kernel, {{"B", M_PI}});
  // (B / pi) sinc(0) = 1 when B = pi
  for (int i = 0; i < 33; ++i) CHECK(std::abs(sinc(i, i) - 1.0) < 1e-15);
}

TEST_CASE("sample validates role invariants") {
  const Grid g(0, 1, 16);
  CHECK_THROWS_WITH_AS(catalog("constant", g, KernelRole::graphon, {{"value", 2.0}}),
                       doctest::Contains("graphon invariant"), InvalidArgument);
  CHECK_THROWS_WITH_AS(catalog("sin_diff", g, KernelRole::kernel), doctest::Contains("not Hermitian"),
                       InvalidArgument);
  CHECK_THROWS_WITH_AS(catalog("column", g, KernelRole::kernel), doctest::Contains("kernel invariant"),
                       InvalidArgument);
  CHECK_NOTHROW(catalog("column", g, KernelRole::graphon));
  CHECK_THROWS_AS(sample(CMatrix::Ones(3, 3), g, KernelRole::symbol), InvalidArgument);
  CHECK_THROWS_AS(catalog_entry("nope"), InvalidArgument);
  CHECK_THROWS_AS(catalog_entry("gaussian", {{"width", 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(catalog_entry("gaussian", {{"sigma", -1.0}}), InvalidArgument);
  // graphon-type rules live on [0, 1]
  CHECK_THROWS_AS(catalog("min", Grid(-1, 1, 8), KernelRole::symbol), InvalidArgument);
}

TEST_CASE("every catalog entry is total on a grid in its domain") {
  const Grid g(0, 1, 12);
  for (const auto& name : catalog_names()) {
    const GridKernel k = catalog(name, g, KernelRole::symbol);
    CHECK(k.matrix().allFinite());
  }
}

TEST_CASE("adjoint") {
  const Grid g(0, 1, 2);
  const GridKernel k = catalog("exp_abs", Grid(0, 1, 16), KernelRole::kernel, {{"sigma", 0.3}});
  CHECK(max_abs_diff(adjoint(k).matrix(), k.matrix()) == 0.0);
  CHECK(adjoint(k).role() == KernelRole::symbol);

  CMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CMatrix mt(2, 2);
  mt << 0, 0, 1, 0;
  CHECK(max_abs_diff(adjoint(GridKernel(g, m, KernelRole::symbol)).matrix(), mt) == 0.0);

  const Grid g3(0, 1, 3);
  CMatrix c(3, 3), ca(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      c(i, j) = cplx(i, i * j);
      ca(i, j) = cplx(j, -i * j);
    }
  CHECK(max_abs_diff(adjoint(GridKernel(g3, c, KernelRole::symbol)).matrix(), ca) == 0.0);
}

TEST_CASE("box product examples") {
  const Grid g(0, 1, 256);
  const GridKernel one = catalog("constant", g, KernelRole::kernel);
  CHECK(max_abs_diff(box_product(one, one).matrix(), one.matrix()) < 1e-13);

  // integral of (u z)(z v) dz = u v / 3
  const GridKernel uv = catalog("uv", g, KernelRole::kernel);
  const GridKernel uv3 = sample(
      KernelCatalogEntry{"uv/3", {}, 0, 1, [](double u, double v) { return cplx(u * v / 3); }}, g,
      KernelRole::kernel);
  CHECK(max_abs_diff(box_product(uv, uv).matrix(), uv3.matrix()) < 1e-3);

  // integral of min(1, z)^2 dz = 1/3 at the corner
  const GridKernel w = catalog("min", g, KernelRole::graphon);
  CHECK(std::abs(box_product(w, w)(255, 255) - 1.0 / 3.0) < 2e-2);

  CHECK_THROWS_AS(box_product(w, catalog("min", Grid(0, 1, 128), KernelRole::graphon)), InvalidArgument);
}

TEST_CASE("induced kernel examples") {
  const Grid g(0, 1, 64);
  const GridKernel one = catalog("constant", g, KernelRole::symbol);
  const GridKernel k1 = induced_kernel(one);
  CHECK(k1.role() == KernelRole::kernel);
  CHECK(max_abs_diff(k1.matrix(), CMatrix::Ones(64, 64)) < 1e-13);

  const GridKernel s = catalog("min", g, KernelRole::graphon);
  CHECK(max_abs_diff(induced_kernel(s).matrix(), box_product(s, s).matrix()) < 1e-15);

  CMatrix sm(2, 2);
  sm << 1, 0, 1, 0;
  const GridKernel k2 = induced_kernel(GridKernel(Grid(0, 1, 2), sm, KernelRole::symbol));
  CHECK(max_abs_diff(k2.matrix(), 0.5 * CMatrix::Ones(2, 2)) < 1e-15);
}

TEST_CASE("validate_psd") {
  const Grid g(0, 1, 64);
  const PsdReport one = validate_psd(catalog("constant", g, KernelRole::kernel));
  CHECK(one.pass);
  CHECK(std::abs(one.min_eigenvalue) < 1e-12);
  CHECK(one.max_eigenvalue == doctest::Approx(1.0));

  CHECK(validate_psd(catalog("cos_diff", g, KernelRole::kernel)).pass);
  // sin(u - v) is antisymmetric, so it can never carry the kernel role
  CHECK_THROWS_AS(catalog("sin_diff", g, KernelRole::kernel), InvalidArgument);
  CHECK_THROWS_AS(validate_psd(catalog("sin_diff", g, KernelRole::symbol)), InvalidArgument);

  // a symmetric indefinite table fails
  CMatrix ind = CMatrix::Zero(64, 64);
  ind(0, 1) = ind(1, 0) = 1.0;
  const PsdReport bad = validate_psd(GridKernel(g, ind, KernelRole::kernel));
  CHECK_FALSE(bad.pass);
  CHECK(bad.min_eigenvalue < 0.0);

  Random rng(3);
  for (int t = 0; t < 10; ++t) {
    const GridKernel s(g, random_matrix(rng, 64), KernelRole::symbol);
    CHECK(validate_psd(induced_kernel(s), 1e-10).pass);
  }
}

TEST_CASE("kernel_to_graphon") {
  const Grid g(0, 1, 256);
  const double top = g.node(255);

  const GridKernel p2 = catalog("poly2", g, KernelRole::kernel);
  const GridKernel w2 = kernel_to_graphon(p2);
  const double c2 = (1 + top * top) * (1 + top * top);
  CHECK(max_abs_diff(w2.matrix(), p2.matrix() / c2) < 1e-15);
  CHECK(std::abs(c2 - 4.0) < 2e-2);  // sup over the grid approaches C = 4
  CHECK(w2.matrix().real().maxCoeff() == doctest::Approx(1.0));

  const GridKernel uv = catalog("uv", g, KernelRole::kernel);
  const GridKernel wuv = kernel_to_graphon(uv);
  CHECK(max_abs_diff(wuv.matrix(), uv.matrix() / (top * top)) < 1e-15);

  const GridKernel gauss = catalog("gaussian", g, KernelRole::kernel, {{"sigma", 0.2}});
  CHECK(max_abs_diff(kernel_to_graphon(gauss).matrix(), gauss.matrix()) == 0.0);

  CHECK_THROWS_AS(kernel_to_graphon(catalog("cos_diff", Grid(0, 4, 16), KernelRole::kernel)), InvalidArgument);
  CHECK_THROWS_AS(kernel_to_graphon(catalog("constant", g, KernelRole::kernel, {{"value", 0.0}})),
                  InvalidArgument);
  CHECK_THROWS_AS(kernel_to_graphon(catalog("min", g, KernelRole::graphon)), InvalidArgument);
}

TEST_CASE("box product algebraic properties on random inputs") {
  Random rng(5);
  const Grid g(0, 1, 8);
  for (int t = 0; t < 50; ++t) {
    const GridKernel a(g, random_matrix(rng, 8), KernelRole::symbol);
    const GridKernel b(g, random_matrix(rng, 8), KernelRole::symbol);
    const GridKernel c(g, random_matrix(rng, 8), KernelRole::symbol);
    CHECK(max_abs_diff(box_product(box_product(a, b), c).matrix(),
                       box_product(a, box_product(b, c)).matrix()) < 1e-10);
    CHECK(max_abs_diff(adjoint(adjoint(a)).matrix(), a.matrix()) == 0.0);
    CHECK(max_abs_diff(adjoint(box_product(a, b)).matrix(),
                       box_product(adjoint(b), adjoint(a)).matrix()) < 1e-12);
    const GridKernel k = induced_kernel(a);
    CHECK(k.is_hermitian(1e-14));
    CHECK(validate_psd(k, 1e-10).pass);
  }
}
