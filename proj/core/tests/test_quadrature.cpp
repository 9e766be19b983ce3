#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dhlab/quadrature.hpp"

using namespace dhlab;

TEST_CASE("polynomials are exact") {
  auto r = quad::integrate([](double x) { return 3 * x * x; }, 0.0, 2.0);
  CHECK(r.ok());
  CHECK(r.value == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("endpoint singularity") {
  auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(r.ok());
  CHECK(std::abs(r.value - 2.0) < 1e-10);
}

TEST_CASE("complex integrand") {
  auto r = quad::integrate(
      [](double x) { return std::exp(std::complex<double>(0, x)); }, 0.0, std::numbers::pi);
  CHECK(r.ok());
  CHECK(std::abs(r.value - std::complex<double>(0, 2)) < 1e-13);
}

TEST_CASE("semi-infinite range") {
  auto r = quad::integrate_to_infinity([](double u) { return std::exp(-u); }, 1.0);
  CHECK(r.ok());
  CHECK(std::abs(r.value - std::exp(-1.0)) < 1e-13);
}

TEST_CASE("non-integrable singularity reports divergence") {
  auto r = quad::integrate([](double x) { return 1.0 / (1.0 - x); }, 0.0, 1.0);
  CHECK_FALSE(r.ok());
}

TEST_CASE("relative tolerance governs tiny integrals") {
  quad::Options opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-13;
  auto r = quad::integrate([](double x) { return std::pow(x, 200); }, 0.0, 1.0, opts);
  CHECK(r.ok());
  CHECK(std::abs(r.value * 201.0 - 1.0) < 1e-12);
}
