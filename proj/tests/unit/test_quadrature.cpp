#include "levywalk/quadrature.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"

using namespace levywalk;

TEST_CASE("adaptive Gauss-Kronrod") {
  auto r = integrate_adaptive<double>([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(M_E - 1.0).epsilon(1e-13));

  // integrable endpoint singularity
  auto s = integrate_adaptive<double>([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-8));

  auto c = integrate_adaptive<std::complex<double>>(
      [](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, M_PI);
  CHECK(c.value.real() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(c.value.imag() == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("mixing-density quadrature absorbs the pole at one") {
  // int_0^1 p(beta) / (1 - beta) dbeta for Beta(1,2) is int 2 dbeta = 2
  MixingDensity p(1.0, 2.0);
  // integrand is passed as f(beta) = g(beta) (1 - beta)
  auto r = integrate_mixing<double>(p, [](double) { return 1.0; });
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
  auto one = integrate_mixing<double>(p, [](double beta) { return 1.0 - beta; });
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
  // Beta(0.5, 2): int p(beta)/(1-beta) = B(0.5,1)/B(0.5,2) = 2 / (4/3)
  MixingDensity q(0.5, 2.0);
  auto t = integrate_mixing<double>(q, [](double) { return 1.0; });
  CHECK(t.value == doctest::Approx(1.5).epsilon(1e-9));
}
