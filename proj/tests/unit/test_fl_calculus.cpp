#include "levywalk/fl_calculus.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "../support/oracles.hpp"
#include "doctest.h"
#include "levywalk/errors.hpp"

using namespace levywalk;

namespace {

bool close(cdouble a, cdouble b, double tol) { return std::abs(a - b) <= tol; }

FLModelSpec stable(double alpha, DirectionMeasure lambda, Scenario sc = Scenario::wait_first) {
  return FLModelSpec(HeavyTailLaw(alpha), std::move(lambda), sc);
}
FLModelSpec distributed(double g, double b, DirectionMeasure lambda,
                        Scenario sc = Scenario::wait_first, FLOptions opts = {}) {
  return FLModelSpec(MixingDensity(g, b), std::move(lambda), sc, opts);
}

}  // namespace

TEST_CASE("stable exponent") {
  const auto point = stable(0.5, DirectionMeasure::point(1));
  CHECK(close(fl_exponent(point, {{0.0}, 2.0}), std::pow(2.0, 0.5), 1e-15));

  const cdouble v = fl_exponent(point, {{1.0}, 1.0});
  CHECK(close(v, std::polar(std::pow(2.0, 0.25), -M_PI / 8), 1e-14));
  CHECK(v.real() == doctest::Approx(1.09868).epsilon(1e-5));
  CHECK(v.imag() == doctest::Approx(-0.45509).epsilon(1e-5));

  const auto sym = stable(0.7, DirectionMeasure::symmetric_axis(1));
  for (double k : {-3.0, 0.2, 1.0, 8.0}) CHECK(fl_exponent(sym, {{k}, 1.3}).imag() == doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(fl_exponent(point, {{1.0}, 0.0}), DomainError);
  CHECK_THROWS_AS(fl_exponent(point, {{1.0}, cdouble(-1.0, 2.0)}), DomainError);
  CHECK_THROWS_AS(fl_exponent(point, {{1.0, 0.0}, 1.0}), ConfigError);
}

TEST_CASE("principal branch") {
  auto lambda = DirectionMeasure::discrete(2, {{{1.0, 0.0}, 0.2}, {{0.0, -1.0}, 0.3}, {{-0.6, 0.8}, 0.5}});
  for (double alpha : {0.1, 0.5, 0.95}) {
    const auto m = stable(alpha, lambda);
    for (double kx : {-20.0, -1.0, 0.0, 0.4, 7.0})
      for (double ky : {-3.0, 0.0, 2.5})
        for (cdouble s : {cdouble(0.01), cdouble(1.0), cdouble(0.5, 3.0), cdouble(4.0, -2.0)}) {
          cdouble want = 0.0;
          for (std::size_t j = 0; j < lambda.atom_count(); ++j) {
            const auto u = lambda.atom(j);
            const cdouble z = s - cdouble(0, 1) * (kx * u[0] + ky * u[1]);
            want += lambda.weight(j) * std::exp(alpha * std::log(z));
          }
          const cdouble got = fl_exponent(m, {{kx, ky}, s});
          CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
        }
  }
}

TEST_CASE("homogeneity of the stable exponent") {
  auto m = stable(0.6, DirectionMeasure::uniform(2));
  for (double c : {0.25, 3.0, 10.0}) {
    const cdouble a = fl_exponent(m, {{c * 0.3, c * -1.2}, c * 0.8});
    const cdouble b = std::pow(c, 0.6) * fl_exponent(m, {{0.3, -1.2}, 0.8});
    CHECK(std::abs(a - b) <= 1e-13 * std::abs(b));
  }
}

TEST_CASE("distributed exponent") {
  const auto m = distributed(1.0, 2.0, DirectionMeasure::point(1));
  // k = 0, s = 1: int 2 Gamma(2 - beta) dbeta
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double ref = GK::integrate([](double b) { return 2.0 * std::tgamma(2.0 - b); }, 0.0, 1.0, 10, 1e-14);
  const cdouble v = fl_exponent(m, {{0.0}, 1.0});
  CHECK(v.real() == doctest::Approx(ref).epsilon(1e-10));
  CHECK(v.imag() == 0.0);

  for (double s : {0.3, 1.0, 5.0}) {
    const cdouble psi = fl_exponent(distributed(0.5, 2.0, DirectionMeasure::symmetric_axis(1)), {{0.0}, s});
    CHECK(psi.real() > 0.0);
    CHECK(psi.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }

  const oracle::Projections atoms{{1.5, 0.5}, {-1.5, 0.5}};
  for (auto [g, b] : {std::pair{0.5, 2.0}, std::pair{1.0, 2.0}, std::pair{2.0, 1.5}}) {
    const auto mm = distributed(g, b, DirectionMeasure::symmetric_axis(1));
    const cdouble got = fl_exponent(mm, {{1.5}, 0.7});
    CHECK(close(got, oracle::distributed_exponent(g, b, atoms, 0.7), 1e-8));
  }
}

TEST_CASE("beta quadrature is converged") {
  FLOptions fine;
  fine.quad.min_panels = 8;
  fine.quad.rel_tol = 1e-11;
  for (auto [g, b] : {std::pair{0.5, 2.0}, std::pair{1.0, 2.0}, std::pair{2.0, 1.5}}) {
    const auto coarse = distributed(g, b, DirectionMeasure::uniform(2));
    const auto dense = distributed(g, b, DirectionMeasure::uniform(2), Scenario::wait_first, fine);
    for (double k : {0.0, 1.0, 4.0})
      for (double s : {0.5, 2.0}) {
        const cdouble a = fl_exponent(coarse, {{k, 0.5 * k}, s});
        const cdouble c = fl_exponent(dense, {{k, 0.5 * k}, s});
        CHECK(std::abs(a - c) <= 1e-7 * std::abs(c));
      }
  }
}

TEST_CASE("material derivative symbol") {
  const auto m = stable(0.5, DirectionMeasure::point(1));
  CHECK(apply_material_derivative_fl(m, {{1.0}, 1.0}, 0.0) == cdouble(0.0));
  CHECK(close(apply_material_derivative_fl(m, {{0.0}, 3.0}, 1.0), std::sqrt(3.0), 1e-15));
}

TEST_CASE("wait-first transform") {
  const auto m = stable(0.5, DirectionMeasure::point(1));
  const cdouble p = theoretical_p1_fl(m, {{1.0}, 1.0});
  CHECK(close(p, 1.0 / std::pow(cdouble(1.0, -1.0), 0.5), 1e-14));
  CHECK(p.real() == doctest::Approx(0.77689).epsilon(1e-5));
  CHECK(p.imag() == doctest::Approx(0.32180).epsilon(1e-5));
  CHECK(std::norm(p) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  for (double s : {0.5, 1.0, 2.0}) {
    CHECK(close(theoretical_p1_fl(m, {{0.0}, s}), 1.0 / s, 1e-15));
    for (auto [g, b] : {std::pair{1.0, 2.0}, std::pair{0.5, 2.0}, std::pair{2.0, 1.5}}) {
      const auto d = distributed(g, b, DirectionMeasure::uniform(2));
      CHECK(std::abs(theoretical_p1_fl(d, {{0.0, 0.0}, s}) * s - 1.0) < 1e-13);
    }
  }

  // distributed at k != 0 against the oracle quotient
  const auto d = distributed(1.0, 2.0, DirectionMeasure::point(1));
  const cdouble want = oracle::distributed_wait_numerator(1.0, 2.0, 1.0) /
                       oracle::distributed_exponent(1.0, 2.0, {{1.0, 1.0}}, 1.0);
  CHECK(close(theoretical_p1_fl(d, {{1.0}, 1.0}), want, 1e-8));
}

TEST_CASE("jump-first transform") {
  const auto m = stable(0.5, DirectionMeasure::point(1), Scenario::jump_first);
  SUBCASE("closed form reduces the printed source term") {
    const cdouble brute = oracle::stable_jump_first_rhs(0.5, {{1.0, 1.0}}, 1.0);
    const cdouble closed = jump_first_source_fl(m, {{1.0}, 1.0});
    CHECK(std::abs(brute - closed) < 1e-4);
    CHECK(close(theoretical_p2_fl(m, {{1.0}, 1.0}), closed / fl_exponent(m, {{1.0}, 1.0}), 1e-15));
  }
  SUBCASE("conjugation") {
    const auto sym = stable(0.4, DirectionMeasure::symmetric_axis(1), Scenario::jump_first);
    for (auto& model : {m, sym})
      for (double k : {0.5, 2.0}) {
        const cdouble a = theoretical_p2_fl(model, {{k}, 1.5});
        const cdouble b = theoretical_p2_fl(model, {{-k}, 1.5});
        CHECK(close(a, std::conj(b), 1e-14));
      }
  }
  SUBCASE("singular where an atom is orthogonal to k") {
    CHECK_THROWS_AS(theoretical_p2_fl(m, {{0.0}, 1.0}), SingularConfigurationError);
    const auto two = stable(0.5, DirectionMeasure::discrete(2, {{{1, 0}, 0.5}, {{0, 1}, 0.5}}),
                            Scenario::jump_first);
    CHECK_THROWS_AS(theoretical_p2_fl(two, {{1.0, 0.0}, 1.0}), SingularConfigurationError);
    CHECK_NOTHROW(theoretical_p2_fl(two, {{1.0, 1.0}, 1.0}));
  }
}

TEST_CASE("symbol table export") {
  const auto m = stable(0.5, DirectionMeasure::point(1), Scenario::jump_first);
  const std::vector<std::vector<double>> kgrid{{0.0}, {1.0}};
  const std::vector<cdouble> sgrid{1.0, 2.0};
  std::ostringstream out;
  write_symbol_table(out, m, kgrid, sgrid);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k1,re_s,im_s,re_psi,im_psi,re_p1,im_p1,re_p2,im_p2");
  int rows = 0, nan_rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    nan_rows += line.find("nan") != std::string::npos;
  }
  CHECK(rows == 4);
  CHECK(nan_rows == 2);
}
