#include "levywalk/walk.hpp"

#include <cmath>

#include "doctest.h"
#include "levywalk/errors.hpp"
#include "levywalk/stats.hpp"

using namespace levywalk;

namespace {

// Scaled so tiny generalized-walk waits and the clamped last epoch neither
// underflow nor overflow.
double norm(std::span<const double> x) {
  double big = 0.0;
  for (double v : x) big = std::max(big, std::abs(v));
  if (big == 0.0 || !std::isfinite(big)) return big;
  double s = 0.0;
  for (double v : x) s += (v / big) * (v / big);
  return big * std::sqrt(s);
}

WalkPath make(WalkKind kind, std::uint64_t seed, const DirectionMeasure& lambda, double horizon) {
  RngStream rng(seed, stream_id(Stage::walk, 0));
  switch (kind) {
    case WalkKind::lw: return simulate_lw(HeavyTailLaw(0.5), lambda, horizon, rng);
    case WalkKind::olw: return simulate_olw(HeavyTailLaw(0.5), lambda, horizon, rng);
    case WalkKind::glw: return simulate_glw(1000, MixingDensity(0.5, 2), lambda, horizon, rng);
    case WalkKind::golw: return simulate_golw(1000, MixingDensity(0.5, 2), lambda, horizon, rng);
  }
  throw std::logic_error("kind");
}

}  // namespace

TEST_CASE("coupled event has jump length equal to the wait") {
  auto lambda = DirectionMeasure::uniform(3);
  RngStream rng(1, 1);
  std::vector<double> v(3);
  for (int i = 0; i < 1000; ++i) {
    const double t = draw_event(HeavyTailLaw(0.5), lambda, rng, v);
    std::vector<double> j{v[0] * t, v[1] * t, v[2] * t};
    CHECK(norm(j) == doctest::Approx(t).epsilon(1e-14));
  }
}

TEST_CASE("wait-first paths start at the origin and stay in the cone") {
  for (auto kind : {WalkKind::lw, WalkKind::glw}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto path = make(kind, seed, DirectionMeasure::uniform(2), 10.0);
      REQUIRE(path.size() >= 2);
      CHECK(path.epochs()[0] == 0.0);
      CHECK(norm(path.position(0)) == 0.0);
      const double t1 = path.epochs()[1];
      if (t1 <= 10.0) CHECK(norm(position_at(path, std::nextafter(t1, 0.0))) == 0.0);
      for (std::size_t k = 0; k < path.size(); ++k) {
        const double e = path.epochs()[k];
        // position held on [e, next epoch); sup of t over the interval is the next epoch,
        // inf is e itself
        CHECK(norm(path.position(k)) <= e * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("aligned jumps reproduce the epochs") {
  auto point = DirectionMeasure::point(1);
  auto lw = make(WalkKind::lw, 3, point, 50.0);
  for (std::size_t k = 0; k < lw.size(); ++k) CHECK(lw.position(k)[0] == lw.epochs()[k]);

  for (auto kind : {WalkKind::olw, WalkKind::golw}) {
    auto p = make(kind, 3, point, 50.0);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) CHECK(p.position(k)[0] == p.epochs()[k + 1]);
    // position at t equals the first renewal epoch exceeding t
    for (double t : {0.0, 0.3, 7.0, 49.0}) {
      const auto e = p.epochs();
      const double next = *std::upper_bound(e.begin(), e.end(), t);
      CHECK(position_at(p, t)[0] == next);
    }
  }
}

TEST_CASE("jump-first paths overshoot") {
  int over = 0;
  const int N = 2000;
  for (std::uint64_t seed = 0; seed < N; ++seed) {
    auto p = make(WalkKind::olw, seed, DirectionMeasure::symmetric_axis(1), 5.0);
    CHECK(norm(p.position(0)) == doctest::Approx(p.epochs()[1]).epsilon(1e-15));
    const auto e = p.epochs();
    for (double t : {0.5, 2.0, 5.0}) {
      const double next = *std::upper_bound(e.begin(), e.end(), t);
      CHECK(norm(position_at(p, t)) <= next * (1 + 1e-12));
    }
    over += norm(position_at(p, 5.0)) > 5.0;
  }
  MESSAGE("olw overshoot frequency at t=5: " << double(over) / N);
  CHECK(over > 0);
}

TEST_CASE("renewal sandwich") {
  auto p = make(WalkKind::glw, 8, DirectionMeasure::point(1), 20.0);
  const auto e = p.epochs();
  CHECK(e.back() >= 20.0);
  CHECK(e[e.size() - 2] < 20.0);
  for (double t = 0.0; t <= 20.0; t += 0.37) {
    const auto k = std::upper_bound(e.begin(), e.end(), t) - e.begin() - 1;
    CHECK(e[k] <= t);
    CHECK(t < e[k + 1]);
  }
}

TEST_CASE("position_at conventions") {
  auto p = make(WalkKind::lw, 4, DirectionMeasure::point(1), 30.0);
  CHECK(position_at(p, 0.0)[0] == 0.0);
  for (std::size_t k = 1; k + 1 < p.size(); ++k) CHECK(position_at(p, p.epochs()[k])[0] == p.position(k)[0]);
  const std::size_t last = p.size() - 1;
  CHECK(position_at(p, 30.0)[0] == (p.epochs()[last] == 30.0 ? p.position(last)[0] : p.position(last - 1)[0]));
  CHECK_THROWS_AS(position_at(p, 30.5), RangeError);
  CHECK_THROWS_AS(position_at(p, -0.1), RangeError);
}

TEST_CASE("streaming reader matches stored path bit for bit") {
  const std::vector<double> times{0.0, 0.1, 0.5, 1.0, 2.0, 2.0, 7.5, 10.0};
  for (auto kind : {WalkKind::lw, WalkKind::olw, WalkKind::glw, WalkKind::golw}) {
    const bool gen = kind == WalkKind::glw || kind == WalkKind::golw;
    WaitingTimeLaw law = gen ? WaitingTimeLaw(ConditionalWaiting{100, MixingDensity(0.5, 2)})
                             : WaitingTimeLaw(HeavyTailLaw(0.6));
    auto lambda = DirectionMeasure::uniform(2);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      RngStream a(seed, 1), b(seed, 1);
      auto path = simulate_walk(kind, law, lambda, times.back(), a);
      std::vector<double> out(times.size() * 2);
      walk_positions_at(kind, law, lambda, times, b, out);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const auto x = position_at(path, times[i]);
        CHECK(out[2 * i] == x[0]);
        CHECK(out[2 * i + 1] == x[1]);
      }
    }
  }
}

TEST_CASE("determinism under a fixed seed") {
  auto a = make(WalkKind::lw, 42, DirectionMeasure::point(1), 100.0);
  auto b = make(WalkKind::lw, 42, DirectionMeasure::point(1), 100.0);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.epochs()[k] == b.epochs()[k]);
    CHECK(a.position(k)[0] == b.position(k)[0]);
  }
}

TEST_CASE("rescaled position") {
  auto lambda = DirectionMeasure::symmetric_axis(1);
  const HeavyTailLaw alpha(0.5);
  for (std::uint64_t j = 0; j < 100; ++j) {
    RngStream a(5, j), b(5, j);
    const auto r = rescaled_lw_position(alpha, lambda, 1.0, 3.0, a);
    const auto direct = position_at(simulate_lw(alpha, lambda, 3.0, b), 3.0);
    CHECK(r == direct);
    RngStream c(6, j);
    CHECK(std::abs(rescaled_lw_position(alpha, lambda, 100.0, 1.0, c)[0]) <= 1.0 + 1e-12);
  }
  RngStream z(1, 1);
  CHECK(rescaled_lw_position(alpha, lambda, 10.0, 0.0, z)[0] == 0.0);
}

TEST_CASE("generalized walk with concentrated mixing looks like a Levy walk") {
  const std::size_t N = 20000;
  const double t = 5.0;
  auto lambda = DirectionMeasure::symmetric_axis(1);
  const double tt[1] = {t};
  std::vector<double> glw(N), lw(N);
  const WaitingTimeLaw g = ConditionalWaiting{1.0, MixingDensity(50.0, 2.0)};
  const WaitingTimeLaw l = HeavyTailLaw(50.0 / 52.0);
  for (std::size_t j = 0; j < N; ++j) {
    RngStream a(1, stream_id(Stage::walk, j)), b(2, stream_id(Stage::walk, j));
    walk_positions_at(WalkKind::glw, g, lambda, tt, a, {&glw[j], 1});
    walk_positions_at(WalkKind::lw, l, lambda, tt, b, {&lw[j], 1});
  }
  std::vector<std::vector<double>> kgrid;
  for (int i = 1; i <= 16; ++i) kgrid.push_back({0.125 * i});
  const double d = ecf_distance(Ensemble(1, t, glw), Ensemble(1, t, lw), kgrid);
  MESSAGE("Beta(50,2) GLW vs LW(50/52) distance: " << d);
  CHECK(d < 0.05);
}
