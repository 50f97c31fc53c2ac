#include "levywalk/rng.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace levywalk;

namespace {
using Block = std::array<std::uint32_t, 4>;
}

TEST_CASE("philox known answers") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams replay and separate") {
  RngStream a(42, stream_id(Stage::walk, 3));
  RngStream b(42, stream_id(Stage::walk, 3));
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
  CHECK(a.position() == 1000);

  std::set<std::uint64_t> firsts;
  for (std::uint64_t j = 0; j < 64; ++j) {
    firsts.insert(RngStream(42, stream_id(Stage::walk, j))());
    firsts.insert(RngStream(42, stream_id(Stage::limit, j))());
    firsts.insert(RngStream(43, stream_id(Stage::walk, j))());
  }
  CHECK(firsts.size() == 3 * 64);
}

TEST_CASE("stage ids are disjoint") {
  CHECK(stream_id(Stage::walk, 0) != stream_id(Stage::limit, 0));
  CHECK((stream_id(Stage::walk, 5) >> 56) == 1);
  CHECK((stream_id(Stage::calibration, 5) >> 56) == 5);
}

TEST_CASE("uniform01 stays inside the open interval") {
  RngStream rng(1, 1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // mean of U(0,1): sd 1/sqrt(12 n)
  CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("works with std distributions") {
  RngStream rng(9, 9);
  std::normal_distribution<double> g;
  double s = 0.0;
  for (int i = 0; i < 10000; ++i) s += g(rng);
  CHECK(std::abs(s / 10000) < 0.05);
}
