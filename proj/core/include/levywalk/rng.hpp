#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace levywalk {

/// Counter-based random stream (Philox4x32-10).
///
/// The 128-bit Philox counter is split into a 64-bit block index and the
/// 64-bit stream id; the seed is the 64-bit key. Every (seed, stream_id)
/// pair therefore addresses a disjoint, reproducible sequence, so per-path
/// streams never depend on how paths are scheduled over threads.
///
/// Satisfies UniformRandomBitGenerator, so it can drive <random> distributions.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (buffered_ == 0) refill();
    return buffer_[--buffered_];
  }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform01() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const noexcept { return 2 * block_ - buffered_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// Raw Philox4x32-10 block function, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Simulation stages; each owns a disjoint range of stream ids.
enum class Stage : std::uint64_t {
  walk = 1,
  limit = 2,
  coupled = 3,
  sampling = 4,
  calibration = 5,
};

/// Stream id for trajectory `index` of `stage`. The stage occupies the top byte.
constexpr std::uint64_t stream_id(Stage stage, std::uint64_t index) noexcept {
  return (static_cast<std::uint64_t>(stage) << 56) ^ index;
}

}  // namespace levywalk
