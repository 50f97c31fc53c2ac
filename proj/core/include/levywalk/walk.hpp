#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "levywalk/rng.hpp"
#include "levywalk/sampling.hpp"

namespace levywalk {

/// LW / GLW are wait-first ("wait-jump" events); OLW / GOLW are jump-first.
enum class WalkKind { lw, olw, glw, golw };

std::string_view to_string(WalkKind kind);
bool is_jump_first(WalkKind kind);

/// Waiting-time law of a walk: exact Pareto(alpha), or the scale-n
/// conditional law with exponent beta drawn from a mixing density.
struct ConditionalWaiting {
  double n;
  MixingDensity mixing;
};
using WaitingTimeLaw = std::variant<HeavyTailLaw, ConditionalWaiting>;

/// Draws one coupled event: returns the waiting time T and writes the unit
/// direction V into `direction`. The jump is J = V T. Draw order: (beta), T, V.
double draw_event(const WaitingTimeLaw& law, const DirectionMeasure& lambda, RngStream& rng,
                  std::span<double> direction);

/// Piecewise-constant trajectory stored as renewal epochs and the position
/// held on [epochs[k], epochs[k+1]).
class WalkPath {
 public:
  WalkPath(WalkKind kind, std::size_t dim, double horizon)
      : kind_(kind), dim_(dim), horizon_(horizon) {}

  WalkKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  double horizon() const noexcept { return horizon_; }
  std::size_t size() const noexcept { return epochs_.size(); }

  std::span<const double> epochs() const noexcept { return epochs_; }
  std::span<const double> position(std::size_t k) const {
    return {positions_.data() + k * dim_, dim_};
  }
  /// Length of the jump paired with renewal interval k (between epochs k-1 and k).
  /// For jump-first paths the interval k pairs with the jump made at epoch k-1.
  double waiting_time(std::size_t k) const { return epochs_[k] - epochs_[k - 1]; }

  void push(double epoch, std::span<const double> position);

 private:
  WalkKind kind_;
  std::size_t dim_;
  double horizon_;
  std::vector<double> epochs_;
  std::vector<double> positions_;
};

/// Generic generator: runs until the first renewal epoch >= horizon.
WalkPath simulate_walk(WalkKind kind, const WaitingTimeLaw& law, const DirectionMeasure& lambda,
                       double horizon, RngStream& rng);

WalkPath simulate_lw(const HeavyTailLaw& alpha, const DirectionMeasure& lambda, double horizon,
                     RngStream& rng);
WalkPath simulate_olw(const HeavyTailLaw& alpha, const DirectionMeasure& lambda, double horizon,
                      RngStream& rng);
WalkPath simulate_glw(double n, const MixingDensity& p, const DirectionMeasure& lambda,
                      double horizon, RngStream& rng);
WalkPath simulate_golw(double n, const MixingDensity& p, const DirectionMeasure& lambda,
                       double horizon, RngStream& rng);

/// Right-continuous lookup. Throws RangeError outside [0, horizon].
std::vector<double> position_at(const WalkPath& path, double t);

/// Positions at non-decreasing `times` without storing the path; `out` is
/// times.size() x dim, row-major. Consumes the stream exactly like
/// simulate_walk with horizon = times.back(), so results match
/// position_at() on that path bit for bit.
void walk_positions_at(WalkKind kind, const WaitingTimeLaw& law, const DirectionMeasure& lambda,
                       std::span<const double> times, RngStream& rng, std::span<double> out);

/// n^(-1/alpha) R(n^(1/alpha) t) for LW, or the OLW analogue when `overshoot`.
std::vector<double> rescaled_lw_position(const HeavyTailLaw& alpha, const DirectionMeasure& lambda,
                                         double n, double t, RngStream& rng,
                                         bool overshoot = false);

}  // namespace levywalk
