#include "levywalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levywalk/errors.hpp"

namespace levywalk {

std::string_view to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::lw: return "lw";
    case WalkKind::olw: return "olw";
    case WalkKind::glw: return "glw";
    case WalkKind::golw: return "golw";
  }
  return "?";
}

bool is_jump_first(WalkKind kind) { return kind == WalkKind::olw || kind == WalkKind::golw; }

double draw_event(const WaitingTimeLaw& law, const DirectionMeasure& lambda, RngStream& rng,
                  std::span<double> direction) {
  double t = 0.0;
  if (const auto* pareto = std::get_if<HeavyTailLaw>(&law)) {
    t = sample_pareto_waiting(*pareto, rng);
  } else {
    const auto& cond = std::get<ConditionalWaiting>(law);
    const double beta = sample_mixing_exponent(cond.mixing, rng);
    t = sample_conditional_waiting(cond.n, beta, rng);
  }
  sample_direction(lambda, rng, direction);
  return t;
}

void WalkPath::push(double epoch, std::span<const double> position) {
  epochs_.push_back(epoch);
  positions_.insert(positions_.end(), position.begin(), position.end());
}

namespace {

void check_kind_law(WalkKind kind, const WaitingTimeLaw& law) {
  const bool pareto = std::holds_alternative<HeavyTailLaw>(law);
  const bool generalized = kind == WalkKind::glw || kind == WalkKind::golw;
  if (pareto == generalized) {
    throw ConfigError(std::string("walk kind ") + std::string(to_string(kind)) +
                      " does not match its waiting-time law");
  }
  if (!pareto && !(std::get<ConditionalWaiting>(law).n >= 1.0)) {
    throw ConfigError("generalized walks need scale n >= 1");
  }
}

// Shared event loop. `visit(epoch, position)` sees every stored state;
// returning false stops generation early.
template <class Visit>
void run_walk(WalkKind kind, const WaitingTimeLaw& law, const DirectionMeasure& lambda,
              double horizon, RngStream& rng, Visit&& visit) {
  check_kind_law(kind, law);
  const std::size_t d = lambda.dim();
  std::vector<double> pos(d, 0.0), dir(d);
  double epoch = 0.0;

  auto add_jump = [&](double length) {
    for (std::size_t c = 0; c < d; ++c) pos[c] += dir[c] * length;
  };

  if (is_jump_first(kind)) {
    double wait = draw_event(law, lambda, rng, dir);
    add_jump(wait);
    if (!visit(epoch, pos)) return;
    while (epoch < horizon) {
      epoch += wait;
      wait = draw_event(law, lambda, rng, dir);
      add_jump(wait);
      if (!visit(epoch, pos)) return;
    }
  } else {
    if (!visit(epoch, pos)) return;
    while (epoch < horizon) {
      const double wait = draw_event(law, lambda, rng, dir);
      epoch += wait;
      add_jump(wait);
      if (!visit(epoch, pos)) return;
    }
  }
}

}  // namespace

WalkPath simulate_walk(WalkKind kind, const WaitingTimeLaw& law, const DirectionMeasure& lambda,
                       double horizon, RngStream& rng) {
  if (!(horizon > 0.0)) throw ConfigError("walk horizon must be positive");
  WalkPath path(kind, lambda.dim(), horizon);
  run_walk(kind, law, lambda, horizon, rng, [&](double epoch, const std::vector<double>& pos) {
    path.push(epoch, pos);
    return true;
  });
  return path;
}

WalkPath simulate_lw(const HeavyTailLaw& alpha, const DirectionMeasure& lambda, double horizon,
                     RngStream& rng) {
  return simulate_walk(WalkKind::lw, alpha, lambda, horizon, rng);
}

WalkPath simulate_olw(const HeavyTailLaw& alpha, const DirectionMeasure& lambda, double horizon,
                      RngStream& rng) {
  return simulate_walk(WalkKind::olw, alpha, lambda, horizon, rng);
}

WalkPath simulate_glw(double n, const MixingDensity& p, const DirectionMeasure& lambda,
                      double horizon, RngStream& rng) {
  return simulate_walk(WalkKind::glw, ConditionalWaiting{n, p}, lambda, horizon, rng);
}

WalkPath simulate_golw(double n, const MixingDensity& p, const DirectionMeasure& lambda,
                       double horizon, RngStream& rng) {
  return simulate_walk(WalkKind::golw, ConditionalWaiting{n, p}, lambda, horizon, rng);
}

std::vector<double> position_at(const WalkPath& path, double t) {
  if (!(t >= 0.0 && t <= path.horizon())) {
    throw RangeError("time " + std::to_string(t) + " outside path range [0, " +
                     std::to_string(path.horizon()) + "]");
  }
  const auto epochs = path.epochs();
  const auto it = std::upper_bound(epochs.begin(), epochs.end(), t);
  const auto k = static_cast<std::size_t>(std::distance(epochs.begin(), it)) - 1;
  const auto p = path.position(k);
  return {p.begin(), p.end()};
}

void walk_positions_at(WalkKind kind, const WaitingTimeLaw& law, const DirectionMeasure& lambda,
                       std::span<const double> times, RngStream& rng, std::span<double> out) {
  if (times.empty()) return;
  if (!std::is_sorted(times.begin(), times.end()) || times.front() < 0.0) {
    throw ConfigError("observation times must be non-negative and non-decreasing");
  }
  const std::size_t d = lambda.dim();
  std::size_t next = 0;
  std::vector<double> held(d, 0.0);
  bool have = false;
  // A state (epoch, pos) is held until the next epoch; every query time
  // strictly before the new epoch reads the previously held state.
  run_walk(kind, law, lambda, times.back(), rng, [&](double epoch, const std::vector<double>& pos) {
    if (have) {
      while (next < times.size() && times[next] < epoch) {
        std::copy(held.begin(), held.end(), out.begin() + static_cast<std::ptrdiff_t>(next * d));
        ++next;
      }
    }
    held = pos;
    have = true;
    return next < times.size();
  });
  while (next < times.size()) {
    std::copy(held.begin(), held.end(), out.begin() + static_cast<std::ptrdiff_t>(next * d));
    ++next;
  }
}

std::vector<double> rescaled_lw_position(const HeavyTailLaw& alpha, const DirectionMeasure& lambda,
                                         double n, double t, RngStream& rng, bool overshoot) {
  if (!(n >= 1.0)) throw ConfigError("rescaling index n must be >= 1");
  if (!(t >= 0.0)) throw ConfigError("time must be non-negative");
  const double time_scale = std::pow(n, 1.0 / alpha.alpha());
  const double horizon[1] = {time_scale * t};
  std::vector<double> pos(lambda.dim());
  walk_positions_at(overshoot ? WalkKind::olw : WalkKind::lw, alpha, lambda, horizon, rng, pos);
  for (auto& x : pos) x /= time_scale;
  return pos;
}

}  // namespace levywalk
